#  Copyright (c) 2022 Robert Lieck.
"""
Command line driver with the subcommands ``run``, ``converge``, ``stability`` and ``riemann-exact``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
"""

import argparse
import logging
import os
import sys
import time
from typing import List, Optional

import numpy as np

from bgkflow.config import RunConfig, load_config, parse_config, parse_key_values
from bgkflow.diagnostics import MOMENT_NAMES, conservation_error
from bgkflow.errors import ConfigError, NumericalError, TypeMismatchError
from bgkflow.integrators import builtin_tableaus
from bgkflow.riemann import EulerState, exact_euler_riemann
from bgkflow.scenarios import (RIEMANN_LEFT, RIEMANN_RIGHT, ScenarioId, convergence_table, exact_solution,
                               run_scenario)
from bgkflow.stability import (StabilityScan, bdf_max_cfl, bdf_scan, dirk3_from_gamma, fs_scan, gamma_scan,
                               rk_critical_y)
from bgkflow.storage import (euler_frame, history_frame, snapshot_file_name, write_distribution, write_snapshot,
                             write_summary, write_table)
from bgkflow.tableau import BDF2, BDF3, Tableau, sdirk3_tableau

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

STABILITY_SCHEMES = ('dirk2', 'dirk3', 'sdirk3', 'bdf2', 'bdf3')


def _float_list(text: Optional[str]):
    if text is None:
        return None
    try:
        return tuple(float(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise TypeMismatchError(f"expected a comma-separated list of numbers, got '{text}'")


def _state(text: Optional[str], default: EulerState) -> EulerState:
    if text is None:
        return default
    values = _float_list(text)
    if len(values) != 3:
        raise TypeMismatchError(f"expected 'rho,u,p', got '{text}'")
    return EulerState(*values)


def _config(args) -> RunConfig:
    overrides = dict(scheme=args.scheme, scenario=args.scenario, out=args.out,
                     snapshots=_float_list(getattr(args, 'snapshots', None)),
                     resolutions=None if getattr(args, 'resolutions', None) is None
                     else tuple(int(v) for v in _float_list(args.resolutions)))
    for flag in ('exact', 'plot', 'progress'):
        if getattr(args, flag, False):
            overrides[flag] = True
    if args.config is not None:
        return load_config(args.config, **overrides)
    return parse_config("", **overrides)


def cmd_run(config: RunConfig) -> int:
    """
    Run a scenario and write snapshots, the conservation history and a summary to the output directory.
    """
    scenario = config.scenario_params
    spec = config.spec
    out = config.out
    if config.exact and scenario.id not in (ScenarioId.RIEMANN, ScenarioId.SINGLE_SHOCK):
        raise TypeMismatchError(f"no exact solution for scenario '{scenario.id.value}'")
    start = time.perf_counter()
    trajectory = run_scenario(scenario, spec, n_x=config.n_x, n_v=config.n_v, kappa=config.kappa, cfl=config.cfl,
                              t_final=config.t_final, newton=config.newton, snapshots=config.snapshots,
                              progress=config.progress)
    wall_time = time.perf_counter() - start
    grid = trajectory.grid
    for t, snapshot in trajectory.snapshots.items():
        write_snapshot(os.path.join(out, snapshot_file_name(t)), snapshot.f, grid)
    write_snapshot(os.path.join(out, "final.csv"), trajectory.f, grid)
    history = history_frame(trajectory)
    write_table(history, os.path.join(out, "history.csv"))
    error = conservation_error(trajectory)
    summary = dict(scheme=spec.name, scenario=scenario.id.value, n_x=grid.n_x, n_v=grid.n_v,
                   cfl=config.cfl, kappa=config.kappa, t_final=config.t_final)
    summary.update(trajectory.stats)
    summary['wall_time'] = round(wall_time, 3)
    for name, e, absolute in zip(MOMENT_NAMES, error.error, error.absolute):
        summary[f"{name}_error"] = float(e)
        summary[f"{name}_error_absolute"] = bool(absolute)
    exact = None
    if config.exact:
        exact = exact_solution(scenario, grid.x, config.t_final)
        write_table(euler_frame(grid.x, exact), os.path.join(out, "exact.csv"))
    if config.dump_distribution:
        write_distribution(os.path.join(out, "distribution.csv"), trajectory.f, grid)
    if config.plot:
        from bgkflow.plotting import plot_snapshot
        import matplotlib.pyplot as plt
        fig, _ = plot_snapshot(trajectory.f, grid, exact=exact, label=spec.name)
        fig.savefig(os.path.join(out, "final.png"))
        plt.close(fig)
    write_summary(os.path.join(out, "summary.txt"), summary)
    logger.info(f"{spec.name} on {scenario.id.value}: conservation errors "
                + ", ".join(f"{n} {e:.3e}" for n, e in zip(MOMENT_NAMES, error.error)))
    return EXIT_OK


def cmd_converge(config: RunConfig, parallel: bool = False) -> int:
    """self-convergence table over the configured resolutions"""
    if len(config.resolutions) < 2:
        raise TypeMismatchError("a convergence study needs at least two resolutions")
    table = convergence_table(config.spec, config.scenario, config.resolutions, kappa=config.kappa,
                              cfl=config.cfl, n_v=config.n_v, t_final=config.t_final, parallel=parallel,
                              progress=config.progress)
    write_table(table, os.path.join(config.out, "rates.csv"))
    print(table.to_string(index=False))
    return EXIT_OK


def read_tableau(path) -> Tableau:
    """
    Read a Butcher table from ``key = value`` lines ``A = a11, a12; a21, a22``, ``b = ...``, ``c = ...`` and an
    optional ``name``.
    """
    with open(path, "r") as fh:
        raw = parse_key_values(fh.read())
    try:
        A = [[float(v) for v in row.split(',')] for row in raw['a'].split(';')]
        b = [float(v) for v in raw['b'].split(',')]
        c = [float(v) for v in raw['c'].split(',')] if 'c' in raw else np.sum(A, axis=1)
        return Tableau(A=A, b=b, c=c, name=raw.get('name', os.path.basename(os.fspath(path))))
    except KeyError as e:
        raise TypeMismatchError(f"tableau file {path} misses entry {e}")
    except ValueError as e:
        raise TypeMismatchError(f"invalid tableau in {path}: {e}")


def cmd_stability(scheme: Optional[str], out: str, tableau_path: Optional[str] = None, gamma: Optional[float] = None,
                  scan_gamma: bool = False, scan: StabilityScan = StabilityScan()) -> int:
    """
    Maximal Courant number of a scheme and the underlying scan (``F_s`` for DIRK, largest root for BDF); optionally
    the scan of ``a*`` over the DIRK3 parameter gamma.
    """
    summary = {}
    if tableau_path is not None:
        tableau = read_tableau(tableau_path)
    elif scheme in ('bdf2', 'bdf3'):
        coeffs = {'bdf2': BDF2, 'bdf3': BDF3}[scheme]
        a_star = bdf_max_cfl(coeffs, scan)
        summary.update(scheme=coeffs.name, a_star=a_star)
        write_table(bdf_scan(coeffs, scan), os.path.join(out, f"{scheme}_roots.csv"))
        tableau = None
    elif scheme == 'dirk2':
        tableau = builtin_tableaus()["DIRK2"]
    elif scheme == 'dirk3':
        tableau = builtin_tableaus()["DIRK3"] if gamma is None else dirk3_from_gamma(gamma)
    elif scheme == 'sdirk3':
        tableau = sdirk3_tableau()
    elif scan_gamma:
        tableau = None
    else:
        raise TypeMismatchError(f"unknown scheme '{scheme}', choose from {STABILITY_SCHEMES} or give a tableau file")
    if tableau is not None:
        y_star = rk_critical_y(tableau, scan)
        summary.update(scheme=tableau.name, y_star=y_star, a_star=y_star / np.pi)
        write_table(fs_scan(tableau), os.path.join(out, f"{(scheme or 'tableau')}_fs.csv"))
    if scan_gamma:
        table = gamma_scan(scan=scan)
        write_table(table, os.path.join(out, "gamma_scan.csv"))
        best = int(table['y_star'].values.argmax())
        summary.update(gamma_opt=float(table['gamma'].iloc[best]), y_star_opt=float(table['y_star'].iloc[best]))
    write_summary(os.path.join(out, "stability.txt"), summary)
    for key, value in summary.items():
        print(f"{key} = {value}")
    return EXIT_OK


def cmd_riemann_exact(out: str, left: EulerState = RIEMANN_LEFT, right: EulerState = RIEMANN_RIGHT,
                      t: float = 0.16, x0: float = 0.5, x_min: float = 0., x_max: float = 1., n: int = 200) -> int:
    """sample the exact Euler solution at the centres of n cells on [x_min, x_max] at time t"""
    if not t > 0 or n < 1 or not x_max > x_min:
        raise TypeMismatchError(f"invalid sampling t={t}, n={n}, x in [{x_min}, {x_max}]")
    x = x_min + (np.arange(n) + 0.5) * (x_max - x_min) / n
    state = exact_euler_riemann(left, right, (x - x0) / t)
    write_table(euler_frame(x, state), os.path.join(out, "riemann_exact.csv"))
    return EXIT_OK


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bgkflow",
                                     description="Conservative semi-Lagrangian solver for the 1D BGK equation")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_options(p):
        p.add_argument("--config", help="config file with 'key = value' lines")
        p.add_argument("--out", help="output directory")
        p.add_argument("--scheme", help="scheme label, e.g. RK3-W35-DM")
        p.add_argument("--scenario", choices=[s.value for s in ScenarioId], help="test problem")
        p.add_argument("--progress", action="store_true", help="show progress bars")

    run = sub.add_parser("run", help="run a scenario")
    add_run_options(run)
    run.add_argument("--snapshots", help="output times t1,t2,...")
    run.add_argument("--exact", action="store_true", help="write the exact Euler solution (shock problems)")
    run.add_argument("--plot", action="store_true", help="write a figure of the final state")

    converge = sub.add_parser("converge", help="self-convergence study")
    add_run_options(converge)
    converge.add_argument("--resolutions", help="numbers of cells n1,n2,... (each doubling the previous)")
    converge.add_argument("--parallel", action="store_true", help="run resolutions in parallel (see BGK_THREADS)")

    stability = sub.add_parser("stability", help="linear stability analysis")
    stability.add_argument("scheme", nargs="?", choices=STABILITY_SCHEMES)
    stability.add_argument("--tableau", help="file with a Butcher table")
    stability.add_argument("--gamma", type=float, help="diagonal entry of the DIRK3 scheme")
    stability.add_argument("--scan-gamma", action="store_true", help="scan a* over the DIRK3 parameter")
    stability.add_argument("--out", default=".", help="output directory")

    riemann = sub.add_parser("riemann-exact", help="sample the exact Euler Riemann solution")
    riemann.add_argument("--left", help="left state rho,u,p")
    riemann.add_argument("--right", help="right state rho,u,p")
    riemann.add_argument("--t", type=float, default=0.16, help="time")
    riemann.add_argument("--x0", type=float, default=0.5, help="position of the initial jump")
    riemann.add_argument("--x-range", default="0,1", help="x_min,x_max")
    riemann.add_argument("--n", type=int, default=200, help="number of cells")
    riemann.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = get_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            return cmd_run(_config(args))
        if args.command == "converge":
            return cmd_converge(_config(args), parallel=args.parallel)
        if args.command == "stability":
            if args.scheme is None and args.tableau is None and not args.scan_gamma:
                raise TypeMismatchError("give a scheme, a tableau file or --scan-gamma")
            return cmd_stability(args.scheme, args.out, tableau_path=args.tableau, gamma=args.gamma,
                                 scan_gamma=args.scan_gamma)
        if args.command == "riemann-exact":
            x_range = _float_list(args.x_range)
            if len(x_range) != 2:
                raise TypeMismatchError(f"expected x_min,x_max, got '{args.x_range}'")
            return cmd_riemann_exact(args.out, _state(args.left, RIEMANN_LEFT), _state(args.right, RIEMANN_RIGHT),
                                     t=args.t, x0=args.x0, x_min=x_range[0], x_max=x_range[1], n=args.n)
    except ConfigError as e:
        logger.error(f"configuration error: {e}")
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"numerical failure: {e}")
        return EXIT_NUMERICAL
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    parser.error(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
