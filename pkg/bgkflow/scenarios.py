#  Copyright (c) 2022 Robert Lieck.
"""
Test problems for the BGK solver: initial data, domains, boundary conditions and default parameters, plus helpers to
run them and to compute self-convergence tables.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from bgkflow.grid import BoundaryCondition, PhaseGrid, compute_moments
from bgkflow.integrators import SchemeSpec, TimeScheme, Trajectory, run
from bgkflow.maxwellian import NewtonConfig, continuous_maxwellian
from bgkflow.parallel import starmap
from bgkflow.reconstruction import WenoParams
from bgkflow.riemann import GAMMA, EulerState, exact_euler_riemann
from bgkflow.util import assert_increasing_by_factor, convergence_rates, relative_l1, restrict_to_coarse

logger = logging.getLogger(__name__)

# position of the initial discontinuity of the shock problems
JUMP_POSITION = 0.5
RIEMANN_LEFT = EulerState(rho=2.25, u=0., p=1.125)
RIEMANN_RIGHT = EulerState(rho=3 / 7, u=0., p=1 / 6)
# quiescent state ahead of the single shock
SHOCK_RIGHT = EulerState(rho=1., u=0., p=1.)
# largest default CFL number of the conservative first-order scheme, whose upwind flux correction is explicit
CONSERVATIVE_IE_CFL = 0.9


class ScenarioId(str, Enum):
    SINGLE_SHOCK = "single-shock"
    SMOOTH = "smooth"
    AP = "ap"
    RIEMANN = "riemann"


def maxwellian_field(grid: PhaseGrid, rho, u, p) -> np.ndarray:
    """continuous Maxwellian sampled at the velocity nodes for per-cell primitive variables"""
    rho, u, p = np.broadcast_arrays(*[np.asarray(q, dtype=float) * np.ones(grid.n_x) for q in (rho, u, p)])
    return continuous_maxwellian(rho, u, p / rho, grid.v)


def single_shock_states(mach: float = 2., gamma: float = GAMMA) -> Tuple[EulerState, EulerState]:
    """
    States behind and ahead of a shock of the given Mach number moving to the right into the gas at rest
    ``(rho, u, p) = (1, 0, 1)``.
    """
    if not mach >= 1:
        raise ValueError(f"Mach number must be at least one, got {mach}")
    m2 = mach ** 2
    left = EulerState(rho=(gamma + 1) * m2 / ((gamma - 1) * m2 + 2),
                      u=2 * np.sqrt(gamma) * (m2 - 1) / ((gamma + 1) * mach),
                      p=1 + 2 * gamma * (m2 - 1) / (gamma + 1))
    return left, SHOCK_RIGHT


def shock_speed(mach: float = 2., gamma: float = GAMMA) -> float:
    """speed of the single shock, ``M sqrt(gamma p_R / rho_R)``"""
    return float(mach * SHOCK_RIGHT.sound_speed(gamma))


def init_single_shock(grid: PhaseGrid, mach: float = 2., gamma: float = GAMMA) -> np.ndarray:
    left, right = single_shock_states(mach, gamma)
    return _step_initial_data(grid, left, right)


def init_smooth(grid: PhaseGrid) -> np.ndarray:
    """uniform density and temperature with ``u = 0.1 exp(-(10x - 1)^2) - 2 exp(-(10x + 3)^2)``"""
    x = grid.x
    u = 0.1 * np.exp(-(10 * x - 1) ** 2) - 2 * np.exp(-(10 * x + 3) ** 2)
    return maxwellian_field(grid, 1., u, 1.)


def init_ap(grid: PhaseGrid) -> np.ndarray:
    """
    Equal mixture of two Maxwellians with velocities ``+u`` and ``-u``, where ``rho = (2 + sin 2 pi x) / 3``,
    ``u = cos(2 pi x) / 5`` and ``T = (3 + cos 2 pi x) / 4``.
    """
    x = grid.x
    rho = (2 + np.sin(2 * np.pi * x)) / 3
    u = np.cos(2 * np.pi * x) / 5
    T = (3 + np.cos(2 * np.pi * x)) / 4
    return 0.5 * (continuous_maxwellian(rho, u, T, grid.v) + continuous_maxwellian(rho, -u, T, grid.v))


def init_riemann(grid: PhaseGrid) -> np.ndarray:
    return _step_initial_data(grid, RIEMANN_LEFT, RIEMANN_RIGHT)


def _step_initial_data(grid: PhaseGrid, left: EulerState, right: EulerState) -> np.ndarray:
    is_left = grid.x <= JUMP_POSITION
    return maxwellian_field(grid,
                            np.where(is_left, left.rho, right.rho),
                            np.where(is_left, left.u, right.u),
                            np.where(is_left, left.p, right.p))


@dataclass(frozen=True)
class Scenario:
    """
    A test problem with its default parameters.

    :param id: identifier
    :param x_min: left end of the domain
    :param x_max: right end of the domain
    :param v_max: velocity cut-off (the velocity domain is ``[-v_max, v_max]``)
    :param bc: boundary condition
    :param t_final: final time
    :param kappa: Knudsen number
    :param n_x: number of cells
    :param n_v: number of velocity intervals
    :param initializer: function mapping a grid to the initial distribution
    :param cfl: default CFL number
    :param cfl_ie: CFL number of the classical first-order scheme (defaults to ``cfl``); the conservative one runs at
     ``min(cfl, CONSERVATIVE_IE_CFL)``
    :param cfl_bdf: CFL number of BDF schemes (defaults to ``cfl``)
    """
    id: ScenarioId
    x_min: float
    x_max: float
    v_max: float
    bc: BoundaryCondition
    t_final: float
    kappa: float
    n_x: int
    n_v: int
    initializer: Callable[[PhaseGrid], np.ndarray]
    cfl: float
    cfl_ie: Optional[float] = None
    cfl_bdf: Optional[float] = None

    def grid(self, n_x: Optional[int] = None, n_v: Optional[int] = None) -> PhaseGrid:
        return PhaseGrid(x_min=self.x_min, x_max=self.x_max, n_x=self.n_x if n_x is None else n_x,
                         v_min=-self.v_max, v_max=self.v_max, n_v=self.n_v if n_v is None else n_v, bc=self.bc)

    def default_cfl(self, spec: Union[SchemeSpec, str]) -> float:
        if isinstance(spec, str):
            spec = SchemeSpec.parse(spec)
        if spec.time == TimeScheme.IE:
            if spec.conservative:
                return min(self.cfl, CONSERVATIVE_IE_CFL)
            if self.cfl_ie is not None:
                return self.cfl_ie
        if spec.time.is_bdf and self.cfl_bdf is not None:
            return self.cfl_bdf
        return self.cfl

    def initial_data(self, grid: Optional[PhaseGrid] = None) -> np.ndarray:
        return self.initializer(self.grid() if grid is None else grid)


SCENARIOS = {
    ScenarioId.SINGLE_SHOCK: Scenario(id=ScenarioId.SINGLE_SHOCK, x_min=0., x_max=5., v_max=20.,
                                      bc=BoundaryCondition.FREE_FLOW, t_final=0.4, kappa=1e-6, n_x=100, n_v=50,
                                      initializer=init_single_shock, cfl=2., cfl_ie=4.),
    ScenarioId.SMOOTH: Scenario(id=ScenarioId.SMOOTH, x_min=-1., x_max=1., v_max=10.,
                                bc=BoundaryCondition.PERIODIC, t_final=0.32, kappa=1e-6, n_x=160, n_v=20,
                                initializer=init_smooth, cfl=2., cfl_bdf=0.5),
    ScenarioId.AP: Scenario(id=ScenarioId.AP, x_min=-1., x_max=1., v_max=8.,
                            bc=BoundaryCondition.PERIODIC, t_final=0.02, kappa=1e-6, n_x=100, n_v=20,
                            initializer=init_ap, cfl=1.),
    ScenarioId.RIEMANN: Scenario(id=ScenarioId.RIEMANN, x_min=0., x_max=1., v_max=10.,
                                 bc=BoundaryCondition.FREE_FLOW, t_final=0.16, kappa=1e-6, n_x=200, n_v=30,
                                 initializer=init_riemann, cfl=2.),
}


def get_scenario(scenario: Union[ScenarioId, str, Scenario]) -> Scenario:
    if isinstance(scenario, Scenario):
        return scenario
    try:
        return SCENARIOS[ScenarioId(scenario)]
    except ValueError:
        raise ValueError(f"unknown scenario '{scenario}', choose from {[s.value for s in ScenarioId]}")


def exact_solution(scenario: Union[ScenarioId, str, Scenario], x: np.ndarray, t: float) -> EulerState:
    """
    Euler-limit solution of the shock problems at time t (the Riemann problem at ``x = 0.5``).
    """
    scenario = get_scenario(scenario)
    if scenario.id == ScenarioId.RIEMANN:
        left, right = RIEMANN_LEFT, RIEMANN_RIGHT
    elif scenario.id == ScenarioId.SINGLE_SHOCK:
        left, right = single_shock_states()
    else:
        raise ValueError(f"no exact solution for scenario '{scenario.id.value}'")
    x = np.asarray(x, dtype=float)
    if t <= 0:
        is_left = x <= JUMP_POSITION
        return EulerState(rho=np.where(is_left, left.rho, right.rho), u=np.where(is_left, left.u, right.u),
                          p=np.where(is_left, left.p, right.p))
    return exact_euler_riemann(left, right, (x - JUMP_POSITION) / t)


def run_scenario(scenario: Union[ScenarioId, str, Scenario], spec: Union[SchemeSpec, str],
                 n_x: Optional[int] = None, n_v: Optional[int] = None, kappa: Optional[float] = None,
                 cfl: Optional[float] = None, t_final: Optional[float] = None,
                 newton: NewtonConfig = NewtonConfig(), params: WenoParams = WenoParams(),
                 snapshots: Sequence[float] = (), track_equilibrium: bool = False,
                 progress: bool = False) -> Trajectory:
    """
    Run a scenario; parameters that are not given take the scenario's defaults.
    """
    scenario = get_scenario(scenario)
    if isinstance(spec, str):
        spec = SchemeSpec.parse(spec)
    grid = scenario.grid(n_x, n_v)
    return run(spec, scenario.initial_data(grid), grid,
               kappa=scenario.kappa if kappa is None else kappa,
               cfl=scenario.default_cfl(spec) if cfl is None else cfl,
               t_final=scenario.t_final if t_final is None else t_final,
               newton=newton, params=params, snapshots=snapshots, track_equilibrium=track_equilibrium,
               progress=progress)


def final_density(scenario: Union[ScenarioId, str], spec: SchemeSpec, n_x: int, **kwargs) -> np.ndarray:
    """density at the final time (module-level so it can be sent to worker processes)"""
    trajectory = run_scenario(scenario, spec, n_x=n_x, **kwargs)
    return compute_moments(trajectory.f, trajectory.grid).rho


def convergence_table(spec: Union[SchemeSpec, str], scenario: Union[ScenarioId, str, Scenario],
                      resolutions: Sequence[int], kappa: Optional[float] = None, cfl: Optional[float] = None,
                      n_v: Optional[int] = None, t_final: Optional[float] = None, parallel: bool = False,
                      progress: bool = False) -> pd.DataFrame:
    """
    Self-convergence study on the density. For each pair of consecutive resolutions the coarse solution is compared
    with the fine solution restricted to the coarse cells.

    :param spec: scheme
    :param scenario: test problem
    :param resolutions: numbers of cells, each twice the previous one
    :param kappa: Knudsen number (scenario default if None)
    :param cfl: CFL number (scenario default for the scheme if None)
    :param n_v: number of velocity intervals (scenario default if None)
    :param t_final: final time (scenario default if None)
    :param parallel: run the resolutions in separate processes
    :param progress: show a progress bar over the resolutions
    :return: table with columns ``n_coarse, n_fine, error, rate`` (the rate of the first row is undefined)
    """
    resolutions = [int(n) for n in resolutions]
    assert_increasing_by_factor(resolutions, factor=2)
    scenario = get_scenario(scenario)
    if isinstance(spec, str):
        spec = SchemeSpec.parse(spec)
    densities = starmap(final_density, [(scenario.id, spec, n) for n in resolutions], parallel=parallel,
                        progress=progress, desc=f"{spec.name} convergence", kappa=kappa, cfl=cfl, n_v=n_v,
                        t_final=t_final)
    errors = [relative_l1(coarse, restrict_to_coarse(fine, periodic=scenario.bc == BoundaryCondition.PERIODIC))
              for coarse, fine in zip(densities[:-1], densities[1:])]
    rates = np.concatenate([[np.nan], convergence_rates(errors)])
    for n, e, r in zip(resolutions[:-1], errors, rates):
        logger.info(f"{spec.name} {n}-{2 * n}: error {e:.3e}, rate {r:.2f}")
    return pd.DataFrame({'n_coarse': resolutions[:-1], 'n_fine': resolutions[1:], 'error': errors, 'rate': rates})
