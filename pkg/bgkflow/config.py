#  Copyright (c) 2022 Robert Lieck.
"""
Run configuration. Config files are flat ``key = value`` lines; ``#`` starts a comment. Values that are not given
take the defaults of the chosen scenario.
"""

from dataclasses import dataclass, fields
from typing import Dict, Optional, Tuple

from bgkflow.errors import ConfigError, TypeMismatchError, UnknownKeyError
from bgkflow.integrators import SchemeSpec, min_cells
from bgkflow.maxwellian import NewtonConfig
from bgkflow.scenarios import Scenario, ScenarioId, get_scenario
from bgkflow.util import assert_increasing_by_factor


def parse_key_values(text: str) -> Dict[str, str]:
    """
    Split flat ``key = value`` text into a dict of strings. Blank lines and ``#`` comments are ignored; later
    occurrences of a key override earlier ones.
    """
    out = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise TypeMismatchError(f"line {line_number}: expected 'key = value', got '{line}'")
        key, value = line.split('=', 1)
        key = key.strip().lower().replace('-', '_')
        if not key:
            raise TypeMismatchError(f"line {line_number}: missing key")
        out[key] = value.strip()
    return out


def _to_bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ('1', 'true', 'yes', 'on'):
        return True
    if v in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f"'{value}' is not a boolean")


def _to_int(value: str) -> int:
    f = float(value)
    if f != int(f):
        raise ValueError(f"'{value}' is not an integer")
    return int(f)


def _float_list(value: str) -> Tuple[float, ...]:
    return tuple(float(v) for v in value.split(',') if v.strip())


def _int_list(value: str) -> Tuple[int, ...]:
    return tuple(_to_int(v) for v in value.split(',') if v.strip())


_CONVERTERS = {
    'scheme': str,
    'scenario': str,
    'n_x': _to_int,
    'n_v': _to_int,
    'cfl': float,
    'kappa': float,
    't_final': float,
    'newton_tol': float,
    'snapshots': _float_list,
    'resolutions': _int_list,
    'exact': _to_bool,
    'dump_distribution': _to_bool,
    'plot': _to_bool,
    'progress': _to_bool,
    'out': str,
}


@dataclass(frozen=True)
class RunConfig:
    """
    Validated run configuration; missing numeric values are filled from the scenario defaults.

    :param scheme: scheme label (see :meth:`~bgkflow.integrators.SchemeSpec.parse`)
    :param scenario: scenario identifier
    :param n_x: number of cells
    :param n_v: number of velocity intervals
    :param cfl: CFL number
    :param kappa: Knudsen number
    :param t_final: final time
    :param newton_tol: tolerance of the discrete-Maxwellian Newton solve
    :param snapshots: output times
    :param resolutions: numbers of cells of a convergence study
    :param exact: also write the exact Euler solution (shock problems only)
    :param dump_distribution: also write the final distribution
    :param plot: also write figures
    :param progress: show progress bars
    :param out: output directory
    """
    scheme: str = "RK3-W35-DM"
    scenario: str = ScenarioId.SINGLE_SHOCK.value
    n_x: Optional[int] = None
    n_v: Optional[int] = None
    cfl: Optional[float] = None
    kappa: Optional[float] = None
    t_final: Optional[float] = None
    newton_tol: float = NewtonConfig.tol
    snapshots: Tuple[float, ...] = ()
    resolutions: Tuple[int, ...] = ()
    exact: bool = False
    dump_distribution: bool = False
    plot: bool = False
    progress: bool = False
    out: str = "."

    def __post_init__(self):
        # raises PairingViolationError for inconsistent scheme labels
        spec = SchemeSpec.parse(self.scheme)
        try:
            scenario = get_scenario(self.scenario)
        except ValueError as e:
            raise TypeMismatchError(str(e)) from e
        object.__setattr__(self, 'scenario', scenario.id.value)
        defaults = dict(n_x=scenario.n_x, n_v=scenario.n_v, cfl=scenario.default_cfl(spec), kappa=scenario.kappa,
                        t_final=scenario.t_final)
        for key, value in defaults.items():
            if getattr(self, key) is None:
                object.__setattr__(self, key, value)
        for key in ('n_x', 'n_v', 'cfl', 'kappa', 't_final', 'newton_tol'):
            if not getattr(self, key) > 0:
                raise TypeMismatchError(f"'{key}' must be positive, got {getattr(self, key)}")
        if self.n_v < 2:
            raise TypeMismatchError(f"'n_v' must be at least 2, got {self.n_v}")
        if any(t < 0 for t in self.snapshots):
            raise TypeMismatchError(f"snapshot times must be non-negative, got {self.snapshots}")
        object.__setattr__(self, 'snapshots', tuple(sorted(self.snapshots)))
        if self.resolutions:
            try:
                assert_increasing_by_factor(self.resolutions, factor=2)
            except ValueError as e:
                raise TypeMismatchError(f"'resolutions': {e}") from e
        needed = min_cells(spec, self.cfl, scenario.bc)
        smallest = min((self.n_x,) + tuple(self.resolutions))
        if smallest < needed:
            raise TypeMismatchError(f"{spec.name} at cfl {self.cfl} needs at least {needed} cells on the "
                                    f"{scenario.id.value} domain, got {smallest}")

    @property
    def spec(self) -> SchemeSpec:
        return SchemeSpec.parse(self.scheme)

    @property
    def scenario_params(self) -> Scenario:
        return get_scenario(self.scenario)

    @property
    def newton(self) -> NewtonConfig:
        return NewtonConfig(tol=self.newton_tol)

    def items(self) -> Dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def parse_config(text: str, **overrides) -> RunConfig:
    """
    Parse and validate a flat config text.

    :param text: config text
    :param overrides: values that take precedence over the text (e.g. from the command line; None is ignored)
    :return: the validated config
    """
    values = {}
    for key, raw in parse_key_values(text).items():
        if key not in _CONVERTERS:
            raise UnknownKeyError(f"unknown config key '{key}', valid keys are {sorted(_CONVERTERS)}")
        try:
            values[key] = _CONVERTERS[key](raw)
        except ValueError as e:
            raise TypeMismatchError(f"invalid value for '{key}': {e}") from e
    for key, value in overrides.items():
        if key not in _CONVERTERS:
            raise UnknownKeyError(f"unknown config key '{key}'")
        if value is not None:
            values[key] = value
    try:
        return RunConfig(**values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise TypeMismatchError(str(e)) from e


def load_config(path, **overrides) -> RunConfig:
    """read and parse a config file (OSError propagates)"""
    with open(path, "r") as fh:
        return parse_config(fh.read(), **overrides)

