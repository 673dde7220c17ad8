#  Copyright (c) 2022 Robert Lieck.
"""
Time integrators for the BGK equation ``f_t + v f_x = (M(f) - f) / kappa``.

All schemes move the distribution along characteristics (semi-Lagrangian transport) and treat the relaxation
implicitly; since relaxation conserves the moments, the implicit equations reduce to explicit formulas once the
Maxwellian of the (known) moments is computed. Each scheme comes in a classical form and in a conservative form,
which recomputes the solution from a flux-difference form of the transport so that the moment totals telescope.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Union
from warnings import warn

import numpy as np
from tqdm import tqdm

from bgkflow.diagnostics import distance_to_equilibrium
from bgkflow.errors import NumericalError, PairingViolationError
from bgkflow.grid import BoundaryCondition, PhaseGrid, boundary_kinetic_flux, check_distribution, moment_array
from bgkflow.maxwellian import MaxwellianKind, NewtonConfig, maxwellian
from bgkflow.reconstruction import (GwenoOrder, WenoParams, flux_difference, flux_split, shift_boundary_inflow,
                                    shift_interpolate, weno_flux_faces)
from bgkflow.stability import dirk3_from_gamma
from bgkflow.tableau import BDF2, BDF3, BdfCoeffs, Tableau, dirk2_tableau

logger = logging.getLogger(__name__)

# diagonal entry of the built-in third-order scheme
DIRK3_GAMMA = 0.3


class TimeScheme(str, Enum):
    IE = "IE"
    DIRK2 = "DIRK2"
    DIRK3 = "DIRK3"
    BDF2 = "BDF2"
    BDF3 = "BDF3"

    @property
    def order(self) -> int:
        return {TimeScheme.IE: 1, TimeScheme.DIRK2: 2, TimeScheme.BDF2: 2,
                TimeScheme.DIRK3: 3, TimeScheme.BDF3: 3}[self]

    @property
    def is_bdf(self) -> bool:
        return self in (TimeScheme.BDF2, TimeScheme.BDF3)

    @property
    def dirk(self) -> "TimeScheme":
        """DIRK scheme of the same order (used to start and restart BDF schemes)"""
        return {TimeScheme.DIRK2: TimeScheme.DIRK2, TimeScheme.BDF2: TimeScheme.DIRK2,
                TimeScheme.DIRK3: TimeScheme.DIRK3, TimeScheme.BDF3: TimeScheme.DIRK3}[self]


# short names used in scheme labels
_TIME_LABELS = {TimeScheme.IE: "IE", TimeScheme.DIRK2: "RK2", TimeScheme.DIRK3: "RK3",
                TimeScheme.BDF2: "BDF2", TimeScheme.BDF3: "BDF3"}
_PAIRING = {1: GwenoOrder.LINEAR, 2: GwenoOrder.W23, 3: GwenoOrder.W35}


def builtin_tableaus() -> Dict[str, Tableau]:
    """the second-order and third-order DIRK schemes used by the solver"""
    dirk3 = dirk3_from_gamma(DIRK3_GAMMA)
    return {"DIRK2": dirk2_tableau(),
            "DIRK3": Tableau(A=dirk3.A, b=dirk3.b, c=dirk3.c, name="DIRK3")}


def bdf_coefficients(time: TimeScheme) -> BdfCoeffs:
    return {TimeScheme.BDF2: BDF2, TimeScheme.BDF3: BDF3}[TimeScheme(time)]


@dataclass(frozen=True)
class SchemeSpec:
    """
    Full description of a scheme.

    :param time: time integrator
    :param space: interpolation/reconstruction order; must match the order of the time integrator
    :param maxwellian: continuous (CM) or discrete (DM) Maxwellian in the relaxation
    :param conservative: apply the conservative correction
    """
    time: TimeScheme
    space: GwenoOrder
    maxwellian: MaxwellianKind = MaxwellianKind.DISCRETE
    conservative: bool = True

    def __post_init__(self):
        try:
            object.__setattr__(self, 'time', TimeScheme(self.time))
            object.__setattr__(self, 'space', GwenoOrder(self.space))
            object.__setattr__(self, 'maxwellian', MaxwellianKind(self.maxwellian))
        except ValueError as e:
            raise PairingViolationError(str(e)) from e
        if _PAIRING[self.time.order] != self.space:
            raise PairingViolationError(f"{self.time.value} must be paired with {_PAIRING[self.time.order].value} "
                                        f"but got {self.space.value}")

    @classmethod
    def parse(cls, name: str) -> "SchemeSpec":
        """
        Parse labels like ``RK3-W35-DM``, ``BDF2-W23-CM``, ``IE-SL-Linear-DM``, ``RK3-W35`` or
        ``classical-RK3-W35-DM``.

        A Maxwellian suffix marks the conservative variant of the RK and BDF schemes, no suffix the classical
        scheme with continuous Maxwellian. IE schemes are classical unless prefixed with ``C-``. The prefix
        ``classical-`` forces the classical variant.
        """
        tokens = [t for t in name.strip().split('-') if t]
        conservative = None
        if tokens and tokens[0].lower() == 'classical':
            conservative = False
            tokens = tokens[1:]
        elif tokens and tokens[0].upper() == 'C':
            conservative = True
            tokens = tokens[1:]
        tokens = [t for t in tokens if t.upper() != 'SL']
        if len(tokens) not in (2, 3):
            raise PairingViolationError(f"cannot parse scheme name '{name}'")
        time_label = tokens[0].upper()
        time_label = {'RK2': 'DIRK2', 'RK3': 'DIRK3'}.get(time_label, time_label)
        try:
            time = TimeScheme(time_label)
        except ValueError:
            raise PairingViolationError(f"unknown time integrator '{tokens[0]}' in '{name}'")
        spaces = {o.value.lower(): o for o in GwenoOrder}
        if tokens[1].lower() not in spaces:
            raise PairingViolationError(f"unknown space reconstruction '{tokens[1]}' in '{name}'")
        space = spaces[tokens[1].lower()]
        if len(tokens) == 3:
            if tokens[2].upper() not in ('CM', 'DM'):
                raise PairingViolationError(f"unknown Maxwellian '{tokens[2]}' in '{name}'")
            kind = MaxwellianKind(tokens[2].upper())
            if conservative is None:
                conservative = time != TimeScheme.IE
        else:
            kind = MaxwellianKind.CONTINUOUS
            if conservative is None:
                conservative = False
        return cls(time=time, space=space, maxwellian=kind, conservative=conservative)

    @property
    def name(self) -> str:
        parts = [_TIME_LABELS[self.time]]
        if self.time == TimeScheme.IE:
            parts.append("SL")
        parts += [self.space.value, self.maxwellian.value]
        label = "-".join(parts)
        if self.time == TimeScheme.IE:
            return ("C-" + label) if self.conservative else label
        return label if self.conservative else "classical-" + label

    def __str__(self):
        return self.name


class Collision:
    """
    Implicit BGK relaxation with a continuous or discrete Maxwellian; keeps Newton statistics.

    :param grid: phase-space grid
    :param kappa: Knudsen number
    :param kind: Maxwellian kind
    :param newton: Newton parameters for the discrete Maxwellian
    """

    def __init__(self, grid: PhaseGrid, kappa: float, kind: Union[MaxwellianKind, str] = MaxwellianKind.DISCRETE,
                 newton: NewtonConfig = NewtonConfig()):
        if not kappa > 0:
            raise ValueError(f"kappa must be positive, got {kappa}")
        self.grid = grid
        self.kappa = kappa
        self.kind = MaxwellianKind(kind)
        self.newton = newton
        self.solves = 0
        self.max_iterations = 0
        self.total_iterations = 0
        self.cells = 0

    def equilibrium(self, f: np.ndarray) -> np.ndarray:
        """Maxwellian with the moments of f"""
        M, coeffs = maxwellian(moment_array(f, self.grid), self.grid, kind=self.kind, config=self.newton)
        self.solves += 1
        if coeffs is not None:
            self.max_iterations = max(self.max_iterations, int(coeffs.iterations.max(initial=0)))
            self.total_iterations += int(coeffs.iterations.sum())
            self.cells += coeffs.iterations.size
        return M

    def relax(self, g: np.ndarray, weight: float):
        """
        Solve ``f = g + weight (M(f) - f) / kappa``; since M(f) = M(g) the solution is
        ``(kappa g + weight M(g)) / (kappa + weight)``.

        :return: the solution and the Maxwellian
        """
        M = self.equilibrium(g)
        return (self.kappa * g + weight * M) / (self.kappa + weight), M

    def stats(self) -> Dict[str, float]:
        return {'maxwellian_solves': self.solves,
                'newton_max_iterations': self.max_iterations,
                'newton_mean_iterations': self.total_iterations / self.cells if self.cells else 0.}


class StepResult(NamedTuple):
    f: np.ndarray
    # net moment inflow through the boundaries as seen by the transport of this step
    inflow: np.ndarray


def _transport(f: np.ndarray, grid: PhaseGrid, tau: float, order: GwenoOrder, params: WenoParams) -> np.ndarray:
    """f evaluated at x_i - v_j tau"""
    if tau == 0:
        return f.copy()
    return shift_interpolate(f, grid, tau * grid.v, order, params)


def _faces(f: np.ndarray, grid: PhaseGrid, order: GwenoOrder, params: WenoParams) -> np.ndarray:
    F_plus, F_minus = flux_split(f, grid.v)
    return weno_flux_faces(F_plus, F_minus, grid.bc, order, params)


def _face_inflow(faces: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """moment flux through the left face minus the right face"""
    if grid.periodic:
        return np.zeros(3)
    return (grid.phi * (faces[0] - faces[-1])[None, :]).sum(axis=1) * grid.dv


def step_ie(f: np.ndarray, grid: PhaseGrid, dt: float, collision: Collision, conservative: bool = False,
            params: WenoParams = WenoParams()) -> StepResult:
    """
    First-order step: linear interpolation at ``x_i - v_j dt`` followed by implicit relaxation,
    ``f^{n+1} = (kappa f~ + dt M(f~)) / (kappa + dt)``.

    With ``conservative=True`` this is the predictor; the solution is recomputed from
    ``f* = f^n - dt/dx (F_{i+1/2} - F_{i-1/2})`` with first-order upwind fluxes of the predictor and relaxed with
    the Maxwellian of f*.
    """
    order = GwenoOrder.LINEAR
    predictor, _ = collision.relax(_transport(f, grid, dt, order, params), dt)
    if not conservative:
        rows = shift_boundary_inflow(f, grid, dt * grid.v)
        return StepResult(predictor, (grid.phi * rows[None, :]).sum(axis=1) * grid.dv)
    faces = _faces(predictor, grid, order, params)
    f_star = f - dt / grid.dx * flux_difference(faces)
    f_new, _ = collision.relax(f_star, dt)
    return StepResult(f_new, dt * _face_inflow(faces, grid))


def step_dirk(f: np.ndarray, grid: PhaseGrid, dt: float, tableau: Tableau, collision: Collision,
              space: Union[GwenoOrder, str], conservative: bool = True,
              params: WenoParams = WenoParams()) -> StepResult:
    """
    One step of a stiffly accurate DIRK scheme.

    Stage k interpolates ``f^n`` at ``x_i - c_k v_j dt``, adds the RK fluxes of the previous stages interpolated at
    ``x_i - (c_k - c_l) v_j dt`` and relaxes implicitly with weight ``a_kk dt``. The classical scheme returns the last
    stage. The conservative scheme computes ``f* = f^n - dt/dx sum_l b_l (F^l_{i+1/2} - F^l_{i-1/2})`` from WENO
    fluxes of the stage values and returns
    ``(kappa (f* + dt sum_{l<s} b_l K^l) + b_s dt M(f*)) / (kappa + b_s dt)``.

    :param f: distribution at time t^n
    :param grid: phase-space grid
    :param dt: time step
    :param tableau: stiffly accurate Butcher table
    :param collision: relaxation operator
    :param space: interpolation/reconstruction order
    :param conservative: apply the conservative correction
    :param params: WENO parameters
    :return: new distribution and boundary inflow
    """
    if not tableau.stiffly_accurate:
        raise ValueError(f"tableau {tableau.name} is not stiffly accurate")
    space = GwenoOrder(space)
    A, b, c = tableau.A, tableau.b, tableau.c
    kappa = collision.kappa
    stages: List[np.ndarray] = []
    K: List[np.ndarray] = []
    for k in range(tableau.s):
        # interpolated foot plus explicit contributions of earlier stages
        g = _transport(f, grid, c[k] * dt, space, params)
        for l in range(k):
            if A[k, l] != 0:
                g = g + dt * A[k, l] * _transport(K[l], grid, (c[k] - c[l]) * dt, space, params)
        weight = A[k, k] * dt
        M = collision.equilibrium(g)
        stages.append((kappa * g + weight * M) / (kappa + weight))
        # K = (M - f^k) / kappa, written as (M - g) / (kappa + a_kk dt) to stay finite as kappa -> 0
        K.append((M - g) / (kappa + weight))
    if not conservative:
        return StepResult(stages[-1], dt * boundary_kinetic_flux(f, grid))

    flux_sum = np.zeros_like(f)
    inflow = np.zeros(3)
    for b_l, stage in zip(b, stages):
        faces = _faces(stage, grid, space, params)
        flux_sum += b_l * flux_difference(faces)
        inflow += b_l * _face_inflow(faces, grid)
    f_star = f - dt / grid.dx * flux_sum
    g = f_star.copy()
    for b_l, K_l in zip(b[:-1], K[:-1]):
        g += dt * b_l * K_l
    weight = b[-1] * dt
    M = collision.equilibrium(f_star)
    return StepResult((kappa * g + weight * M) / (kappa + weight), dt * inflow)


def step_bdf(history: Sequence[np.ndarray], grid: PhaseGrid, dt: float, coeffs: BdfCoeffs, collision: Collision,
             space: Union[GwenoOrder, str], conservative: bool = True,
             params: WenoParams = WenoParams()) -> StepResult:
    """
    One step of a semi-Lagrangian BDF scheme.

    The predictor ``f* = sum_k a_k f^{n+1-k}(x_i - k v_j dt)`` is relaxed with weight ``beta dt``. The classical
    scheme returns this value. The conservative scheme forms
    ``f** = sum_k a_k f^{n+1-k} - beta dt/dx (F_{i+1/2} - F_{i-1/2})`` with WENO fluxes of the relaxed predictor and
    relaxes it with the Maxwellian of f**.

    :param history: ``f^n, f^{n-1}, ...`` (newest first, at least ``coeffs.s`` levels)
    :return: new distribution and boundary inflow (the increment of the reference totals in the BDF recursion)
    """
    s = coeffs.s
    if len(history) < s:
        raise ValueError(f"{coeffs.name} needs {s} history levels, got {len(history)}")
    space = GwenoOrder(space)
    weight = coeffs.beta * dt
    f_star = sum(a_k * _transport(history[k], grid, (k + 1) * dt, space, params) for k, a_k in enumerate(coeffs.a))
    predictor, _ = collision.relax(f_star, weight)
    if not conservative:
        inflow = sum(a_k * (k + 1) * dt * boundary_kinetic_flux(history[k], grid) for k, a_k in enumerate(coeffs.a))
        return StepResult(predictor, inflow)
    faces = _faces(predictor, grid, space, params)
    f_2star = sum(a_k * history[k] for k, a_k in enumerate(coeffs.a)) - weight / grid.dx * flux_difference(faces)
    f_new, _ = collision.relax(f_2star, weight)
    return StepResult(f_new, weight * _face_inflow(faces, grid))


def bdf_startup(f0: np.ndarray, grid: PhaseGrid, dt: float, spec: SchemeSpec, collision: Collision,
                params: WenoParams = WenoParams()) -> List[np.ndarray]:
    """
    History levels ``f^{s-1}, ..., f^0`` (newest first) for a BDF scheme of order s, computed with ``s - 1`` steps of
    the DIRK scheme of the same order and the same conservative setting.
    """
    spec = SchemeSpec(time=spec.time, space=spec.space, maxwellian=spec.maxwellian, conservative=spec.conservative)
    if not spec.time.is_bdf:
        raise ValueError(f"{spec.time.value} is not a BDF scheme")
    tableau = builtin_tableaus()[spec.time.dirk.value]
    levels = [f0]
    for _ in range(bdf_coefficients(spec.time).s - 1):
        levels.insert(0, step_dirk(levels[0], grid, dt, tableau, collision, spec.space, spec.conservative,
                                   params).f)
    return levels


class Stepper:
    """
    Advances a distribution with a given scheme, keeping the BDF history and the reference totals (initial totals
    plus accumulated boundary inflow). BDF schemes are (re)started with DIRK steps whenever the time step changes.

    :param spec: scheme
    :param grid: phase-space grid
    :param kappa: Knudsen number
    :param newton: Newton parameters
    :param params: WENO parameters
    """

    def __init__(self, spec: SchemeSpec, grid: PhaseGrid, kappa: float, newton: NewtonConfig = NewtonConfig(),
                 params: WenoParams = WenoParams()):
        self.spec = spec
        self.grid = grid
        self.params = params
        self.collision = Collision(grid, kappa, spec.maxwellian, newton)
        self.tableau = None if spec.time == TimeScheme.IE else builtin_tableaus()[spec.time.dirk.value]
        self.coeffs = bdf_coefficients(spec.time) if spec.time.is_bdf else None
        self._levels = []
        self._references = []
        self._dt = None

    def reset(self, f: np.ndarray, reference: Optional[np.ndarray] = None):
        f = check_distribution(f, self.grid)
        if reference is None:
            reference = moment_array(f, self.grid).sum(axis=0) * self.grid.dx
        self._levels = [f]
        self._references = [np.asarray(reference, dtype=float)]
        self._dt = None

    @property
    def f(self) -> np.ndarray:
        return self._levels[0]

    @property
    def reference(self) -> np.ndarray:
        return self._references[0]

    def advance(self, dt: float) -> np.ndarray:
        """advance by one step of size dt and return the new distribution"""
        if not self._levels:
            raise RuntimeError("call reset() before advance()")
        if self._dt is not None and dt != self._dt:
            self._levels = self._levels[:1]
            self._references = self._references[:1]
        self._dt = dt
        spec = self.spec
        if spec.time == TimeScheme.IE:
            result = step_ie(self.f, self.grid, dt, self.collision, spec.conservative, self.params)
            reference = self.reference + result.inflow
        elif self.coeffs is None or len(self._levels) < self.coeffs.s:
            result = step_dirk(self.f, self.grid, dt, self.tableau, self.collision, spec.space, spec.conservative,
                               self.params)
            reference = self.reference + result.inflow
        else:
            result = step_bdf(self._levels, self.grid, dt, self.coeffs, self.collision, spec.space,
                              spec.conservative, self.params)
            reference = sum(a_k * r for a_k, r in zip(self.coeffs.a, self._references)) + result.inflow
        f_new = check_distribution(result.f, self.grid)
        keep = self.coeffs.s if self.coeffs is not None else 1
        self._levels = [f_new] + self._levels[:keep - 1]
        self._references = [reference] + self._references[:keep - 1]
        return f_new


@dataclass
class Snapshot:
    t: float
    f: np.ndarray


@dataclass
class Trajectory:
    """
    Result of :func:`run`.

    :param grid: phase-space grid
    :param spec: scheme
    :param dt: nominal time step
    :param times: times of all recorded states
    :param totals: moment totals at these times, shape (n, 3)
    :param reference: reference totals (initial totals plus boundary inflow), shape (n, 3)
    :param scale: totals of ``|f phi|`` (magnitude of the moments), shape (n, 3)
    :param f: final distribution
    :param snapshots: distributions at requested output times
    :param equilibrium_distance: ``|f - M(f)|_1`` per recorded state (if tracked)
    :param stats: Newton statistics and step counts
    """
    grid: PhaseGrid
    spec: SchemeSpec
    dt: float
    times: np.ndarray
    totals: np.ndarray
    reference: np.ndarray
    scale: np.ndarray
    f: np.ndarray
    snapshots: Dict[float, Snapshot] = field(default_factory=dict)
    equilibrium_distance: Optional[np.ndarray] = None
    stats: Dict[str, float] = field(default_factory=dict)

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1


def min_cells(spec: SchemeSpec, cfl: float, bc: Union[BoundaryCondition, str]) -> int:
    """
    Fewest cells on which the stencils of a scheme fit at the given CFL number. On free-flow grids the feet of the
    characteristics (up to ``s cfl`` cells away for BDF schemes of order s) plus the interpolation stencil must stay
    inside the domain; the fifth-order flux reconstruction needs five cells.
    """
    cells = 5 if spec.conservative and spec.space == GwenoOrder.W35 else 1
    if BoundaryCondition(bc) == BoundaryCondition.FREE_FLOW:
        span = bdf_coefficients(spec.time).s if spec.time.is_bdf else 1
        cells = max(cells, int(np.ceil(cfl * span)) + spec.space.width)
    return cells


def time_steps(t_final: float, dt: float) -> List[float]:
    """``floor(t_final / dt)`` steps of size dt plus a final shorter step that lands on t_final"""
    if t_final < 0 or not dt > 0:
        raise ValueError(f"invalid time range t_final={t_final}, dt={dt}")
    n_full = int(np.floor(t_final / dt + 1e-9))
    rest = t_final - n_full * dt
    steps = [dt] * n_full
    if rest > 1e-9 * dt:
        steps.append(rest)
    return steps


def _scale(f: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    return (np.abs(f)[:, :, None] * np.abs(grid.phi.T)[None]).sum(axis=(0, 1)) * grid.dv * grid.dx


def run(spec: Union[SchemeSpec, str], f0: np.ndarray, grid: PhaseGrid, kappa: float, cfl: float, t_final: float,
        newton: NewtonConfig = NewtonConfig(), params: WenoParams = WenoParams(),
        snapshots: Sequence[float] = (), track_equilibrium: bool = False, progress: bool = False) -> Trajectory:
    """
    Advance initial data to ``t_final`` with ``dt = cfl dx / |v_max|`` (the last step is shortened to land on
    t_final), recording the moment totals after every step.

    :param spec: scheme (or its label)
    :param f0: initial distribution
    :param grid: phase-space grid
    :param kappa: Knudsen number
    :param cfl: Courant number with respect to the largest velocity
    :param t_final: final time
    :param newton: Newton parameters
    :param params: WENO parameters
    :param snapshots: output times; each is stored at the first step reaching it
    :param track_equilibrium: record ``|f - M(f)|_1`` after every step
    :param progress: show a progress bar
    :return: the trajectory
    """
    if isinstance(spec, str):
        spec = SchemeSpec.parse(spec)
    if not cfl > 0:
        raise ValueError(f"CFL number must be positive, got {cfl}")
    dt = cfl * grid.dx / grid.v_abs_max
    steps = time_steps(t_final, dt)
    stepper = Stepper(spec, grid, kappa, newton, params)
    stepper.reset(f0)
    f = stepper.f
    pending = sorted(float(t) for t in snapshots)
    out = {}

    def record_snapshots(t, f):
        while pending and t >= pending[0] - 1e-12:
            out[pending.pop(0)] = Snapshot(t=t, f=f.copy())

    def equilibrium(f):
        return distance_to_equilibrium(f, grid, spec.maxwellian, newton)

    times = [0.]
    totals = [moment_array(f, grid).sum(axis=0) * grid.dx]
    references = [stepper.reference.copy()]
    scales = [_scale(f, grid)]
    distances = [equilibrium(f)] if track_equilibrium else None
    record_snapshots(0., f)
    warned_negative = False
    t = 0.
    logger.info(f"{spec.name}: {len(steps)} steps of dt={dt:.4g} on {grid.n_x}x{grid.n_v + 1} grid, kappa={kappa:g}")
    for n, step in enumerate(tqdm(steps, disable=not progress, desc=spec.name)):
        try:
            f = stepper.advance(step)
        except NumericalError as e:
            raise e.at_step(n + 1)
        t = t + step if n < len(steps) - 1 else t_final
        times.append(t)
        totals.append(moment_array(f, grid).sum(axis=0) * grid.dx)
        references.append(stepper.reference.copy())
        scales.append(_scale(f, grid))
        if track_equilibrium:
            distances.append(equilibrium(f))
        negative = int((f < 0).sum())
        if negative:
            logger.debug(f"step {n + 1}: {negative} negative distribution values (min {f.min():.3g})")
            if not warned_negative:
                warn(f"negative distribution values appeared at step {n + 1}", RuntimeWarning)
                warned_negative = True
        record_snapshots(t, f)
    stats = dict(stepper.collision.stats(), n_steps=len(steps), dt=dt, min_value=float(f.min()))
    return Trajectory(grid=grid, spec=spec, dt=dt, times=np.array(times), totals=np.array(totals),
                      reference=np.array(references), scale=np.array(scales), f=f, snapshots=out,
                      equilibrium_distance=None if distances is None else np.array(distances), stats=stats)
