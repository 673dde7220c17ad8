#  Copyright (c) 2022 Robert Lieck.
"""
Continuous and discrete Maxwellians.

The continuous Maxwellian is sampled on the velocity nodes. The discrete Maxwellian ``exp(a . phi(v_j))`` is the
member of the exponential family whose *discrete* moments equal prescribed moments; it is found by a batched Newton
iteration over all cells at once.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from bgkflow.errors import (NewtonDivergedError, NonpositiveStateError, RankDeficientGridError,
                            SingularJacobianError)
from bgkflow.grid import MomentField, PhaseGrid, moment_array

logger = logging.getLogger(__name__)

# Jacobians with a larger 2-norm condition number are treated as singular
MAX_CONDITION = 1e13


class MaxwellianKind(str, Enum):
    CONTINUOUS = "CM"
    DISCRETE = "DM"


@dataclass(frozen=True)
class NewtonConfig:
    """
    :param tol: absolute tolerance on the moment residual (max norm per cell)
    :param max_iter: maximum number of Newton iterations
    :param max_halvings: maximum number of step halvings per iteration
    """
    tol: float = 1e-14
    max_iter: int = 50
    max_halvings: int = 8

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1 or self.max_halvings < 0:
            raise ValueError(f"invalid iteration limits: max_iter={self.max_iter}, max_halvings={self.max_halvings}")


@dataclass(frozen=True)
class DMaxCoeffs:
    """
    Coefficients of discrete Maxwellians, one row ``(a_0, a_1, a_2)`` per cell, together with the number of Newton
    iterations and the final residual of each cell.
    """
    a: np.ndarray
    iterations: np.ndarray
    residual: np.ndarray


def _check_state(rho: np.ndarray, T: np.ndarray):
    bad = ~((rho > 0) & (T > 0))
    if np.any(bad):
        cell = int(np.argmax(bad))
        raise NonpositiveStateError(f"non-positive state rho={rho.flat[cell]}, T={T.flat[cell]}", cell=cell)


def continuous_maxwellian(rho, u, T, v: np.ndarray) -> np.ndarray:
    """
    Sample ``rho / sqrt(2 pi T) exp(-(v - u)^2 / (2 T))``.

    :param rho: density per cell (scalar or array of shape (n,))
    :param u: velocity per cell
    :param T: temperature per cell
    :param v: velocity nodes
    :return: array of shape (n, len(v))
    """
    rho, u, T = np.broadcast_arrays(*[np.atleast_1d(np.asarray(q, dtype=float)) for q in (rho, u, T)])
    _check_state(rho, T)
    v = np.asarray(v, dtype=float)
    return (rho / np.sqrt(2 * np.pi * T))[:, None] * np.exp(-(v[None, :] - u[:, None]) ** 2 / (2 * T[:, None]))


def continuous_coefficients(rho, u, T) -> np.ndarray:
    """
    Exponential-family coefficients of the continuous Maxwellian, used as Newton starting point:
    ``(log(rho / sqrt(2 pi T)) - u^2 / (2 T), u / T, -1 / T)``.
    """
    rho, u, T = np.broadcast_arrays(*[np.atleast_1d(np.asarray(q, dtype=float)) for q in (rho, u, T)])
    _check_state(rho, T)
    return np.stack([np.log(rho / np.sqrt(2 * np.pi * T)) - u ** 2 / (2 * T), u / T, -1 / T], axis=-1)


def exponential_family(a: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """values ``exp(a . phi(v_j))`` for coefficients of shape (n, 3); shape (n, n_v + 1)"""
    with np.errstate(over='ignore'):
        return np.exp(np.asarray(a, dtype=float) @ grid.phi)


def moment_residual(a: np.ndarray, target: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """target moments minus the discrete moments of ``exp(a . phi)``; shape (n, 3)"""
    with np.errstate(invalid='ignore'):
        return np.asarray(target, dtype=float) - moment_array(exponential_family(a, grid), grid)


def newton_jacobian(a: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """
    Jacobian of the discrete moments with respect to the coefficients,
    ``J_lm = sum_j phi_l(v_j) phi_m(v_j) exp(a . phi(v_j)) dv``.

    :param a: coefficients of shape (n, 3)
    :param grid: phase-space grid
    :return: symmetric matrices of shape (n, 3, 3)
    """
    g = exponential_family(a, grid)
    phi = grid.phi
    with np.errstate(invalid='ignore'):
        return np.einsum('nj,lj,mj->nlm', g, phi, phi) * grid.dv


def _max_norm(r: np.ndarray) -> np.ndarray:
    norm = np.abs(r).max(axis=-1)
    # NaN residuals compare as infinitely bad
    return np.where(np.isfinite(norm), norm, np.inf)


def discrete_maxwellian(moments: Union[MomentField, np.ndarray], grid: PhaseGrid,
                        config: NewtonConfig = NewtonConfig()) -> Tuple[DMaxCoeffs, np.ndarray]:
    """
    Solve for the discrete Maxwellian of each cell, i.e. coefficients ``a`` such that
    ``sum_j exp(a . phi(v_j)) phi(v_j) dv`` equals the given moments.

    The iteration starts from the continuous Maxwellian coefficients and uses damped Newton steps (the step is halved
    up to ``config.max_halvings`` times until the residual decreases). A cell is converged once its residual is below
    ``config.tol``; once the residual stops decreasing, values below the round-off floor ``64 eps |target|`` are
    accepted as well.

    :param moments: per-cell moments (MomentField or array of shape (n, 3))
    :param grid: phase-space grid
    :param config: Newton parameters
    :return: coefficients (with iteration counts and residuals) and the discrete Maxwellian values of shape
     (n, n_v + 1)
    """
    if isinstance(moments, MomentField):
        moments = MomentField.from_array(moments.as_array())
    else:
        moments = MomentField.from_array(moments)
    target = moments.as_array()
    if np.unique(grid.v).size < 3:
        raise RankDeficientGridError(f"velocity grid has {np.unique(grid.v).size} distinct nodes, need at least 3")
    _check_state(moments.rho, moments.temperature)

    a = continuous_coefficients(moments.rho, moments.velocity, moments.temperature)
    n_cells = a.shape[0]
    floor = 64 * np.finfo(float).eps * np.abs(target).max(axis=1)
    residual = moment_residual(a, target, grid)
    norm = _max_norm(residual)
    iterations = np.zeros(n_cells, dtype=int)
    converged = norm < config.tol

    for _ in range(config.max_iter):
        active = np.flatnonzero(~converged)
        if active.size == 0:
            break
        # Newton direction
        jac = newton_jacobian(a[active], grid)
        with np.errstate(invalid='ignore'):
            cond = np.linalg.cond(jac) if np.all(np.isfinite(jac)) else np.full(active.size, np.inf)
        singular = ~(cond < MAX_CONDITION)
        if np.any(singular):
            cell = int(active[np.argmax(singular)])
            raise SingularJacobianError(f"singular Newton Jacobian (condition {cond[np.argmax(singular)]:.3g})",
                                        cell=cell)
        step = np.linalg.solve(jac, residual[active][..., None])[..., 0]
        # damping: halve the step where the residual does not decrease
        old_norm = norm[active]
        scale = np.ones(active.size)
        new_a = a[active] + step
        new_residual = moment_residual(new_a, target[active], grid)
        new_norm = _max_norm(new_residual)
        for _ in range(config.max_halvings):
            worse = ~(new_norm < old_norm)
            if not np.any(worse):
                break
            scale[worse] /= 2
            new_a[worse] = a[active][worse] + scale[worse, None] * step[worse]
            new_residual[worse] = moment_residual(new_a[worse], target[active][worse], grid)
            new_norm[worse] = _max_norm(new_residual[worse])
        improved = new_norm < old_norm
        take = active[improved]
        a[take] = new_a[improved]
        residual[take] = new_residual[improved]
        norm[take] = new_norm[improved]
        iterations[active] += 1
        converged |= norm < config.tol
        # stagnation: accept at the round-off floor, otherwise there is no way forward
        stalled = active[~improved]
        if stalled.size:
            at_floor = norm[stalled] <= floor[stalled]
            converged[stalled[at_floor]] = True
            if not np.all(at_floor):
                cell = int(stalled[np.argmin(at_floor)])
                raise NewtonDivergedError(f"Newton iteration stalled with residual {norm[cell]:.3e}", cell=cell)

    if not np.all(converged):
        cell = int(np.argmax(~converged))
        raise NewtonDivergedError(f"Newton iteration did not converge in {config.max_iter} iterations "
                                  f"(residual {norm[cell]:.3e})", cell=cell)
    if not np.all(a[:, 2] < 0):
        cell = int(np.argmax(~(a[:, 2] < 0)))
        raise NewtonDivergedError(f"non-decaying discrete Maxwellian (a_2 = {a[cell, 2]})", cell=cell)
    if n_cells:
        logger.debug(f"discrete Maxwellian: {n_cells} cells, max {iterations.max()} / "
                     f"mean {iterations.mean():.2f} Newton iterations")
    return DMaxCoeffs(a=a, iterations=iterations, residual=norm), exponential_family(a, grid)


def maxwellian(moments: Union[MomentField, np.ndarray], grid: PhaseGrid,
               kind: Union[MaxwellianKind, str] = MaxwellianKind.DISCRETE,
               config: NewtonConfig = NewtonConfig()) -> Tuple[np.ndarray, Optional[DMaxCoeffs]]:
    """
    Equilibrium associated with per-cell moments.

    :param moments: per-cell moments
    :param grid: phase-space grid
    :param kind: continuous (sampled) or discrete Maxwellian
    :param config: Newton parameters (discrete Maxwellian only)
    :return: equilibrium values of shape (n, n_v + 1) and the Newton coefficients (None for the continuous kind)
    """
    if not isinstance(moments, MomentField):
        moments = MomentField.from_array(moments)
    kind = MaxwellianKind(kind)
    if kind == MaxwellianKind.DISCRETE:
        coeffs, values = discrete_maxwellian(moments, grid, config=config)
        return values, coeffs
    return continuous_maxwellian(moments.rho, moments.velocity, moments.temperature, grid.v), None
