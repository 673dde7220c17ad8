#  Copyright (c) 2022 Robert Lieck.
"""Diagnostics of computed solutions: conservation, distance to equilibrium, error bounds and shock location."""

from dataclasses import dataclass
from typing import Union
from warnings import warn

import numpy as np

from bgkflow.grid import PhaseGrid, moment_array
from bgkflow.maxwellian import MaxwellianKind, NewtonConfig, maxwellian
from bgkflow.tableau import BdfCoeffs, Tableau

MOMENT_NAMES = ('mass', 'momentum', 'energy')


@dataclass(frozen=True)
class ConservationError:
    """
    Drift of the three moment totals.

    :param error: relative drift per moment (absolute drift where ``absolute`` is set)
    :param absolute: flags moments whose reference total vanishes, for which the absolute drift is reported
    """
    error: np.ndarray
    absolute: np.ndarray

    def __iter__(self):
        return iter(self.error)


def drift(totals: np.ndarray, reference: np.ndarray, scale: np.ndarray, zero_tol: float = 1e-12) -> ConservationError:
    """
    Relative drift ``|totals - reference| / |reference|`` per moment; where the reference total is below
    ``zero_tol * scale`` (e.g. momentum of symmetric data) the absolute drift is reported and flagged.

    :param totals: moment totals, shape (..., 3)
    :param reference: reference totals, same shape
    :param scale: magnitude of the moments (totals of ``|f phi|``), same shape
    :param zero_tol: relative threshold below which a reference total counts as zero
    """
    totals = np.asarray(totals, dtype=float)
    reference = np.asarray(reference, dtype=float)
    diff = np.abs(totals - reference)
    absolute = np.abs(reference) <= zero_tol * np.asarray(scale, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        error = np.where(absolute, diff, diff / np.abs(reference))
    return ConservationError(error=error, absolute=absolute)


def conservation_error(trajectory) -> ConservationError:
    """
    Conservation error of a run: for each moment, ``|sum_i m_i^{N_t} - R^{N_t}| / |R^{N_t}|`` where ``R`` are the
    reference totals (the initial totals on periodic grids, the initial totals plus the boundary inflow otherwise).

    :param trajectory: a :class:`~bgkflow.integrators.Trajectory`
    :return: relative errors with flags for moments that are reported as absolute errors
    """
    if len(trajectory.times) < 2:
        raise ValueError("conservation error needs at least two recorded states")
    result = drift(trajectory.totals[-1], trajectory.reference[-1], trajectory.scale[0])
    if np.any(result.absolute):
        names = [n for n, a in zip(MOMENT_NAMES, result.absolute) if a]
        warn(f"zero reference total for {', '.join(names)}: reporting absolute error", RuntimeWarning)
    return result


def distance_to_equilibrium(f: np.ndarray, grid: PhaseGrid,
                            kind: Union[MaxwellianKind, str] = MaxwellianKind.DISCRETE,
                            newton: NewtonConfig = NewtonConfig()) -> float:
    """
    ``sum_ij |f_ij - M_ij| dv dx`` where M is the continuous or discrete Maxwellian of the moments of f.
    """
    M, _ = maxwellian(moment_array(f, grid), grid, kind=kind, config=newton)
    return float(np.abs(f - M).sum() * grid.dv * grid.dx)


def dirk_conservation_bound(tableau: Tableau, n_steps: int, dt: float, kappa: float, length: float,
                            tol: float = 1e-14) -> float:
    """
    Bound on the drift of the moment totals (times dx) of the conservative DIRK scheme on periodic grids,
    ``sum|b| N_t dt / (kappa + b_s dt) L tol``.
    """
    return float(np.abs(tableau.b).sum() * n_steps * dt / (kappa + tableau.b[-1] * dt) * length * tol)


def bdf_conservation_bound(coeffs: BdfCoeffs, startup: Tableau, n_steps: int, dt: float, kappa: float,
                           length: float, tol: float = 1e-14) -> float:
    """
    Bound for the conservative BDF scheme whose first ``s - 1`` steps are DIRK steps,
    ``gamma_s ((N_t - s) beta dt / (kappa + beta dt) + sum|b| s dt / (kappa + b_s dt)) L tol``.
    """
    s = coeffs.s
    bdf_part = max(n_steps - s, 0) * coeffs.beta * dt / (kappa + coeffs.beta * dt)
    dirk_part = np.abs(startup.b).sum() * s * dt / (kappa + startup.b[-1] * dt)
    return float(coeffs.gamma * (bdf_part + dirk_part) * length * tol)


def l1_distance(x: np.ndarray, values: np.ndarray, reference: np.ndarray) -> float:
    """L1 distance ``sum |values - reference| dx`` of cell values on a uniform grid"""
    x = np.asarray(x, dtype=float)
    dx = x[1] - x[0] if x.size > 1 else 1.
    return float(np.abs(np.asarray(values) - np.asarray(reference)).sum() * dx)


def shock_position(x: np.ndarray, rho: np.ndarray, rho_left: float, rho_right: float) -> float:
    """
    Position where the density crosses the mean of the two adjacent states, by linear interpolation between the
    rightmost pair of cells that brackets the mean.
    """
    x = np.asarray(x, dtype=float)
    rho = np.asarray(rho, dtype=float)
    mid = (rho_left + rho_right) / 2
    above = (rho - mid) * np.sign(rho_left - rho_right) > 0
    crossings = np.flatnonzero(above[:-1] & ~above[1:])
    if crossings.size == 0:
        raise ValueError("density does not cross the mid value")
    i = crossings[-1]
    return float(x[i] + (mid - rho[i]) / (rho[i + 1] - rho[i]) * (x[i + 1] - x[i]))
