#  Copyright (c) 2022 Robert Lieck.
"""
Exact solution of the Riemann problem for the Euler equations of a polytropic gas (the hydrodynamic limit of the
BGK model, with ``gamma = 3`` in one velocity dimension).

The star-region pressure is the root of ``f_L(p) + f_R(p) + u_R - u_L`` where ``f_K`` is the shock (Rankine-Hugoniot)
or rarefaction (isentropic) branch of the wave connecting the star region to state K. The root is found by Newton's
method started from the two-rarefaction approximation, with bisection as fallback.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.optimize import bisect

from bgkflow.errors import NewtonDivergedError, NonpositiveStateError, VacuumFormedError

logger = logging.getLogger(__name__)

# adiabatic exponent of a monoatomic gas in one dimension
GAMMA = 3.


@dataclass(frozen=True)
class EulerState:
    """
    Primitive state (density, velocity, pressure); fields may be arrays.
    """
    rho: np.ndarray
    u: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        for name in ('rho', 'u', 'p'):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (np.all(self.rho > 0) and np.all(self.p > 0)):
            raise NonpositiveStateError(f"density and pressure must be positive, got rho={self.rho}, p={self.p}")

    @property
    def T(self) -> np.ndarray:
        return self.p / self.rho

    def sound_speed(self, gamma: float = GAMMA) -> np.ndarray:
        return np.sqrt(gamma * self.p / self.rho)

    def conserved(self, gamma: float = GAMMA) -> np.ndarray:
        """(rho, rho u, E) with ``E = p / (gamma - 1) + rho u^2 / 2``"""
        return np.stack([self.rho, self.rho * self.u, self.p / (gamma - 1) + self.rho * self.u ** 2 / 2], axis=-1)

    def flux(self, gamma: float = GAMMA) -> np.ndarray:
        """Euler flux (rho u, rho u^2 + p, (E + p) u)"""
        E = self.conserved(gamma)[..., 2]
        return np.stack([self.rho * self.u, self.rho * self.u ** 2 + self.p, (E + self.p) * self.u], axis=-1)


def wave_function(p, state: EulerState, gamma: float = GAMMA) -> Tuple[np.ndarray, np.ndarray]:
    """
    Velocity jump ``f_K(p)`` across the wave between state K and the star region, and its derivative.
    """
    p = np.asarray(p, dtype=float)
    rho_k, p_k = float(state.rho), float(state.p)
    a_k = float(state.sound_speed(gamma))
    A = 2 / ((gamma + 1) * rho_k)
    B = (gamma - 1) / (gamma + 1) * p_k
    with np.errstate(invalid='ignore', divide='ignore'):
        shock = (p - p_k) * np.sqrt(A / (p + B))
        shock_prime = np.sqrt(A / (B + p)) * (1 - (p - p_k) / (2 * (B + p)))
        rarefaction = 2 * a_k / (gamma - 1) * ((p / p_k) ** ((gamma - 1) / (2 * gamma)) - 1)
        rarefaction_prime = (p / p_k) ** (-(gamma + 1) / (2 * gamma)) / (rho_k * a_k)
    is_shock = p > p_k
    return np.where(is_shock, shock, rarefaction), np.where(is_shock, shock_prime, rarefaction_prime)


def pressure_function(p, left: EulerState, right: EulerState, gamma: float = GAMMA) -> np.ndarray:
    """``f_L(p) + f_R(p) + u_R - u_L``; its root is the star-region pressure"""
    return wave_function(p, left, gamma)[0] + wave_function(p, right, gamma)[0] + float(right.u - left.u)


def solve_star_region(left: EulerState, right: EulerState, gamma: float = GAMMA, tol: float = 1e-14,
                      max_iter: int = 100) -> Tuple[float, float]:
    """
    Star-region pressure and velocity.

    :param left: left state
    :param right: right state
    :param gamma: adiabatic exponent
    :param tol: relative tolerance on the pressure change
    :param max_iter: maximum number of Newton iterations before falling back to bisection
    :return: ``(p_star, u_star)``
    """
    if gamma <= 1:
        raise ValueError(f"adiabatic exponent must be larger than one, got {gamma}")
    a_l, a_r = float(left.sound_speed(gamma)), float(right.sound_speed(gamma))
    du = float(right.u - left.u)
    if 2 / (gamma - 1) * (a_l + a_r) <= du:
        raise VacuumFormedError(f"Riemann data generates vacuum (u_R - u_L = {du} >= {2 / (gamma - 1) * (a_l + a_r)})")

    # two-rarefaction approximation
    z = (gamma - 1) / (2 * gamma)
    p = ((a_l + a_r - (gamma - 1) / 2 * du) / (a_l / float(left.p) ** z + a_r / float(right.p) ** z)) ** (1 / z)
    converged = False
    for _ in range(max_iter):
        f_l, df_l = wave_function(p, left, gamma)
        f_r, df_r = wave_function(p, right, gamma)
        p_new = p - (f_l + f_r + du) / (df_l + df_r)
        if not np.isfinite(p_new):
            break
        p_new = max(float(p_new), tol)
        change = 2 * abs(p_new - p) / (p_new + p)
        p = p_new
        if change < tol:
            converged = True
            break
    if not converged:
        logger.debug("Newton iteration for the star pressure failed, falling back to bisection")
        lo, hi = tol, max(float(left.p), float(right.p))
        while pressure_function(hi, left, right, gamma) < 0:
            hi *= 2
            if hi > 1e300:
                raise NewtonDivergedError("no bracket for the star-region pressure")
        p = float(bisect(lambda q: float(pressure_function(q, left, right, gamma)), lo, hi, xtol=1e-300,
                         rtol=4 * np.finfo(float).eps, maxiter=2000))
    f_l, _ = wave_function(p, left, gamma)
    f_r, _ = wave_function(p, right, gamma)
    u = (float(left.u) + float(right.u)) / 2 + (float(f_r) - float(f_l)) / 2
    return float(p), float(u)


def exact_euler_riemann(left: EulerState, right: EulerState, xi, gamma: float = GAMMA) -> EulerState:
    """
    Sample the self-similar solution of the Riemann problem at ``xi = x / t``.

    :param left: state for x < 0
    :param right: state for x > 0
    :param xi: similarity coordinate(s)
    :param gamma: adiabatic exponent
    :return: states at ``xi`` (same shape as xi)
    """
    xi = np.asarray(xi, dtype=float)
    p_star, u_star = solve_star_region(left, right, gamma)
    g1 = (gamma - 1) / (gamma + 1)
    z = (gamma - 1) / (2 * gamma)
    rho = np.empty_like(xi)
    u = np.empty_like(xi)
    p = np.empty_like(xi)

    def assign(mask, r, v, q):
        rho[mask] = np.broadcast_to(r, xi.shape)[mask]
        u[mask] = np.broadcast_to(v, xi.shape)[mask]
        p[mask] = np.broadcast_to(q, xi.shape)[mask]

    for side, state in ((-1, left), (1, right)):
        r_k, u_k, p_k = float(state.rho), float(state.u), float(state.p)
        a_k = float(state.sound_speed(gamma))
        on_side = xi <= u_star if side < 0 else xi > u_star
        ratio = p_star / p_k
        if ratio > 1:
            # shock
            speed = u_k + side * a_k * np.sqrt((gamma + 1) / (2 * gamma) * ratio + z)
            rho_star = r_k * (ratio + g1) / (g1 * ratio + 1)
            outside = side * (xi - speed) > 0
            assign(on_side & outside, r_k, u_k, p_k)
            assign(on_side & ~outside, rho_star, u_star, p_star)
        else:
            # rarefaction
            head = u_k + side * a_k
            tail = u_star + side * a_k * ratio ** z
            rho_star = r_k * ratio ** (1 / gamma)
            outside = side * (xi - head) > 0
            inside = side * (xi - tail) < 0
            fan = on_side & ~outside & ~inside
            base = 2 / (gamma + 1) - side * g1 / a_k * (u_k - xi)
            with np.errstate(invalid='ignore'):
                assign(fan, r_k * base ** (2 / (gamma - 1)),
                       2 / (gamma + 1) * (-side * a_k + (gamma - 1) / 2 * u_k + xi),
                       p_k * base ** (2 * gamma / (gamma - 1)))
            assign(on_side & outside, r_k, u_k, p_k)
            assign(on_side & inside, rho_star, u_star, p_star)
    return EulerState(rho=rho, u=u, p=p)
