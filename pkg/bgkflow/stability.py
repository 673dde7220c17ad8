#  Copyright (c) 2022 Robert Lieck.
"""
Linear stability of the conservative semi-Lagrangian schemes for the advection equation ``u_t + u_x = 0``.

With Courant number ``a`` and Fourier mode ``xi`` only the product ``y = a xi`` enters. For DIRK schemes the scheme
is stable for ``|y| <= y*`` where ``y*`` is the first positive sign change of
``F_s(y) = S_s(y) - y/2 (C_s(y)^2 + S_s(y)^2)``, ``C_s = sum b cos(c y)``, ``S_s = sum b sin(c y)``; the maximal
Courant number is ``a* = y*/pi``. For BDF schemes the roots of the characteristic polynomial are computed from
companion matrices.
"""

import logging
from dataclasses import dataclass
from typing import Tuple
from warnings import warn

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from bgkflow.errors import DegenerateGammaError, NumericalError
from bgkflow.tableau import BdfCoeffs, DIRK2_ALPHA, Tableau

logger = logging.getLogger(__name__)

# admissible interval of the diagonal entry of DIRK3 schemes with equal first and last diagonal entries
GAMMA_INTERVAL = (DIRK2_ALPHA, 1 / 3)


@dataclass(frozen=True)
class StabilityScan:
    """
    :param xi_samples: number of Fourier modes sampled in [-pi, pi] (odd, so that xi = 0 is included)
    :param a_step: increment of the Courant number scan
    :param a_max: largest Courant number scanned
    :param y_tol: tolerance of the bisection for y*
    """
    xi_samples: int = 2001
    a_step: float = 1e-3
    a_max: float = 4.
    y_tol: float = 1e-9

    def __post_init__(self):
        if self.xi_samples % 2 != 1:
            raise ValueError(f"xi_samples must be odd, got {self.xi_samples}")
        if not (self.a_step > 0 and self.a_max > self.a_step):
            raise ValueError(f"invalid scan range a_step={self.a_step}, a_max={self.a_max}")

    @property
    def xi(self) -> np.ndarray:
        return np.linspace(-np.pi, np.pi, self.xi_samples)

    @property
    def a(self) -> np.ndarray:
        return np.arange(1, int(np.floor(self.a_max / self.a_step + 1e-9)) + 1) * self.a_step


def rk_amp(tableau: Tableau, a, xi) -> np.ndarray:
    """
    Amplification factor ``rho(xi) = 1 - i xi a sum_l b_l exp(-i c_l a xi)`` of the conservative DIRK scheme.

    :param tableau: Butcher table
    :param a: Courant number
    :param xi: Fourier mode (scalar or array)
    :return: complex amplification factor(s)
    """
    y = np.asarray(a, dtype=float) * np.asarray(xi, dtype=float)
    return 1 - 1j * y * (tableau.b * np.exp(-1j * np.multiply.outer(y, tableau.c))).sum(axis=-1)


def cs_functions(tableau: Tableau, y) -> Tuple[np.ndarray, np.ndarray]:
    """``C_s(y) = sum b cos(c y)`` and ``S_s(y) = sum b sin(c y)``"""
    cy = np.multiply.outer(np.asarray(y, dtype=float), tableau.c)
    return (tableau.b * np.cos(cy)).sum(axis=-1), (tableau.b * np.sin(cy)).sum(axis=-1)


def fs_function(tableau: Tableau, y) -> np.ndarray:
    """
    ``F_s(y) = S_s(y) - y/2 (C_s(y)^2 + S_s(y)^2)``, so that ``|rho|^2 - 1 = -2 y F_s(y)``; the scheme is stable for
    mode ``y`` iff ``y F_s(y) >= 0``.
    """
    y = np.asarray(y, dtype=float)
    C, S = cs_functions(tableau, y)
    return S - y / 2 * (C ** 2 + S ** 2)


def rk_critical_y(tableau: Tableau, scan: StabilityScan = StabilityScan()) -> float:
    """
    First sign change ``y*`` of ``F_s`` on ``(0, pi a_max]``: a coarse scan with step ``pi a_step`` followed by
    bisection. Values within round-off of zero count as non-negative.

    :param tableau: Butcher table
    :param scan: scan parameters
    :return: y* (0 if the scheme is unstable for all y > 0, ``pi a_max`` if no sign change was found)
    """
    y = np.pi * scan.a
    F = fs_function(tableau, y)
    threshold = -64 * np.finfo(float).eps * np.maximum(1, y)
    negative = np.flatnonzero(F < threshold)
    if negative.size == 0:
        warn(f"no sign change of F_s for {tableau.name or 'tableau'} up to y = {y[-1]}", RuntimeWarning)
        return float(y[-1])
    k = negative[0]
    if k == 0:
        return 0.
    lo, hi = y[k - 1], y[k]
    if fs_function(tableau, lo) <= 0:
        return float(lo)
    return float(bisect(lambda t: fs_function(tableau, t), lo, hi, xtol=scan.y_tol))


def rk_max_cfl(tableau: Tableau, scan: StabilityScan = StabilityScan()) -> float:
    """maximal Courant number ``a* = y*/pi``"""
    return rk_critical_y(tableau, scan) / np.pi


def fs_scan(tableau: Tableau, y_max: float = 10., n: int = 2001) -> pd.DataFrame:
    """table of ``F_s`` on ``[0, y_max]``"""
    y = np.linspace(0, y_max, n)
    return pd.DataFrame({'y': y, 'F_s': fs_function(tableau, y)})


def bdf_characteristic_roots(coeffs: BdfCoeffs, a, xi) -> np.ndarray:
    """
    Roots of ``p(rho) = rho^k - sum_l a_l rho^(k-l) (1 - i beta a xi exp(-i l a xi))`` as eigenvalues of the
    companion matrix.

    :param coeffs: BDF coefficients
    :param a: Courant number
    :param xi: Fourier mode(s)
    :return: complex roots of shape (..., k)
    """
    y = np.asarray(a, dtype=float) * np.asarray(xi, dtype=float)
    ell = np.arange(1, coeffs.s + 1)
    # p(rho) = rho^k + sum_l q_l rho^(k-l)
    q = -coeffs.a * (1 - 1j * coeffs.beta * y[..., None] * np.exp(-1j * np.multiply.outer(y, ell)))
    k = coeffs.s
    companion = np.zeros(y.shape + (k, k), dtype=complex)
    companion[..., 0, :] = -q
    if k > 1:
        companion[..., np.arange(1, k), np.arange(k - 1)] = 1
    roots = np.linalg.eigvals(companion)
    if not np.all(np.isfinite(roots)):
        raise NumericalError(f"root computation failed for {coeffs.name} at a={a}")
    return roots


def bdf_max_root(coeffs: BdfCoeffs, a, xi) -> np.ndarray:
    """largest modulus among the roots of the characteristic polynomial"""
    return np.abs(bdf_characteristic_roots(coeffs, a, xi)).max(axis=-1)


def bdf_scan(coeffs: BdfCoeffs, scan: StabilityScan = StabilityScan(), stop_at_instability: bool = True,
             tol: float = 1e-10) -> pd.DataFrame:
    """
    Maximal root modulus over all sampled Fourier modes, for increasing Courant numbers.

    :param coeffs: BDF coefficients
    :param scan: scan parameters
    :param stop_at_instability: stop after the first unstable Courant number
    :param tol: allowed excess of the root modulus over one
    :return: table with columns ``a`` and ``max_abs_rho``
    """
    xi = scan.xi
    rows = []
    for a in scan.a:
        m = float(bdf_max_root(coeffs, a, xi).max())
        rows.append((a, m))
        if stop_at_instability and m > 1 + tol:
            break
    return pd.DataFrame(rows, columns=['a', 'max_abs_rho'])


def bdf_max_cfl(coeffs: BdfCoeffs, scan: StabilityScan = StabilityScan(), tol: float = 1e-10) -> float:
    """largest scanned Courant number before the first one with a root outside the unit disc (0 if none is stable)"""
    table = bdf_scan(coeffs, scan, stop_at_instability=True, tol=tol)
    stable = table['max_abs_rho'] <= 1 + tol
    if stable.all():
        warn(f"{coeffs.name or 'BDF scheme'} is stable on the whole scan range up to a = {scan.a_max}",
             RuntimeWarning)
        return float(table['a'].iloc[-1])
    first_unstable = int(np.argmin(stable.values))
    if first_unstable == 0:
        return 0.
    return float(table['a'].iloc[first_unstable - 1])


def _dirk3_denominators(gamma: float) -> Tuple[float, float]:
    return 2 * gamma ** 2 - 4 * gamma + 1, 3 * gamma ** 3 - 9 * gamma ** 2 + 6 * gamma - 1


def dirk3_from_gamma(gamma: float, tol: float = 1e-10) -> Tableau:
    """
    Third-order, stiffly accurate DIRK scheme with equal first and last diagonal entry ``gamma``::

        gamma | gamma          0     0
        c2    | c2 - gamma2    gamma2  0
        1     | 1 - b2 - gamma b2    gamma

    with ``b2 = -3/4 (2g^2 - 4g + 1)^2 / (3g^3 - 9g^2 + 6g - 1)``, ``c2 = (6g^2 - 9g + 2) / (3 (2g^2 - 4g + 1))`` and
    ``gamma2 = (6g^2 - 6g + 1) / (3 (2g^2 - 4g + 1))``.

    :param gamma: diagonal entry
    :param tol: distance to a pole below which the parameter is rejected
    :return: the tableau
    """
    d2, d3 = _dirk3_denominators(gamma)
    if abs(d2) < tol or abs(d3) < tol:
        raise DegenerateGammaError(f"gamma = {gamma} is on a pole of the DIRK3 coefficients")
    b2 = -3 / 4 * d2 ** 2 / d3
    c2 = (6 * gamma ** 2 - 9 * gamma + 2) / (3 * d2)
    gamma2 = (6 * gamma ** 2 - 6 * gamma + 1) / (3 * d2)
    b1 = 1 - b2 - gamma
    return Tableau(A=[[gamma, 0, 0], [c2 - gamma2, gamma2, 0], [b1, b2, gamma]], b=[b1, b2, gamma],
                   c=[gamma, c2, 1], name=f"DIRK3(gamma={gamma:g})")


def dirk3_from_nodes(c1: float, c2: float) -> Tableau:
    """
    General third-order, stiffly accurate three-stage DIRK scheme with nodes ``(c1, c2, 1)`` and ``a_11 = c1``;
    the weights and the second diagonal entry follow from the order conditions.
    """
    if min(abs(c2 - c1), abs(c2 - 1), abs(c1 - 1), abs(3 * c1 - 1)) < 1e-12:
        raise DegenerateGammaError(f"nodes c1={c1}, c2={c2} do not determine a third-order scheme")
    b2 = (3 * c1 - 1) / (6 * (c2 - c1) * (c2 - 1))
    b3 = (6 * c1 * c2 - 3 * c1 - 3 * c2 + 2) / (6 * (c2 - 1) * (c1 - 1))
    gamma2 = (6 * c1 ** 2 * c2 - 4 * c1 * c2 - c1 + c2) / (2 * (3 * c1 - 1) * (c1 - 1))
    b1 = 1 - b2 - b3
    return Tableau(A=[[c1, 0, 0], [c2 - gamma2, gamma2, 0], [b1, b2, b3]], b=[b1, b2, b3], c=[c1, c2, 1],
                   name=f"DIRK3(c1={c1:g}, c2={c2:g})")


@dataclass(frozen=True)
class IStability:
    """
    :param e4: value of ``E_4 = 8 q_1 - 12 q_2 - 3`` (must be non-negative)
    :param region: nodes lie in the admissible region ``c_1 <= 1/3, c_2 >= 1``
    """
    e4: float
    region: bool

    @property
    def admissible(self) -> bool:
        return self.region and self.e4 >= 0


def istability_check(tableau: Tableau) -> IStability:
    """I-stability indicator of a three-stage, stiffly accurate DIRK scheme."""
    if tableau.s != 3 or not tableau.stiffly_accurate:
        raise ValueError(f"I-stability check needs a three-stage stiffly accurate tableau, got {tableau.name}")
    g = np.diag(tableau.A)
    q1 = g.sum()
    q2 = g[0] * g[1] + g[0] * g[2] + g[1] * g[2]
    c1, c2 = tableau.c[0], tableau.c[1]
    return IStability(e4=float(8 * q1 - 12 * q2 - 3), region=bool(c1 <= 1 / 3 and c2 >= 1))


def gamma_scan(interval: Tuple[float, float] = GAMMA_INTERVAL, step: float = 1e-3,
               scan: StabilityScan = StabilityScan()) -> pd.DataFrame:
    """
    ``y*`` and ``a*`` of :func:`dirk3_from_gamma` for all multiples of ``step`` inside the open interval.

    :return: table with columns ``gamma``, ``y_star``, ``a_star``
    """
    lo, hi = interval
    if not (GAMMA_INTERVAL[0] <= lo < hi <= GAMMA_INTERVAL[1]):
        raise ValueError(f"interval {interval} is not inside {GAMMA_INTERVAL}")
    gammas = np.arange(np.floor(lo / step) + 1, np.ceil(hi / step)) * step
    rows = []
    for gamma in gammas:
        try:
            y_star = rk_critical_y(dirk3_from_gamma(gamma), scan)
        except DegenerateGammaError:
            logger.debug(f"skipping degenerate gamma = {gamma}")
            continue
        rows.append((gamma, y_star, y_star / np.pi))
    return pd.DataFrame(rows, columns=['gamma', 'y_star', 'a_star'])


def optimize_gamma(interval: Tuple[float, float] = GAMMA_INTERVAL, step: float = 1e-3,
                   scan: StabilityScan = StabilityScan()) -> float:
    """the scanned gamma with the largest y*"""
    table = gamma_scan(interval, step, scan)
    return float(table['gamma'].iloc[int(table['y_star'].values.argmax())])


def fourier_amplification(tableau: Tableau, a: float, mode: int, n: int = 64) -> complex:
    """
    Per-step amplification of a single Fourier mode observed by time-stepping the conservative DIRK scheme for
    ``u_t + u_x = 0`` (no collisions) on a periodic grid of ``n`` cells. Stage values are shifted spectrally and
    face fluxes use the spectral relation ``u_hat = u / sinc(xi / 2)``.

    :param tableau: Butcher table
    :param a: Courant number
    :param mode: wave number of the initial mode (``xi = 2 pi mode / n``)
    :param n: number of cells
    :return: ratio ``u^{n+1} / u^n``
    """
    xi_all = 2 * np.pi * np.fft.fftfreq(n)
    xi = 2 * np.pi * mode / n
    u = np.exp(1j * xi * np.arange(n))
    U = np.fft.fft(u)
    u_new = u.copy()
    for b_l, c_l in zip(tableau.b, tableau.c):
        # stage value u(x - c a dx) in Fourier space
        stage = U * np.exp(-1j * xi_all * c_l * a)
        right_face = np.fft.ifft(stage / np.sinc(xi_all / (2 * np.pi)) * np.exp(1j * xi_all / 2))
        u_new = u_new - a * b_l * (right_face - np.roll(right_face, 1))
    return complex(np.mean(u_new / u))
