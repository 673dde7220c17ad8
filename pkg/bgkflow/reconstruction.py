#  Copyright (c) 2022 Robert Lieck.
"""
Interpolation at characteristic feet and reconstruction of numerical fluxes.

Two families of reconstructions are implemented:

- G-WENO *interpolation* of point values at arbitrary positions inside a cell (orders 1-2, 3 and 5); it moves the
  distribution along characteristics in the semi-Lagrangian steps.
- Finite-difference WENO *flux reconstruction* at cell faces (orders 1, 3 and 5) with upwind flux splitting; it
  provides the face fluxes of the conservative correction.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from bgkflow.errors import StencilOutOfDomainError
from bgkflow.grid import BoundaryCondition, PhaseGrid


class GwenoOrder(str, Enum):
    LINEAR = "Linear"
    W23 = "W23"
    W35 = "W35"

    @property
    def offsets(self) -> np.ndarray:
        """stencil offsets relative to the base cell j"""
        return {GwenoOrder.LINEAR: np.arange(0, 2),
                GwenoOrder.W23: np.arange(-1, 3),
                GwenoOrder.W35: np.arange(-2, 4)}[self]

    @property
    def width(self) -> int:
        return len(self.offsets)

    @property
    def order(self) -> int:
        """formal order of accuracy of the time integrator this reconstruction pairs with"""
        return {GwenoOrder.LINEAR: 1, GwenoOrder.W23: 2, GwenoOrder.W35: 3}[self]


@dataclass(frozen=True)
class WenoParams:
    """
    :param epsilon: regularisation of the smoothness indicators in the nonlinear weights
    """
    epsilon: float = 1e-6

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


# Smoothness indicators as quadratic forms (p, q, coefficient) in the stencil values; positions p, q index the
# stencil of the respective order (W23: u_{j-1}..u_{j+2}, W35: u_{j-2}..u_{j+3}).
_BETA_W23 = (
    # left: u_{j-1}, u_j, u_{j+1}
    ((0, 0, 13 / 12), (1, 1, 16 / 3), (2, 2, 25 / 12), (0, 1, -13 / 3), (0, 2, 13 / 6), (1, 2, -19 / 3)),
    # right: u_j, u_{j+1}, u_{j+2}
    ((1, 1, 13 / 12), (2, 2, 16 / 3), (3, 3, 25 / 12), (1, 2, -13 / 3), (1, 3, 13 / 6), (2, 3, -19 / 3)),
)
_BETA_W35 = (
    # left: u_{j-2}..u_{j+1}
    ((3, 3, 407 / 90), (2, 2, 721 / 30), (1, 1, 248 / 15), (0, 0, 61 / 45), (3, 2, -1193 / 60), (3, 1, 439 / 30),
     (3, 0, -683 / 180), (2, 1, -2309 / 60), (2, 0, 309 / 30), (1, 0, -553 / 60)),
    # centre: u_{j-1}..u_{j+2}
    ((1, 1, 61 / 45), (2, 2, 331 / 30), (3, 3, 331 / 30), (4, 4, 61 / 45), (1, 2, -141 / 20), (1, 3, 179 / 30),
     (1, 4, -293 / 180), (2, 3, -1259 / 60), (2, 4, 179 / 30), (3, 4, -141 / 20)),
    # right: u_j..u_{j+3}
    ((2, 2, 407 / 90), (3, 3, 721 / 30), (4, 4, 248 / 15), (5, 5, 61 / 45), (2, 3, -1193 / 60), (2, 4, 439 / 30),
     (2, 5, -683 / 180), (3, 4, -2309 / 60), (3, 5, 309 / 30), (4, 5, -553 / 60)),
)


def _quadratic_form(values: np.ndarray, terms) -> np.ndarray:
    return sum(c * values[..., p] * values[..., q] for p, q, c in terms)


def _lagrange(values: np.ndarray, nodes, t: np.ndarray) -> np.ndarray:
    """evaluate the interpolation polynomial through (nodes, values[..., k]) at t"""
    out = 0
    for k, xk in enumerate(nodes):
        basis = 1
        for m, xm in enumerate(nodes):
            if m != k:
                basis = basis * (t - xm) / (xk - xm)
        out = out + basis * values[..., k]
    return out


def smoothness_indicators(values: np.ndarray, order: Union[GwenoOrder, str]) -> np.ndarray:
    """
    Smoothness indicators of the sub-stencils.

    :param values: stencil values of shape (..., width)
    :param order: W23 or W35
    :return: array of shape (..., number of sub-stencils)
    """
    order = GwenoOrder(order)
    if order == GwenoOrder.W23:
        forms = _BETA_W23
    elif order == GwenoOrder.W35:
        forms = _BETA_W35
    else:
        raise ValueError(f"no smoothness indicators for order {order.value}")
    return np.stack([_quadratic_form(values, terms) for terms in forms], axis=-1)


def _substencils(values: np.ndarray, theta: np.ndarray, order: GwenoOrder) -> Tuple[np.ndarray, np.ndarray]:
    """linear weights and sub-stencil polynomial values at theta, each of shape (..., number of sub-stencils)"""
    t = theta
    if order == GwenoOrder.W23:
        linear = [(2 - t) / 3, (t + 1) / 3]
        polys = [_lagrange(values[..., 0:3], (-1, 0, 1), t),
                 _lagrange(values[..., 1:4], (0, 1, 2), t)]
    else:
        linear = [(t - 2) * (t - 3) / 20, -(t + 2) * (t - 3) / 10, (t + 2) * (t + 1) / 20]
        polys = [_lagrange(values[..., 0:4], (-2, -1, 0, 1), t),
                 _lagrange(values[..., 1:5], (-1, 0, 1, 2), t),
                 _lagrange(values[..., 2:6], (0, 1, 2, 3), t)]
    shape = np.broadcast(values[..., 0], t).shape
    return (np.stack([np.broadcast_to(c, shape) for c in linear], axis=-1),
            np.stack([np.broadcast_to(p, shape) for p in polys], axis=-1))


def gweno_weights(values: np.ndarray, theta, order: Union[GwenoOrder, str],
                  params: WenoParams = WenoParams()) -> np.ndarray:
    """
    Nonlinear weights ``omega_k = alpha_k / sum(alpha)`` with ``alpha_k = C_k(theta) / (epsilon + beta_k)^2``.

    :param values: stencil values of shape (..., width)
    :param theta: position inside the base cell in [0, 1), broadcastable against ``values[..., 0]``
    :param order: W23 or W35
    :param params: WENO parameters
    :return: weights of shape (..., number of sub-stencils)
    """
    order = GwenoOrder(order)
    values = np.asarray(values, dtype=float)
    linear, _ = _substencils(values, np.asarray(theta, dtype=float), order)
    alpha = linear / (params.epsilon + smoothness_indicators(values, order)) ** 2
    return alpha / alpha.sum(axis=-1, keepdims=True)


def gweno_stencil(values: np.ndarray, theta, order: Union[GwenoOrder, str],
                  params: WenoParams = WenoParams()) -> np.ndarray:
    """
    Interpolate at ``x_j + theta dx`` from stencil values (the vectorised core of :func:`gweno_interpolate`).

    :param values: stencil values of shape (..., width) ordered as ``order.offsets``
    :param theta: position inside the base cell, broadcastable against ``values[..., 0]``
    :param order: interpolation order
    :param params: WENO parameters
    :return: interpolated values of shape (...)
    """
    order = GwenoOrder(order)
    values = np.asarray(values, dtype=float)
    theta = np.asarray(theta, dtype=float)
    assert values.shape[-1] == order.width, f"stencil of order {order.value} needs {order.width} values " \
                                            f"but got {values.shape[-1]}"
    if order == GwenoOrder.LINEAR:
        return (1 - theta) * values[..., 0] + theta * values[..., 1]
    linear, polys = _substencils(values, theta, order)
    alpha = linear / (params.epsilon + smoothness_indicators(values, order)) ** 2
    return (alpha * polys).sum(axis=-1) / alpha.sum(axis=-1)


def _stencil_indices(base: np.ndarray, n: int, bc: BoundaryCondition, offsets: np.ndarray) -> np.ndarray:
    idx = base[..., None] + offsets
    if BoundaryCondition(bc) == BoundaryCondition.PERIODIC:
        return idx % n
    return np.clip(idx, 0, n - 1)


def gweno_interpolate(u: np.ndarray, j: int, theta: float, order: Union[GwenoOrder, str],
                      params: WenoParams = WenoParams(),
                      bc: Union[BoundaryCondition, str] = BoundaryCondition.PERIODIC) -> float:
    """
    Interpolate a sequence of point values at ``x_j + theta dx``.

    :param u: 1D array of values on a uniform grid
    :param j: base index
    :param theta: offset inside the cell, in [0, 1)
    :param order: interpolation order
    :param params: WENO parameters
    :param bc: periodic wrap-around or constant extension at the ends
    :return: interpolated value
    """
    order = GwenoOrder(order)
    u = np.asarray(u, dtype=float)
    idx = _stencil_indices(np.asarray(j), u.shape[0], bc, order.offsets)
    return float(gweno_stencil(u[idx], theta, order, params))


def characteristic_feet(displacement: np.ndarray, dx: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Locate the feet ``x_i - d`` of the characteristics relative to the grid.

    :param displacement: displacement ``d`` per velocity node (in units of x)
    :param dx: cell size
    :return: integer cell offset ``k`` and fraction ``theta`` in [0, 1) so that the foot of cell i lies at
     ``x_{i + k} + theta dx``
    """
    s = -np.asarray(displacement, dtype=float) / dx
    k = np.floor(s)
    theta = s - k
    # fractions that round to one belong to the next cell
    tie = theta >= 1 - 4 * np.finfo(float).eps
    k = np.where(tie, k + 1, k)
    theta = np.where(tie, 0., theta)
    return k.astype(int), theta


def shift_interpolate(f: np.ndarray, grid: PhaseGrid, displacement: np.ndarray, order: Union[GwenoOrder, str],
                      params: WenoParams = WenoParams()) -> np.ndarray:
    """
    Evaluate every velocity row of ``f`` at the characteristic feet ``x_i - d_j``.

    :param f: values of shape (n_x, n_v + 1)
    :param grid: phase-space grid
    :param displacement: displacement ``d_j`` per velocity node, shape (n_v + 1,)
    :param order: interpolation order
    :param params: WENO parameters
    :return: shifted values of shape (n_x, n_v + 1)
    """
    order = GwenoOrder(order)
    k, theta = characteristic_feet(displacement, grid.dx)
    if not grid.periodic:
        reach = np.abs(k).max(initial=0) + order.width
        if reach > grid.n_x:
            raise StencilOutOfDomainError(f"characteristic feet reach {reach} cells beyond the domain of "
                                          f"{grid.n_x} cells")
    base = np.arange(grid.n_x)[:, None] + k[None, :]
    idx = _stencil_indices(base, grid.n_x, grid.bc, order.offsets)
    cols = np.arange(f.shape[1])[None, :, None]
    return gweno_stencil(f[idx, cols], theta[None, :], order, params)


def flux_split(f: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Upwind splitting of the flux ``v f`` into the parts moving right and left.

    :param f: values with velocity along the last axis
    :param v: velocities (broadcast against f)
    :return: ``(F_plus, F_minus)`` with ``F_plus + F_minus = v f``
    """
    v = np.asarray(v, dtype=float)
    flux = v * np.asarray(f, dtype=float)
    return np.where(v > 0, flux, 0.), np.where(v < 0, flux, 0.)


def _weno5(um2, um1, u0, up1, up2, eps):
    # value at the right face of the centre cell from the left-biased five-point stencil
    q0 = (2 * um2 - 7 * um1 + 11 * u0) / 6
    q1 = (-um1 + 5 * u0 + 2 * up1) / 6
    q2 = (2 * u0 + 5 * up1 - up2) / 6
    b0 = 13 / 12 * (um2 - 2 * um1 + u0) ** 2 + 1 / 4 * (um2 - 4 * um1 + 3 * u0) ** 2
    b1 = 13 / 12 * (um1 - 2 * u0 + up1) ** 2 + 1 / 4 * (um1 - up1) ** 2
    b2 = 13 / 12 * (u0 - 2 * up1 + up2) ** 2 + 1 / 4 * (3 * u0 - 4 * up1 + up2) ** 2
    a0 = 0.1 / (eps + b0) ** 2
    a1 = 0.6 / (eps + b1) ** 2
    a2 = 0.3 / (eps + b2) ** 2
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)


def _weno3(um1, u0, up1, eps):
    q0 = (-um1 + 3 * u0) / 2
    q1 = (u0 + up1) / 2
    a0 = (1 / 3) / (eps + (u0 - um1) ** 2) ** 2
    a1 = (2 / 3) / (eps + (up1 - u0) ** 2) ** 2
    return (a0 * q0 + a1 * q1) / (a0 + a1)


def weno_flux_faces(F_plus: np.ndarray, F_minus: np.ndarray, bc: Union[BoundaryCondition, str],
                    order: Union[GwenoOrder, str] = GwenoOrder.W35,
                    params: WenoParams = WenoParams()) -> np.ndarray:
    """
    Reconstruct numerical fluxes ``F_{i+1/2} = F^+_i(x_{i+1/2}) + F^-_{i+1}(x_{i+1/2})`` at all cell faces.

    The reconstruction order follows the interpolation order the pipeline uses: first-order upwind for Linear,
    third-order WENO for W23 and fifth-order WENO for W35. Ghost cells are periodic copies or constant extrapolations
    of the boundary cells.

    :param F_plus: right-moving flux per cell, shape (n_x, ...)
    :param F_minus: left-moving flux per cell, same shape
    :param bc: boundary condition
    :param order: reconstruction order
    :param params: WENO parameters
    :return: face fluxes of shape (n_x + 1, ...); face k separates cells k - 1 and k
    """
    order = GwenoOrder(order)
    F_plus = np.asarray(F_plus, dtype=float)
    F_minus = np.asarray(F_minus, dtype=float)
    n = F_plus.shape[0]
    if order == GwenoOrder.W35 and n < 5:
        raise ValueError(f"fifth-order flux reconstruction needs at least 5 cells, got {n}")
    mode = 'wrap' if BoundaryCondition(bc) == BoundaryCondition.PERIODIC else 'edge'
    pad = [(3, 3)] + [(0, 0)] * (F_plus.ndim - 1)
    P = np.pad(F_plus, pad, mode=mode)
    M = np.pad(F_minus, pad, mode=mode)
    eps = params.epsilon

    # padded index p holds cell p - 3; face k lies between cells k - 1 and k
    def s(a, shift):
        return a[shift:shift + n + 1]

    if order == GwenoOrder.LINEAR:
        return s(P, 2) + s(M, 3)
    if order == GwenoOrder.W23:
        return _weno3(s(P, 1), s(P, 2), s(P, 3), eps) + _weno3(s(M, 4), s(M, 3), s(M, 2), eps)
    return (_weno5(s(P, 0), s(P, 1), s(P, 2), s(P, 3), s(P, 4), eps) +
            _weno5(s(M, 5), s(M, 4), s(M, 3), s(M, 2), s(M, 1), eps))


def flux_difference(faces: np.ndarray) -> np.ndarray:
    """``F_{i+1/2} - F_{i-1/2}`` per cell"""
    return faces[1:] - faces[:-1]


def shift_boundary_inflow(f: np.ndarray, grid: PhaseGrid, displacement: np.ndarray) -> np.ndarray:
    """
    Change of ``sum_i f_ij dx`` per velocity node under linear shift interpolation
    (:func:`shift_interpolate` with order Linear), i.e. the flux through the two boundary faces: the integral of the
    linear interpolant over the departure windows, with the ghost side extended by the boundary values. Zero on
    periodic grids.

    :param f: values of shape (n_x, n_v + 1)
    :param grid: phase-space grid
    :param displacement: displacement ``d_j`` per velocity node, shape (n_v + 1,)
    :return: inflow per velocity node, shape (n_v + 1,)
    """
    f = np.asarray(f, dtype=float)
    if grid.periodic:
        return np.zeros(f.shape[1])
    k, theta = characteristic_feet(displacement, grid.dx)
    n = grid.n_x
    cols = np.arange(f.shape[1])
    partial = np.concatenate([np.zeros((1, f.shape[1])), np.cumsum(f, axis=0)])

    def window(m):
        # row sums of f[clip(i + m)] minus those of f
        q = np.minimum(np.abs(m), n)
        gain_right = m * f[-1] - partial[q, cols]
        gain_left = -m * f[0] - (partial[n, cols] - partial[n - q, cols])
        return np.where(m > 0, gain_right, np.where(m < 0, gain_left, 0.))

    return ((1 - theta) * window(k) + theta * window(k + 1)) * grid.dx
