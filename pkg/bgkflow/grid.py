#  Copyright (c) 2022 Robert Lieck.
"""
Phase-space grid, distribution arrays and their moments.

A distribution is stored as a plain numpy array of shape ``(n_x, n_v + 1)``: rows are spatial cells, columns are
velocity nodes. Moments are the quadrature sums against ``phi(v) = (1, v, v**2 / 2)``.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from bgkflow.errors import NonFiniteValueError


class BoundaryCondition(str, Enum):
    PERIODIC = "periodic"
    FREE_FLOW = "free-flow"


@dataclass(frozen=True)
class PhaseGrid:
    """
    Uniform 1D-1V grid with cell-centred positions ``x_i = x_min + (i + 1/2) dx`` (``i = 0, ..., n_x - 1``) and
    velocity nodes ``v_j = v_min + j dv`` (``j = 0, ..., n_v``).

    :param x_min: left end of the spatial domain
    :param x_max: right end of the spatial domain
    :param n_x: number of spatial cells
    :param v_min: smallest velocity node
    :param v_max: largest velocity node
    :param n_v: number of velocity intervals (there are ``n_v + 1`` nodes)
    :param bc: boundary condition in x
    """
    x_min: float
    x_max: float
    n_x: int
    v_min: float
    v_max: float
    n_v: int
    bc: BoundaryCondition = BoundaryCondition.PERIODIC

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ValueError(f"Empty spatial domain [{self.x_min}, {self.x_max}]")
        if not self.v_max > self.v_min:
            raise ValueError(f"Empty velocity domain [{self.v_min}, {self.v_max}]")
        if int(self.n_x) != self.n_x or self.n_x < 1:
            raise ValueError(f"n_x must be a positive integer, got {self.n_x}")
        if int(self.n_v) != self.n_v or self.n_v < 2:
            raise ValueError(f"n_v must be an integer >= 2, got {self.n_v}")
        # accept plain strings for the boundary condition
        object.__setattr__(self, 'bc', BoundaryCondition(self.bc))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_x

    @property
    def dv(self) -> float:
        return (self.v_max - self.v_min) / self.n_v

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def x(self) -> np.ndarray:
        """cell centres"""
        return self.x_min + (np.arange(self.n_x) + 0.5) * self.dx

    @property
    def v(self) -> np.ndarray:
        """velocity nodes; mirror-symmetric to the last bit when the velocity domain is symmetric"""
        if self.v_min == -self.v_max:
            return (np.arange(self.n_v + 1) - self.n_v / 2) * self.dv
        return self.v_min + np.arange(self.n_v + 1) * self.dv

    @property
    def v_abs_max(self) -> float:
        return max(abs(self.v_min), abs(self.v_max))

    @property
    def phi(self) -> np.ndarray:
        """collision invariants (1, v, v^2/2) as an array of shape (3, n_v + 1)"""
        v = self.v
        return np.stack([np.ones_like(v), v, v ** 2 / 2])

    @property
    def shape(self):
        return self.n_x, self.n_v + 1

    @property
    def periodic(self) -> bool:
        return self.bc == BoundaryCondition.PERIODIC

    def with_resolution(self, n_x: int = None, n_v: int = None) -> "PhaseGrid":
        """Same domain and boundary condition with a different resolution."""
        return PhaseGrid(x_min=self.x_min, x_max=self.x_max, n_x=self.n_x if n_x is None else n_x,
                         v_min=self.v_min, v_max=self.v_max, n_v=self.n_v if n_v is None else n_v,
                         bc=self.bc)


@dataclass(frozen=True)
class CollisionParams:
    """
    :param kappa: Knudsen number (relaxation time) of the BGK operator
    """
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class MomentField:
    """
    Per-cell conserved moments (density, momentum, energy) and the derived velocity, temperature and pressure.
    Derived quantities are zero in cells that are not valid (non-positive density or temperature); use
    :attr:`valid` to mask them.
    """
    rho: np.ndarray
    momentum: np.ndarray
    energy: np.ndarray

    @classmethod
    def from_array(cls, m: np.ndarray) -> "MomentField":
        """build from an array of shape (n_x, 3)"""
        m = np.asarray(m, dtype=float)
        assert m.ndim == 2 and m.shape[1] == 3, f"moment array must have shape (n_x, 3), got {m.shape}"
        return cls(rho=m[:, 0], momentum=m[:, 1], energy=m[:, 2])

    @classmethod
    def from_primitive(cls, rho, u, T) -> "MomentField":
        rho, u, T = np.broadcast_arrays(*[np.atleast_1d(np.asarray(a, dtype=float)) for a in (rho, u, T)])
        return cls(rho=rho, momentum=rho * u, energy=rho * (T + u ** 2) / 2)

    def as_array(self) -> np.ndarray:
        """moments as an array of shape (n_x, 3)"""
        return np.stack([self.rho, self.momentum, self.energy], axis=-1)

    @property
    def velocity(self) -> np.ndarray:
        with np.errstate(divide='ignore', invalid='ignore'):
            u = np.where(self.rho > 0, self.momentum / self.rho, 0.)
        return u

    @property
    def temperature(self) -> np.ndarray:
        with np.errstate(divide='ignore', invalid='ignore'):
            T = np.where(self.rho > 0, 2 * self.energy / self.rho - self.velocity ** 2, 0.)
        return T

    @property
    def pressure(self) -> np.ndarray:
        return np.where(self.valid, self.rho * self.temperature, 0.)

    @property
    def valid(self) -> np.ndarray:
        """cells with positive density and temperature"""
        return (self.rho > 0) & (self.temperature > 0)

    def totals(self, dx: float) -> np.ndarray:
        """domain totals of (rho, rho u, E)"""
        return self.as_array().sum(axis=0) * dx


def check_distribution(f: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """
    Check shape and finiteness of a distribution.

    :param f: distribution values of shape ``grid.shape``
    :param grid: the phase-space grid
    :return: ``f`` as float array
    """
    f = np.asarray(f, dtype=float)
    if f.shape != grid.shape:
        raise ValueError(f"distribution has shape {f.shape} but grid has shape {grid.shape}")
    if not np.all(np.isfinite(f)):
        bad = np.argwhere(~np.isfinite(f))[0]
        raise NonFiniteValueError(f"non-finite distribution value at velocity node {bad[1]}", cell=int(bad[0]))
    return f


def moment_array(f: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """
    Discrete moments ``sum_j f_ij phi(v_j) dv`` as an array of shape (n_x, 3).

    The reduction over j uses numpy's fixed-order summation so results do not depend on threading.
    """
    return (f[:, :, None] * grid.phi.T[None, :, :]).sum(axis=1) * grid.dv


def compute_moments(f: np.ndarray, grid: PhaseGrid) -> MomentField:
    """
    Compute the moment field of a distribution.

    :param f: distribution of shape ``grid.shape``
    :param grid: the phase-space grid
    :return: per-cell moments
    """
    f = check_distribution(f, grid)
    return MomentField.from_array(moment_array(f, grid))


def moment_totals(f: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """domain totals of the three moments (sum over cells times dx)"""
    return moment_array(f, grid).sum(axis=0) * grid.dx


def boundary_kinetic_flux(f: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """
    First-order estimate of the net moment flux entering the domain through the two boundaries with constant
    extrapolation: ``sum_j v_j (f_0j - f_{-1}j) phi_j dv``. Exact for the linear shift only while the boundary cells
    stay uniform; see :func:`bgkflow.reconstruction.shift_boundary_inflow` for the exact one. Zero on periodic grids.
    """
    if grid.periodic:
        return np.zeros(3)
    diff = grid.v * (f[0] - f[-1])
    return (grid.phi * diff[None, :]).sum(axis=1) * grid.dv
