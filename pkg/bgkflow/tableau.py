#  Copyright (c) 2022 Robert Lieck.
"""Butcher tables of the diagonally implicit Runge-Kutta schemes and coefficients of the BDF schemes."""

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

# diagonal entry of the second-order L-stable DIRK scheme
DIRK2_ALPHA = 1 - np.sqrt(2) / 2
# diagonal entry of the third-order singly diagonally implicit scheme
SDIRK3_GAMMA = 0.4358665215084590


@dataclass(frozen=True, eq=False)
class Tableau:
    """
    Butcher table of a diagonally implicit Runge-Kutta scheme.

    :param A: lower-triangular stage matrix of shape (s, s)
    :param b: weights
    :param c: nodes
    :param name: label used in outputs
    """
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        b = np.array(self.b, dtype=float)
        c = np.array(self.c, dtype=float)
        s = len(b)
        if A.shape != (s, s) or c.shape != (s,):
            raise ValueError(f"inconsistent tableau shapes A{A.shape}, b{b.shape}, c{c.shape}")
        if not np.allclose(np.triu(A, 1), 0):
            raise ValueError("stage matrix of a DIRK scheme must be lower triangular")
        if not np.allclose(A.sum(axis=1), c, rtol=1e-12, atol=1e-12):
            raise ValueError(f"row sums {A.sum(axis=1)} differ from nodes {c}")
        if not np.all(np.diag(A) > 0):
            raise ValueError(f"diagonal entries must be positive, got {np.diag(A)}")
        for name, arr in [('A', A), ('b', b), ('c', c)]:
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def stiffly_accurate(self) -> bool:
        return bool(np.allclose(self.A[-1], self.b, rtol=0, atol=1e-14))

    def order_conditions(self) -> Dict[str, float]:
        """residuals of the order conditions up to third order"""
        b, c, A = self.b, self.c, self.A
        return {
            'sum b = 1': b.sum() - 1,
            'sum b c = 1/2': b @ c - 1 / 2,
            'sum b c^2 = 1/3': b @ c ** 2 - 1 / 3,
            'sum b A c = 1/6': b @ A @ c - 1 / 6,
        }

    def stability_function(self, z) -> np.ndarray:
        """
        Stability function of the conservative semi-Lagrangian scheme on linear advection,
        ``R(z) = 1 + z sum_l b_l exp(c_l z)``.
        """
        z = np.asarray(z, dtype=complex)
        return 1 + z * (self.b * np.exp(np.multiply.outer(z, self.c))).sum(axis=-1)


@dataclass(frozen=True, eq=False)
class BdfCoeffs:
    """
    Coefficients of ``f^{n+1} = sum_k a_k f^{n+1-k} + beta dt L(f^{n+1})``.

    :param a: history coefficients ``a_1, ..., a_s``
    :param beta: implicit weight
    :param name: label used in outputs
    """
    a: np.ndarray
    beta: float
    name: str = ""
    # constant of the conservation-error bound of the corresponding scheme
    gamma: float = field(default=1.)

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        if not np.isclose(a.sum(), 1, rtol=0, atol=1e-14):
            raise ValueError(f"history coefficients must sum to one, got {a.sum()}")
        a.setflags(write=False)
        object.__setattr__(self, 'a', a)

    @property
    def s(self) -> int:
        return len(self.a)


def dirk2_tableau() -> Tableau:
    """second-order, stiffly accurate DIRK scheme with ``alpha = 1 - sqrt(2)/2``"""
    alpha = DIRK2_ALPHA
    return Tableau(A=[[alpha, 0], [1 - alpha, alpha]], b=[1 - alpha, alpha], c=[alpha, 1], name="DIRK2")


def sdirk3_tableau(gamma: float = SDIRK3_GAMMA) -> Tableau:
    """third-order singly diagonally implicit scheme with all diagonal entries equal to gamma"""
    c2 = (1 + gamma) / 2
    b1 = -3 * gamma ** 2 / 2 + 4 * gamma - 1 / 4
    b2 = 3 * gamma ** 2 / 2 - 5 * gamma + 5 / 4
    return Tableau(A=[[gamma, 0, 0], [c2 - gamma, gamma, 0], [b1, b2, gamma]], b=[b1, b2, gamma],
                   c=[gamma, c2, 1], name="SDIRK3")


BDF2 = BdfCoeffs(a=[4 / 3, -1 / 3], beta=2 / 3, name="BDF2", gamma=3 / 2)
BDF3 = BdfCoeffs(a=[18 / 11, -9 / 11, 2 / 11], beta=6 / 11, name="BDF3", gamma=146 / 11)
