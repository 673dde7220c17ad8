#  Copyright (c) 2022 Robert Lieck.
"""Exceptions raised by the solver, the stability tools and the run configuration."""

from typing import Optional


class BGKError(Exception):
    """Base class for all errors raised by bgkflow."""


class NumericalError(BGKError, ArithmeticError):
    """
    A numerical failure (Newton, root finding, non-physical state).

    :param message: human readable description
    :param cell: index of the offending cell (if known)
    :param step: index of the time step (if known)
    """

    def __init__(self, message: str, cell: Optional[int] = None, step: Optional[int] = None):
        self.message = message
        self.cell = cell
        self.step = step
        super().__init__(self._format())

    def _format(self):
        context = []
        if self.step is not None:
            context.append(f"step {self.step}")
        if self.cell is not None:
            context.append(f"cell {self.cell}")
        if context:
            return f"{self.message} ({', '.join(context)})"
        return self.message

    def at_step(self, step: int):
        """Attach the time step index and return the error (for re-raising)."""
        self.step = step
        self.args = (self._format(),)
        return self


class NonpositiveStateError(NumericalError):
    """Density or temperature is not strictly positive."""


class NewtonDivergedError(NumericalError):
    """Newton iteration did not reach the tolerance."""


class SingularJacobianError(NumericalError):
    """Newton Jacobian is (numerically) singular."""


class RankDeficientGridError(NumericalError):
    """Velocity grid has fewer than three distinct nodes."""


class DegenerateGammaError(NumericalError):
    """DIRK3 parameter sits on a pole of the closed-form tableau."""


class VacuumFormedError(NumericalError):
    """Riemann data generates vacuum."""


class NonFiniteValueError(NumericalError):
    """NaN or inf in a distribution."""


class StencilOutOfDomainError(NumericalError):
    """Characteristic foot plus stencil leaves the available halo."""


class ConfigError(BGKError, ValueError):
    """Invalid run configuration."""


class UnknownKeyError(ConfigError):
    pass


class TypeMismatchError(ConfigError):
    pass


class PairingViolationError(ConfigError):
    """Time integrator and space reconstruction orders do not match."""
