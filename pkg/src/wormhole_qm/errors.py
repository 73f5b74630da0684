"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class WormholeError(Exception):
    """Base class for all errors raised by :mod:`wormhole_qm`."""


class InvalidShape(WormholeError, ValueError):
    """A shape function is malformed or not admissible for the requested operation."""


class SingularPoint(WormholeError, ArithmeticError):
    """The areal radius f(l) vanishes at a requested point."""

    def __init__(self, l, message: str | None = None):
        self.l = float(l)
        super().__init__(message or f"b^2 + l^2 = 0 at l = {self.l!r}")


class EmptyInterval(WormholeError, ValueError):
    """A search interval has non-positive width."""


class DegenerateProfile(WormholeError, ValueError):
    """A potential profile is too small to analyse."""


class GridMismatch(WormholeError, ValueError):
    """A profile was sampled on a different grid than the one requested."""


class NonFinitePotential(WormholeError, ValueError):
    """A sampled potential contains NaN or infinite values."""


class ConvergenceFailure(WormholeError, RuntimeError):
    """An iterative eigen-solver did not converge within its iteration cap."""


class InsufficientScan(WormholeError, ValueError):
    """A stabilization scan has too few box sizes for plateau detection."""
