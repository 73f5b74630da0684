"""Uniform symmetric grids on [-l_max, l_max]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = ["Grid"]


@dataclass(frozen=True)
class Grid:
    """
    Uniform grid l_i = -l_max + i h, i = 0..n-1, with h = 2 l_max/(n-1).

    ``n`` must be odd (and at least 5) so that l = 0 is the exact node
    ``n // 2``. The nodes are exactly antisymmetric about the center.
    """

    l_max: float
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 5 and self.n % 2 == 1):
            raise ValueError(f"grid size n must be an odd integer >= 5, got {self.n!r}")
        if not (math.isfinite(self.l_max) and self.l_max > 0):
            raise ValueError(f"l_max must be positive, got {self.l_max!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "l_max", float(self.l_max))

    @classmethod
    def from_spacing(cls, l_max: float, h: float) -> "Grid":
        """Grid whose spacing is ``h`` up to rounding of the half-width to a whole number of steps."""
        m = max(2, int(round(l_max / h)))
        return cls(m * h, 2 * m + 1)

    @property
    def h(self) -> float:
        return 2.0 * self.l_max / (self.n - 1)

    @property
    def center(self) -> int:
        return self.n // 2

    @cached_property
    def nodes(self) -> np.ndarray:
        m = self.center
        l = self.l_max * (np.arange(self.n) - m) / m
        l.flags.writeable = False
        return l

    def refined(self) -> "Grid":
        """Same interval with half the spacing (2n - 1 nodes)."""
        return Grid(self.l_max, 2 * self.n - 1)
