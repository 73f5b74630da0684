"""
Wormhole spatial geometry.

The constant-time slice of the wormhole is described by the line element

    ds^2 = dl^2 + f(l)^2 dOmega_2,      f(l)^2 = b(l)^2 + l^2,

where ``l`` is the proper radial distance (running over the whole real line
through the throat at ``l = 0``) and ``b(l)`` is the throat shape function.
This module provides shape functions together with their first and second
derivatives, the areal radius ``f``, the Lamé coefficients of the
coordinates ``(l, theta, phi)`` and a search for the stationary points of
``f`` (where the sphere radius is locally stretched or squeezed).

All functions accept scalars or numpy arrays for ``l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import bisect

from .errors import EmptyInterval, InvalidShape

__all__ = [
    "ShapeFunction",
    "GeometrySample",
    "LameCoefficients",
    "Extremum",
    "eval_shape",
    "radial_factor",
    "lame_coefficients",
    "stretch_extrema",
    "lorentzian_throat",
]

ZERO = "zero"
CONSTANT = "constant"
GAUSSIAN = "gaussian"
CUSTOM = "custom"

# Sample points (in units of the length scale) used to validate custom triples.
_CHECK_POINTS = np.linspace(-4.0, 4.0, 17)
_FD_STEP = 1e-4
_TRIPLE_RTOL = 1e-6


@dataclass(frozen=True)
class ShapeFunction:
    """
    Throat profile b(l) with its first and second derivatives.

    Use the constructors :meth:`zero`, :meth:`constant`, :meth:`gaussian`
    and :meth:`custom` rather than instantiating directly.

    Parameters
    ----------
    kind : str
        One of ``"zero"``, ``"constant"``, ``"gaussian"``, ``"custom"``.
    b0 : float
        Throat radius b(0) for the built-in profiles; a length scale for
        custom ones (used for default search intervals and validation).
    """

    kind: str
    b0: float = 0.0
    b: Callable | None = field(default=None, compare=False, repr=False)
    db: Callable | None = field(default=None, compare=False, repr=False)
    d2b: Callable | None = field(default=None, compare=False, repr=False)
    name: str = ""

    def __post_init__(self):
        if self.kind not in (ZERO, CONSTANT, GAUSSIAN, CUSTOM):
            raise InvalidShape(f"unknown shape kind {self.kind!r}")
        if self.kind in (CONSTANT, GAUSSIAN):
            if not (math.isfinite(self.b0) and self.b0 > 0):
                raise InvalidShape(f"{self.kind} shape requires b0 > 0, got {self.b0!r}")
        if self.kind == CUSTOM and not (callable(self.b) and callable(self.db) and callable(self.d2b)):
            raise InvalidShape("custom shape requires callables b, db and d2b")

    @classmethod
    def zero(cls) -> "ShapeFunction":
        """Flat space, b = 0."""
        return cls(ZERO, 0.0)

    @classmethod
    def constant(cls, b0: float) -> "ShapeFunction":
        """Constant throat radius, b = b0."""
        return cls(CONSTANT, float(b0))

    @classmethod
    def gaussian(cls, b0: float) -> "ShapeFunction":
        """Gaussian throat, b = b0 exp(-l^2/b0^2)."""
        return cls(GAUSSIAN, float(b0))

    @classmethod
    def custom(cls, b, db, d2b, *, scale: float = 1.0, name: str = "custom",
               check_points=None) -> "ShapeFunction":
        """
        User supplied profile given as the analytic triple (b, b', b'').

        The triple is checked against central finite differences at
        ``check_points`` (default: 17 points on [-4, 4] times ``scale``).
        Inconsistent derivatives, or negative b, raise :class:`InvalidShape`.
        """
        if not (math.isfinite(scale) and scale > 0):
            raise InvalidShape(f"custom shape requires a positive length scale, got {scale!r}")
        sf = cls(CUSTOM, float(scale), b, db, d2b, name)
        pts = _CHECK_POINTS * scale if check_points is None else np.asarray(check_points, float)
        _validate_triple(sf, pts)
        return sf

    @property
    def descriptor(self) -> str:
        """Short textual tag, e.g. ``gaussian(b0=1)``."""
        if self.kind == ZERO:
            return "zero"
        if self.kind == CUSTOM:
            return f"{self.name}(scale={self.b0:g})"
        return f"{self.kind}(b0={self.b0:g})"

    @property
    def is_even(self) -> bool:
        return self.kind != CUSTOM

    def __call__(self, l):
        return eval_shape(self, l)


def _validate_triple(sf: ShapeFunction, pts: np.ndarray) -> None:
    h = _FD_STEP * sf.b0
    for l in pts:
        l = float(l)
        b, bp, bpp = (float(v) for v in eval_shape(sf, l))
        if not all(math.isfinite(v) for v in (b, bp, bpp)):
            raise InvalidShape(f"custom shape is not finite at l = {l:g}")
        if b < 0:
            raise InvalidShape(f"custom shape has b < 0 at l = {l:g}")
        bm, bpl = float(sf.b(l - h)), float(sf.b(l + h))
        fd1 = (bpl - bm) / (2 * h)
        fd2 = (bpl - 2 * b + bm) / h**2
        tol1 = _TRIPLE_RTOL * max(abs(bp), abs(b) / sf.b0, 1.0 / sf.b0)
        tol2 = _TRIPLE_RTOL * max(abs(bpp), abs(b) / sf.b0**2, 1.0 / sf.b0**2)
        if abs(fd1 - bp) > tol1:
            raise InvalidShape(f"db inconsistent with b at l = {l:g}: {bp!r} vs FD {fd1!r}")
        if abs(fd2 - bpp) > tol2:
            raise InvalidShape(f"d2b inconsistent with b at l = {l:g}: {bpp!r} vs FD {fd2!r}")


def eval_shape(sf: ShapeFunction, l):
    """
    Evaluate the shape triple at ``l``.

    Returns
    -------
    (b, b', b'') : tuple of float or ndarray
        Same shape as ``l``.
    """
    l = np.asarray(l, dtype=float)
    if sf.kind == ZERO:
        z = np.zeros_like(l)
        return _out(z), _out(z), _out(z)
    if sf.kind == CONSTANT:
        z = np.zeros_like(l)
        return _out(np.full_like(l, sf.b0)), _out(z), _out(z.copy())
    if sf.kind == GAUSSIAN:
        b0sq = sf.b0 * sf.b0
        b = sf.b0 * np.exp(-l * l / b0sq)
        bp = (-2.0 * l / b0sq) * b
        bpp = (-2.0 / b0sq + 4.0 * l * l / (b0sq * b0sq)) * b
        return _out(b), _out(bp), _out(bpp)
    b = np.asarray(sf.b(l), dtype=float) * np.ones_like(l)
    bp = np.asarray(sf.db(l), dtype=float) * np.ones_like(l)
    bpp = np.asarray(sf.d2b(l), dtype=float) * np.ones_like(l)
    return _out(b), _out(bp), _out(bpp)


def _out(a: np.ndarray):
    return float(a) if a.ndim == 0 else a


class GeometrySample(NamedTuple):
    """Shape triple and areal radius at a radial position."""

    l: float | np.ndarray
    b: float | np.ndarray
    bp: float | np.ndarray
    bpp: float | np.ndarray
    f: float | np.ndarray
    fsq: float | np.ndarray


def radial_factor(sf: ShapeFunction, l) -> GeometrySample:
    """Areal radius f = sqrt(b^2 + l^2) of the 2-sphere at ``l``."""
    b, bp, bpp = eval_shape(sf, l)
    l = _out(np.asarray(l, dtype=float))
    fsq = b * b + l * l
    return GeometrySample(l, b, bp, bpp, np.sqrt(fsq), fsq)


class LameCoefficients(NamedTuple):
    h_l: float | np.ndarray
    h_theta: float | np.ndarray
    h_phi: float | np.ndarray
    g: float | np.ndarray


def lame_coefficients(sf: ShapeFunction, l, theta) -> LameCoefficients:
    """
    Scale factors of the coordinates (l, theta, phi) and the metric determinant.

    h_l = 1, h_theta = f, h_phi = f sin(theta), g = f^4 sin^2(theta).
    At the poles h_phi and g vanish (coordinate degeneracy).
    """
    geo = radial_factor(sf, l)
    theta = np.asarray(theta, dtype=float)
    # sin(pi) is 1.2e-16 in floating point; the poles are exact zeros
    s = np.where((theta == 0.0) | (theta == math.pi), 0.0, np.sin(theta))
    h_theta = geo.f
    h_phi = _out(np.asarray(geo.f * s))
    g = _out(np.asarray(geo.fsq * geo.fsq * s * s))
    h_l = _out(np.ones(np.broadcast(np.asarray(l), s).shape))
    return LameCoefficients(h_l, h_theta, h_phi, g)


class Extremum(NamedTuple):
    l: float
    f: float
    kind: str  # "max" or "min"


def _dfsq(sf: ShapeFunction, l):
    b, bp, _ = eval_shape(sf, l)
    return 2.0 * (b * bp + l)


def stretch_extrema(sf: ShapeFunction, search_interval=None, n: int = 20001,
                    xtol: float = 1e-14) -> list[Extremum]:
    """
    Stationary points of the areal radius f(l) on ``search_interval``.

    Sign changes of d(f^2)/dl = 2(b b' + l) are located on a uniform grid of
    ``n`` nodes and refined by bisection; each point is classified as a
    local ``max`` or ``min`` from the sign of the second difference of f^2.
    The default interval is [-4 b0, 4 b0].

    Raises
    ------
    EmptyInterval
        If the interval has non-positive width.
    """
    if search_interval is None:
        scale = sf.b0 if sf.b0 > 0 else 1.0
        search_interval = (-4.0 * scale, 4.0 * scale)
    lo, hi = (float(v) for v in search_interval)
    if not hi > lo:
        raise EmptyInterval(f"search interval [{lo}, {hi}] has non-positive width")

    grid = np.linspace(lo, hi, n)
    if n % 2 == 1 and lo == -hi:
        grid[n // 2] = 0.0
    d = _dfsq(sf, grid)
    roots = [float(grid[i]) for i in np.flatnonzero(d == 0.0)]
    for i in np.flatnonzero(d[:-1] * d[1:] < 0):
        roots.append(bisect(lambda x: float(_dfsq(sf, x)), grid[i], grid[i + 1], xtol=xtol))

    step = (hi - lo) / (n - 1)
    out = []
    for r in sorted(roots):
        fsq = lambda x: float(radial_factor(sf, x).fsq)
        curv = fsq(r + step) - 2.0 * fsq(r) + fsq(r - step)
        if curv == 0.0:
            continue
        out.append(Extremum(r, math.sqrt(fsq(r)), "min" if curv > 0 else "max"))
    return out


def lorentzian_throat(b0: float) -> ShapeFunction:
    """Custom profile b(l) = b0 / (1 + l^2/b0^2), with its analytic derivatives."""
    b0 = float(b0)

    def b(l):
        return b0 / (1.0 + (l / b0) ** 2)

    def db(l):
        return -(2.0 * l / b0) / (1.0 + (l / b0) ** 2) ** 2

    def d2b(l):
        u = 1.0 + (l / b0) ** 2
        return -(2.0 / b0) / u**2 + (8.0 * l * l / b0**3) / u**3

    return ShapeFunction.custom(b, db, d2b, scale=b0, name="lorentzian")
