"""
Effective potential of the reduced radial problem.

With psi = Phi / f the stationary equation on the wormhole slice becomes a
one-dimensional problem on the whole line,

    -Phi'' + [V_eff(l) + L(L+1)/f(l)^2] Phi = E Phi,

in units where hbar^2/(2m) = 1 (lengths in units of b0, energies in 1/b0^2).
The geometric part V_eff depends only on the shape function:

    V_eff = (b^3 b'' + b^2 + b'^2 l^2 + b b'' l^2 - 2 b b' l) / (b^2 + l^2)^2,

which is algebraically the same as f''/f. Both forms are provided; the
second is an independent evaluation path used as a check on the first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProfile, InvalidShape, SingularPoint
from .geometry import ShapeFunction, eval_shape, radial_factor
from .grid import Grid

__all__ = [
    "UNITS",
    "PotentialProfile",
    "BarrierReport",
    "v_eff_general",
    "v_eff_curvature_oracle",
    "v_eff_constant",
    "v_eff_gaussian",
    "centrifugal",
    "total_potential",
    "profile_from_function",
    "asymptotic_level",
    "barrier_analysis",
]

UNITS = "hbar2_over_2m=1"

# Fraction of the grid, at each end, averaged to estimate the continuum threshold.
EDGE_FRACTION = 0.05


def _scalar_or_array(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


def _check_nonsingular(fsq, l):
    fsq = np.asarray(fsq)
    bad = fsq == 0.0
    if np.any(bad):
        where = np.broadcast_to(np.asarray(l, dtype=float), fsq.shape)[bad]
        raise SingularPoint(where.flat[0])


def v_eff_general(sf: ShapeFunction, l):
    """
    Geometric effective potential for an arbitrary shape triple.

    Raises
    ------
    SingularPoint
        Where b^2 + l^2 = 0 (only possible for the flat profile at l = 0).
    """
    b, bp, bpp = eval_shape(sf, l)
    l = np.asarray(l, dtype=float)
    fsq = b * b + l * l
    _check_nonsingular(fsq, l)
    num = b**3 * bpp + b * b + bp * bp * l * l + b * bpp * l * l - 2.0 * b * bp * l
    return _scalar_or_array(num / (fsq * fsq))


def v_eff_curvature_oracle(sf: ShapeFunction, l):
    """f''/f computed from f = sqrt(b^2 + l^2) by the chain rule."""
    geo = radial_factor(sf, l)
    _check_nonsingular(geo.fsq, l)
    f = geo.f
    s = geo.b * geo.bp + geo.l  # f f'
    fpp = ((geo.bp**2 + geo.b * geo.bpp + 1.0) - s * s / geo.fsq) / f
    return _scalar_or_array(fpp / f)


def v_eff_constant(b0: float, l):
    """Effective potential b0^2/(b0^2 + l^2)^2 of a constant throat; positive everywhere."""
    if not b0 > 0:
        raise InvalidShape(f"b0 must be positive, got {b0!r}")
    l = np.asarray(l, dtype=float)
    b0sq = b0 * b0
    return _scalar_or_array(b0sq / (b0sq + l * l) ** 2)


def v_eff_gaussian(b0: float, l):
    """
    Closed form of the effective potential for b = b0 exp(-l^2/b0^2).

    Its value at the throat is -1/b0^2.
    """
    if not b0 > 0:
        raise InvalidShape(f"b0 must be positive, got {b0!r}")
    l = np.asarray(l, dtype=float)
    b0sq = b0 * b0
    l2 = l * l
    e2 = np.exp(-2.0 * l2 / b0sq)
    e4 = np.exp(-4.0 * l2 / b0sq)
    bracket = (-2.0 * b0sq * e4 + b0sq * e2 + 2.0 * l2 * e2 + 4.0 * l2 * e4
               + 8.0 * l2 * l2 / b0sq * e2)
    return _scalar_or_array(bracket / (b0sq * e2 + l2) ** 2)


def centrifugal(sf: ShapeFunction, L: int, l):
    """Angular-momentum barrier L(L+1)/(b^2 + l^2)."""
    if L < 0:
        raise ValueError(f"L must be non-negative, got {L!r}")
    geo = radial_factor(sf, l)
    _check_nonsingular(geo.fsq, l)
    return _scalar_or_array(L * (L + 1) / geo.fsq)


@dataclass(frozen=True, eq=False)
class PotentialProfile:
    """Total radial potential sampled on a grid."""

    grid: Grid
    values: np.ndarray
    L: int
    shape_descriptor: str
    includes_centrifugal: bool = True
    v_eff: np.ndarray | None = None
    v_centrifugal: np.ndarray | None = None

    def __post_init__(self):
        if len(self.values) != self.grid.n:
            raise ValueError(f"profile has {len(self.values)} values for a grid of {self.grid.n}")


def total_potential(sf: ShapeFunction, L: int, grid: Grid) -> PotentialProfile:
    """V_eff + L(L+1)/f^2 on every grid node."""
    l = grid.nodes
    veff = v_eff_general(sf, l)
    vcen = centrifugal(sf, L, l)
    return PotentialProfile(grid, veff + vcen, int(L), sf.descriptor, True, veff, vcen)


def profile_from_function(potential, grid: Grid, L: int = 0, descriptor: str = "external") -> PotentialProfile:
    """Wrap an arbitrary vectorised potential V(l), e.g. l**2, as a profile."""
    values = np.asarray(potential(grid.nodes), dtype=float) * np.ones(grid.n)
    return PotentialProfile(grid, values, int(L), descriptor, False)


def asymptotic_level(profile: PotentialProfile) -> float:
    """Mean potential over the outermost 5 % of nodes at both ends."""
    m = max(1, int(round(EDGE_FRACTION * profile.grid.n / 2)))
    edge = np.concatenate([profile.values[:m], profile.values[-m:]])
    return float(edge.mean())


@dataclass(frozen=True)
class BarrierReport:
    v_origin: float
    v_barrier_max: float
    l_barrier: float
    v_asymptotic: float
    classification: str


def barrier_analysis(profile: PotentialProfile) -> BarrierReport:
    """
    Well and barrier structure of a symmetric profile.

    ``classification`` is one of

    - ``monotone_repulsive``: V never increases moving outward from l = 0;
    - ``open_well``: V rises somewhere but never above its value at l = 0;
    - ``confining_barrier``: a barrier higher than V(0) separates the throat
      from an asymptotic region lying below V(0), so states near V(0) can only
      leak out by tunnelling;
    - ``well_below_threshold``: a barrier exists and V(0) lies below the
      asymptotic level.

    The barrier maximum is the largest grid value on l > 0 (no interpolation).
    """
    grid = profile.grid
    if grid.n < 5:
        raise DegenerateProfile(f"need at least 5 nodes, got {grid.n}")
    c = grid.center
    v = profile.values
    v0 = float(v[c])
    right = v[c + 1:]
    i = int(np.argmax(right))
    vmax = float(right[i])
    lbar = float(grid.nodes[c + 1 + i])
    vasym = asymptotic_level(profile)

    outward = np.diff(v[c:])
    if np.all(outward <= 0.0) and np.any(outward < 0.0):
        kind = "monotone_repulsive"
    elif vmax <= v0:
        kind = "open_well"
    elif vasym < v0:
        kind = "confining_barrier"
    else:
        kind = "well_below_threshold"
    return BarrierReport(v0, vmax, lbar, vasym, kind)
