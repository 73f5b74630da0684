"""
Numerical check of the reduction from the curved-space Laplacian to the 1D radial operator.

For a separable wave psi(l, theta, phi) = Phi(l) Y_LM(theta, phi) / f(l) the
Laplace-Beltrami operator of the metric dl^2 + f^2 dOmega_2 gives

    Delta psi = [psi'' + (2 (b b' + l)/f^2) psi' - L(L+1)/f^2 psi] Y_LM,

and multiplying by -f must reproduce the reduced operator

    H Phi = -Phi'' + [V_eff + L(L+1)/f^2] Phi.

:func:`radial_laplacian_apply` evaluates the left side from the quotient rule
(or from central differences of psi), :func:`reduced_apply` the right side,
and :func:`ansatz_residual` the largest pointwise mismatch on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SingularPoint
from .geometry import ShapeFunction, radial_factor
from .grid import Grid
from .potential import centrifugal, v_eff_general

__all__ = [
    "TestFunction",
    "gaussian_packet",
    "compact_bump",
    "finite_difference_function",
    "radial_laplacian_apply",
    "reduced_apply",
    "ansatz_residual",
]


@dataclass(frozen=True)
class TestFunction:
    """Radial amplitude Phi(l) with its first two derivatives."""

    __test__ = False  # not a pytest class

    phi: Callable
    dphi: Callable
    d2phi: Callable
    support: tuple[float, float] = (-np.inf, np.inf)

    def __call__(self, l):
        return self.phi(l), self.dphi(l), self.d2phi(l)

    def __add__(self, other: "TestFunction") -> "TestFunction":
        return TestFunction(
            lambda l: self.phi(l) + other.phi(l),
            lambda l: self.dphi(l) + other.dphi(l),
            lambda l: self.d2phi(l) + other.d2phi(l),
            (min(self.support[0], other.support[0]), max(self.support[1], other.support[1])),
        )

    def __rmul__(self, a: float) -> "TestFunction":
        return TestFunction(
            lambda l: a * self.phi(l),
            lambda l: a * self.dphi(l),
            lambda l: a * self.d2phi(l),
            self.support,
        )


def gaussian_packet(center: float = 0.0, width: float = 1.0, amplitude: float = 1.0) -> TestFunction:
    """Phi = A exp(-((l - c)/w)^2)."""

    def phi(l):
        u = (np.asarray(l, dtype=float) - center) / width
        return amplitude * np.exp(-u * u)

    def dphi(l):
        u = (np.asarray(l, dtype=float) - center) / width
        return amplitude * (-2.0 * u / width) * np.exp(-u * u)

    def d2phi(l):
        u = (np.asarray(l, dtype=float) - center) / width
        return amplitude * (4.0 * u * u - 2.0) / width**2 * np.exp(-u * u)

    # exp(-u^2) < 1e-12 for |u| > 5.26
    reach = 5.3 * width
    return TestFunction(phi, dphi, d2phi, (center - reach, center + reach))


def compact_bump(center: float = 0.0, radius: float = 1.0) -> TestFunction:
    """Smooth bump exp(1 - 1/(1 - u^2)) for |u| < 1, zero outside; u = (l - c)/r."""

    def _parts(l):
        u = (np.asarray(l, dtype=float) - center) / radius
        inside = np.abs(u) < 1.0
        us = np.where(inside, u, 0.0)
        w = 1.0 - us * us
        g = np.where(inside, np.exp(1.0 - 1.0 / w), 0.0)
        return us, w, g, inside

    def phi(l):
        return _parts(l)[2]

    def dphi(l):
        u, w, g, inside = _parts(l)
        return np.where(inside, g * (-2.0 * u / w**2) / radius, 0.0)

    def d2phi(l):
        u, w, g, inside = _parts(l)
        # d/du of -2u/w^2 is -(2 + 6u^2)/w^3
        p = -2.0 * u / w**2
        dp = -(2.0 + 6.0 * u * u) / w**3
        return np.where(inside, g * (p * p + dp) / radius**2, 0.0)

    return TestFunction(phi, dphi, d2phi, (center - radius, center + radius))


def finite_difference_function(phi: Callable, step: float, support=(-np.inf, np.inf)) -> TestFunction:
    """TestFunction whose derivatives are second-order central differences of ``phi``."""

    def dphi(l):
        return (phi(l + step) - phi(l - step)) / (2.0 * step)

    def d2phi(l):
        return (phi(l + step) - 2.0 * phi(l) + phi(l - step)) / step**2

    return TestFunction(phi, dphi, d2phi, support)


def _geometry(sf: ShapeFunction, l):
    geo = radial_factor(sf, l)
    if np.any(np.asarray(geo.fsq) == 0.0):
        bad = np.broadcast_to(np.asarray(l, dtype=float), np.shape(geo.fsq))[np.asarray(geo.fsq) == 0.0]
        raise SingularPoint(bad.flat[0])
    return geo


def _psi(sf: ShapeFunction, tf: TestFunction, l):
    return tf.phi(l) / radial_factor(sf, l).f


def radial_laplacian_apply(sf: ShapeFunction, tf: TestFunction, l, L: int = 0,
                           fd_step: float | None = None):
    """
    Curved-space Laplacian of psi = Phi Y_LM / f, divided by Y_LM.

    By default psi' and psi'' follow from the quotient rule with the analytic
    triples of ``tf`` and of the shape function. With ``fd_step`` they are
    instead central differences of psi itself, which makes the result
    independent of the derivative triple of ``tf``.
    """
    geo = _geometry(sf, l)
    f, fsq = geo.f, geo.fsq
    if fd_step is None:
        p, dp, d2p = tf(l)
        fp = (geo.b * geo.bp + geo.l) / f
        fpp = ((geo.bp**2 + geo.b * geo.bpp + 1.0) - fp * fp) / f
        psi = p / f
        dpsi = dp / f - p * fp / fsq
        d2psi = d2p / f - 2.0 * dp * fp / fsq - p * fpp / fsq + 2.0 * p * fp * fp / (fsq * f)
    else:
        h = fd_step
        psi = _psi(sf, tf, l)
        plus, minus = _psi(sf, tf, geo.l + h), _psi(sf, tf, geo.l - h)
        dpsi = (plus - minus) / (2.0 * h)
        d2psi = (plus - 2.0 * psi + minus) / (h * h)
    out = d2psi + 2.0 * (geo.b * geo.bp + geo.l) / fsq * dpsi - L * (L + 1) / fsq * psi
    return float(out) if np.ndim(out) == 0 else out


def reduced_apply(sf: ShapeFunction, tf: TestFunction, l, L: int = 0):
    """-Phi'' + (V_eff + L(L+1)/f^2) Phi."""
    p, _, d2p = tf(l)
    out = -d2p + (v_eff_general(sf, l) + centrifugal(sf, L, l)) * p
    return float(out) if np.ndim(out) == 0 else out


def ansatz_residual(sf: ShapeFunction, tf: TestFunction, grid: Grid, L: int = 0,
                    fd_step: float | None = None) -> float:
    """
    max_i | -f(l_i) Delta psi(l_i) - H Phi(l_i) | over the grid nodes.

    With analytic triples this is zero up to rounding. With ``fd_step`` the
    Laplacian side is differenced numerically and the residual is O(fd_step^2).
    """
    l = grid.nodes
    f = radial_factor(sf, l).f
    lhs = -f * radial_laplacian_apply(sf, tf, l, L, fd_step=fd_step)
    rhs = reduced_apply(sf, tf, l, L)
    return float(np.max(np.abs(lhs - rhs)))
