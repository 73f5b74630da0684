"""Self-contained identity and solver checks, run by ``wormhole-qm verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidShape
from .geometry import ShapeFunction, lorentzian_throat
from .grid import Grid
from .operator import ansatz_residual, compact_bump, gaussian_packet
from .potential import v_eff_constant, v_eff_curvature_oracle, v_eff_gaussian, v_eff_general
from .solver import lowest_states


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool


def _check(name, value, tol) -> CheckResult:
    return CheckResult(name, float(value), float(tol), bool(value < tol))


def identity_shapes():
    out = []
    for b0 in (0.5, 1.0, 2.0):
        out += [ShapeFunction.constant(b0), ShapeFunction.gaussian(b0)]
    out.append(lorentzian_throat(1.0))
    return out


def test_functions():
    return [gaussian_packet(0.0, 1.0), gaussian_packet(0.3, 1.0), gaussian_packet(-0.8, 0.6),
            gaussian_packet(1.2, 1.5, 0.7), compact_bump(0.2, 1.5)]


def run_all() -> list[CheckResult]:
    results = []
    for sf in identity_shapes():
        l = np.linspace(-5.0 * sf.b0, 5.0 * sf.b0, 10000)
        d = np.max(np.abs(v_eff_general(sf, l) - v_eff_curvature_oracle(sf, l)))
        results.append(_check(f"veff_vs_curvature[{sf.descriptor}]", d, 1e-10))

    for b0 in (0.5, 1.0, 2.0):
        l = np.linspace(-5.0 * b0, 5.0 * b0, 10001)
        g = v_eff_general(ShapeFunction.gaussian(b0), l)
        rel = np.max(np.abs(v_eff_gaussian(b0, l) - g) / np.abs(g))
        results.append(_check(f"gaussian_closed_form_rel[b0={b0:g}]", rel, 1e-12))

    for b0 in (0.5, 1.0, 2.0, 4.0):
        results.append(_check(f"depth[b0={b0:g}]", abs(v_eff_gaussian(b0, 0.0) + 1.0 / b0**2), 1e-12))

    grid = Grid(4.0, 801)
    for sf in (ShapeFunction.constant(1.0), ShapeFunction.gaussian(1.0), lorentzian_throat(1.0)):
        worst = max(ansatz_residual(sf, tf, grid) for tf in test_functions())
        results.append(_check(f"ansatz_residual[{sf.descriptor}]", worst, 1e-10))

    l = np.linspace(-50.0, 50.0, 20001)
    worst = min(float(np.min(v_eff_constant(b0, l))) for b0 in (0.5, 1.0, 2.0))
    results.append(CheckResult("constant_throat_min_veff", worst, 0.0, worst > 0.0))

    box = lowest_states(lambda x: np.zeros_like(x), 0, Grid(1.0, 2001), 5, vectors=False)
    exact = [((j + 1) * math.pi / 2.0) ** 2 for j in range(5)]
    results.append(_check("selfcheck_box_rel", max(abs(e - x) / x for e, x in zip(box.energies, exact)), 1e-3))
    ho = lowest_states(lambda x: x * x, 0, Grid(8.0, 4001), 5, vectors=False)
    results.append(_check("selfcheck_harmonic_rel",
                          max(abs(e - (2 * j + 1)) / (2 * j + 1) for j, e in enumerate(ho.energies)), 1e-4))

    try:
        ShapeFunction.custom(lambda x: np.exp(-x * x), lambda x: -x * np.exp(-x * x),
                             lambda x: np.zeros_like(x), name="inconsistent")
        rejected = False
    except InvalidShape:
        rejected = True
    results.append(CheckResult("inconsistent_custom_rejected", 0.0 if rejected else 1.0, 0.5, rejected))
    return results
