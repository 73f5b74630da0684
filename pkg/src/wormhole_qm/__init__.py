"""Quantum mechanics on a wormhole spatial slice."""

from .geometry import ShapeFunction, eval_shape, lorentzian_throat, radial_factor, stretch_extrema
from .grid import Grid
from .potential import UNITS, barrier_analysis, total_potential, v_eff_gaussian, v_eff_general
from .resonance import detect_plateaus, stabilization_scan
from .solver import bound_states, convergence_check, lowest_states

__all__ = [
    "ShapeFunction",
    "eval_shape",
    "lorentzian_throat",
    "radial_factor",
    "stretch_extrema",
    "Grid",
    "UNITS",
    "barrier_analysis",
    "total_potential",
    "v_eff_gaussian",
    "v_eff_general",
    "detect_plateaus",
    "stabilization_scan",
    "bound_states",
    "convergence_check",
    "lowest_states",
]
