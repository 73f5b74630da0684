"""
Does the Gaussian well at the throat hold a bound state?

The L=0 well reaches -1 but is flanked by barriers near 1.96, and its
integral is positive. The lowest box level sits above zero and settles as
the grid is refined, so no state lies below the continuum threshold.
"""

import numpy as np

from wormhole_qm.geometry import ShapeFunction
from wormhole_qm.grid import Grid
from wormhole_qm.potential import total_potential
from wormhole_qm.solver import bound_states, convergence_check, lowest_states

gauss = ShapeFunction.gaussian(1.0)

# oracles first: the solver must reproduce textbook spectra
ho = lowest_states(lambda l: l * l, 0, Grid(8.0, 4001), 5, vectors=False)
print("harmonic oscillator:", np.round(ho.energies, 6))

grid = Grid(12.0, 6001)
prof = total_potential(gauss, 0, grid)
print(f"integral of V_eff over the box: {np.sum(prof.values) * grid.h:+.4f}")

levels = bound_states(gauss, 0, grid)
print(f"bound states below {levels.v_asymptotic:.2e}: {len(levels)}")
print("lowest box levels:", np.round(levels.metadata["lowest"][:5], 6))

for n in (1501, 3001, 6001):
    rep = convergence_check(gauss, 0, 12.0, n)
    print(f"n = {n:5d}: E = {rep.E_coarse:.10f} -> {rep.E_fine:.10f}, Richardson {rep.richardson_estimate:.10f}")

for l_max in (12.0, 24.0, 48.0):
    E = lowest_states(gauss, 0, Grid.from_spacing(l_max, 0.004), 1, vectors=False).energies[0]
    print(f"box half-width {l_max:4.0f}: lowest level {E:.6f}  (l_max^2 E = {l_max**2 * E:.3f})")
