"""
The potential a particle feels from the geometry alone.

A constant throat repels every partial wave. The Gaussian throat instead
digs a well of depth -1/b0^2 at l = 0 for L = 0, and for L = 1 the
centrifugal term lifts the well into a pocket enclosed by tall barriers.
"""

from wormhole_qm.geometry import ShapeFunction
from wormhole_qm.grid import Grid
from wormhole_qm.potential import barrier_analysis, total_potential, v_eff_gaussian

grid = Grid(12.0, 6001)

for b0 in (0.5, 1.0, 2.0, 4.0):
    print(f"b0 = {b0:<4}  V_eff(0) = {v_eff_gaussian(b0, 0.0):+.6f}")

print()
for name, sf in (("constant", ShapeFunction.constant(1.0)), ("gaussian", ShapeFunction.gaussian(1.0))):
    for L in (0, 1, 2):
        rep = barrier_analysis(total_potential(sf, L, grid))
        print(f"{name:8s} L={L}: V(0) = {rep.v_origin:+.4f}, max {rep.v_barrier_max:.4f} "
              f"at |l| = {rep.l_barrier:.3f}, tail {rep.v_asymptotic:.2e} -> {rep.classification}")

prof = total_potential(ShapeFunction.gaussian(1.0), 0, Grid(3.0, 13))
print("\nGaussian L=0 profile on a coarse grid:")
for l, v in zip(prof.grid.nodes, prof.values):
    print(f"  {l:+5.1f}  {v:+.6f}")
