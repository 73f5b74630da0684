"""
Checking that the 1D radial equation is the full Laplacian in disguise.

Take psi = Phi Y_LM / f, apply the curved-space Laplacian, multiply by -f,
and compare with -Phi'' + (V_eff + L(L+1)/f^2) Phi. With exact derivatives
the two agree to rounding; with finite differences the mismatch falls by
four each time the step halves.
"""

from wormhole_qm.geometry import ShapeFunction, lorentzian_throat
from wormhole_qm.grid import Grid
from wormhole_qm.operator import ansatz_residual, compact_bump, gaussian_packet

grid = Grid(4.0, 801)
probes = {"packet": gaussian_packet(0.3, 1.0), "bump": compact_bump(0.2, 1.5)}

for sf in (ShapeFunction.constant(1.0), ShapeFunction.gaussian(1.0), lorentzian_throat(1.0)):
    for label, tf in probes.items():
        exact = max(ansatz_residual(sf, tf, grid, L) for L in (0, 1, 2))
        steps = [2e-2, 1e-2, 5e-3]
        fd = [ansatz_residual(sf, tf, grid, fd_step=h) for h in steps]
        print(f"{sf.descriptor:24s} {label:6s} exact {exact:.1e}   FD {fd[0]:.2e} {fd[1]:.2e} {fd[2]:.2e}"
              f"   ratios {fd[0] / fd[1]:.3f} {fd[1] / fd[2]:.3f}")
