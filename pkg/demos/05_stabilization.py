"""
Looking for states trapped between the L=1 barriers.

Box levels of the continuum drop like 1/l_max^2 as the box grows. A level
that belongs to the pocket at the throat keeps its energy instead. The
table prints every level inside the well window for each box, and the
detector reports the tracks that stay flat and concentrated at the throat.
"""

from wormhole_qm.geometry import ShapeFunction
from wormhole_qm.resonance import detect_plateaus, stabilization_scan, track_levels

boxes = (8.0, 10.0, 12.0, 14.0, 16.0)

for name, sf in (("gaussian", ShapeFunction.gaussian(1.0)), ("constant", ShapeFunction.constant(1.0))):
    scan = stabilization_scan(sf, 1, boxes)
    print(f"\n{name} L=1, window ({scan.v_origin:.3f}, {scan.v_barrier_max:.3f})")
    for idx in track_levels(scan):
        E = [scan.trajectories[r][j] for r, j in enumerate(idx)]
        if scan.v_origin < E[0] < scan.v_barrier_max:
            loc = [scan.localization[r][j] for r, j in enumerate(idx)]
            print("  track " + " ".join(f"{e:7.4f}" for e in E) + "   localization "
                  + " ".join(f"{x:4.2f}" for x in loc))
    found = detect_plateaus(scan)
    for r in found:
        print(f"  plateau E = {r.energy:.6f}, spread {r.spread:.4f}, localization {r.localization:.2f}")
    if not found:
        print("  no plateau")
