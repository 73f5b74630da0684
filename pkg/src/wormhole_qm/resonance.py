"""
Stabilization-method search for quasi-bound states near the throat.

The radial problem is solved in a sequence of boxes [-l_max, l_max] of
growing size at fixed grid spacing. Continuum levels of a box scale like
1/l_max^2, while a level belonging to a state trapped behind the barrier
keeps its energy. Levels are followed from box to box by nearest-energy
matching and a track whose relative spread stays below a tolerance, that
lies inside the well window (V(0), V_barrier_max) and whose eigenvectors
are concentrated inside the barrier is reported as a resonance.

Only plateau energies and spreads are estimated, not widths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientScan
from .grid import Grid
from .potential import barrier_analysis
from .solver import CLUSTER_RTOL, discretize, eigen_lowest, eigenvector, make_profile, sturm_count

__all__ = [
    "StabilizationScan",
    "ResonanceEstimate",
    "stabilization_scan",
    "track_levels",
    "detect_plateaus",
]

DEFAULT_SPACING = 0.004
MIN_BOXES = 4


@dataclass(frozen=True, eq=False)
class StabilizationScan:
    """
    Eigenvalues above the continuum threshold for each box size.

    ``localization[i][j]`` is the probability of level ``j`` of box ``i``
    inside the barrier radius, divided by the value l_barrier/l_max a
    uniformly spread state would have.
    """

    box_sizes: np.ndarray
    trajectories: list
    localization: list
    L: int
    shape_descriptor: str
    spacing: float
    v_origin: float
    v_barrier_max: float
    l_barrier: float
    thresholds: np.ndarray


@dataclass(frozen=True)
class ResonanceEstimate:
    energy: float
    spread: float
    plateau_range: tuple[float, float]
    inside_well: bool
    localization: float
    track: tuple[float, ...]


def stabilization_scan(source, L: int, box_sizes, spacing: float = DEFAULT_SPACING,
                       k: int = 40) -> StabilizationScan:
    """
    Solve the problem in every box of ``box_sizes`` at constant ``spacing``.

    For each box the ``k`` lowest levels above that box's continuum threshold
    are kept, together with their localization inside the barrier.
    """
    boxes = np.array(sorted(float(b) for b in box_sizes))
    if len(boxes) and boxes[0] <= 0:
        raise ValueError("box sizes must be positive")
    if len(np.unique(boxes)) != len(boxes):
        raise ValueError("box sizes must be distinct")

    rows, locs, thresholds = [], [], []
    report = None
    descriptor = ""
    for lm in boxes:
        grid = Grid.from_spacing(lm, spacing)
        profile = make_profile(source, L, grid)
        descriptor = profile.shape_descriptor
        rep = barrier_analysis(profile)
        if report is None:
            report = rep
        H = discretize(profile, grid)
        below = sturm_count(H, rep.v_asymptotic)
        E = eigen_lowest(H, min(H.size, k + below))
        E = E[E >= rep.v_asymptotic][:k]
        radius = max(report.l_barrier, grid.h)
        inner = np.abs(grid.nodes) <= radius
        uniform = radius / grid.l_max
        loc = []
        prev = []
        for j, e in enumerate(E):
            close = [prev[i] for i in range(j) if abs(E[i] - e) < CLUSTER_RTOL * max(1.0, abs(e))]
            phi = eigenvector(H, e, close)
            prev.append(phi)
            loc.append(float(np.sum(phi[inner] ** 2) * grid.h / uniform))
        rows.append(E)
        locs.append(np.array(loc))
        thresholds.append(rep.v_asymptotic)
    return StabilizationScan(boxes, rows, locs, int(L), descriptor, float(spacing),
                             report.v_origin, report.v_barrier_max, report.l_barrier,
                             np.array(thresholds))


def track_levels(scan: StabilizationScan):
    """
    Follow every level of the smallest box through the larger ones.

    Each step takes the nearest not-yet-used level of the next box, ties going
    to the lower index. Returns a list of index lists, one per track.
    """
    tracks = []
    used = [set() for _ in scan.box_sizes]
    for j0 in range(len(scan.trajectories[0])):
        idx = [j0]
        cur = scan.trajectories[0][j0]
        for r in range(1, len(scan.box_sizes)):
            row = scan.trajectories[r]
            best = None
            for i, e in enumerate(row):
                if i in used[r]:
                    continue
                d = abs(e - cur)
                if best is None or d < best[0]:
                    best = (d, i)
            if best is None:
                break
            used[r].add(best[1])
            idx.append(best[1])
            cur = row[best[1]]
        if len(idx) == len(scan.box_sizes):
            tracks.append(idx)
    return tracks


def detect_plateaus(scan: StabilizationScan, rel_tol: float = 0.05,
                    min_localization: float = 2.0) -> list[ResonanceEstimate]:
    """
    Tracks that stay flat inside the well window.

    A track qualifies when its relative standard deviation is below
    ``rel_tol``, its mean energy lies strictly between V(0) and the barrier
    maximum, and its eigenvectors carry on average at least
    ``min_localization`` times the uniform probability inside the barrier.
    The last condition rejects flat tracks produced by level aliasing between
    boxes, which show no concentration at the throat.

    Raises
    ------
    InsufficientScan
        If the scan holds fewer than four box sizes.
    """
    if len(scan.box_sizes) < MIN_BOXES:
        raise InsufficientScan(f"need at least {MIN_BOXES} box sizes, got {len(scan.box_sizes)}")
    out = []
    for idx in track_levels(scan):
        E = np.array([scan.trajectories[r][j] for r, j in enumerate(idx)])
        mean = float(E.mean())
        spread = float(E.std())
        if mean == 0.0 or spread / abs(mean) >= rel_tol:
            continue
        inside = scan.v_origin < mean < scan.v_barrier_max
        if not inside:
            continue
        loc = float(np.mean([scan.localization[r][j] for r, j in enumerate(idx)]))
        if loc < min_localization:
            continue
        out.append(ResonanceEstimate(mean, spread, (float(scan.box_sizes[0]), float(scan.box_sizes[-1])),
                                     inside, loc, tuple(float(e) for e in E)))
    return sorted(out, key=lambda r: r.energy)
