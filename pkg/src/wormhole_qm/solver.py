"""
Finite-difference solver for the radial Schrödinger problem on [-l_max, l_max].

The operator -d^2/dl^2 + V(l) (hbar^2/2m = 1) is discretised with the
three-point stencil on a uniform grid with Dirichlet ends. The resulting
symmetric tridiagonal matrix is diagonalised by Sturm-sequence bisection,
which gives each eigenvalue independently and bit-reproducibly; eigenvectors
come from shifted inverse iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from .errors import ConvergenceFailure, GridMismatch, InvalidShape, NonFinitePotential
from .geometry import ZERO, ShapeFunction
from .grid import Grid
from .potential import PotentialProfile, asymptotic_level, profile_from_function, total_potential

__all__ = [
    "Grid",
    "Hamiltonian",
    "Spectrum",
    "ConvergenceReport",
    "make_profile",
    "discretize",
    "sturm_count",
    "eigen_lowest",
    "eigenvector",
    "lowest_states",
    "bound_states",
    "convergence_check",
    "sign_changes",
]

BISECTION_RTOL = 1e-10
MAX_BISECTIONS = 200
MAX_INVERSE_ITERATIONS = 12
# eigenvalues closer than this (relative) are orthogonalised against each other
CLUSTER_RTOL = 1e-3


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Symmetric tridiagonal matrix on the interior nodes of ``grid``."""

    diag: np.ndarray
    offdiag: np.ndarray
    grid: Grid

    @property
    def size(self) -> int:
        return len(self.diag)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        y[:-1] += self.offdiag * x[1:]
        y[1:] += self.offdiag * x[:-1]
        return y

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues and grid-normalised eigenfunctions (sum |Phi_i|^2 h = 1).

    ``wavefunctions[j]`` is sampled on every node of ``grid``, including the
    Dirichlet end points where it vanishes.
    """

    energies: np.ndarray
    wavefunctions: np.ndarray
    grid: Grid
    L: int
    shape_descriptor: str
    v_asymptotic: float
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.energies)


@dataclass(frozen=True)
class ConvergenceReport:
    E_coarse: float
    E_fine: float
    richardson_estimate: float
    converged: bool


def make_profile(source, L: int, grid: Grid) -> PotentialProfile:
    """
    Potential profile from a shape function, an existing profile or a callable V(l).

    The flat (zero) shape is rejected: its potential L(L+1)/l^2 is singular
    at an interior node.
    """
    if isinstance(source, PotentialProfile):
        return source
    if isinstance(source, ShapeFunction):
        if source.kind == ZERO:
            raise InvalidShape("the flat shape b = 0 has a singular point at l = 0 and cannot be solved")
        return total_potential(source, L, grid)
    if callable(source):
        return profile_from_function(source, grid, L, getattr(source, "__name__", "external"))
    raise TypeError(f"cannot build a potential from {type(source).__name__}")


def discretize(profile: PotentialProfile, grid: Grid) -> Hamiltonian:
    """Three-point stencil: H_ii = 2/h^2 + V_i, H_i,i+1 = -1/h^2 on interior nodes."""
    if profile.grid != grid:
        raise GridMismatch(f"profile grid {profile.grid} differs from {grid}")
    v = np.asarray(profile.values, dtype=float)
    if not np.all(np.isfinite(v)):
        bad = int(np.flatnonzero(~np.isfinite(v))[0])
        raise NonFinitePotential(f"potential is not finite at l = {grid.nodes[bad]!r}")
    h = grid.h
    diag = 2.0 / h**2 + v[1:-1]
    offdiag = np.full(grid.n - 3, -1.0 / h**2)
    return Hamiltonian(diag, offdiag, grid)


@numba.njit(cache=True)
def _count(d, e2, x, pivmin):
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    c = 1 if q < 0.0 else 0
    for i in range(1, d.shape[0]):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            c += 1
    return c


@numba.njit(cache=True)
def _bisect(d, e2, j, lo, hi, rtol, pivmin, max_iter):
    for it in range(max_iter):
        tol = rtol * max(1.0, abs(lo), abs(hi))
        if hi - lo <= tol:
            return 0.5 * (lo + hi), it
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid, it
        if _count(d, e2, mid, pivmin) > j:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), -1


def _gershgorin(H: Hamiltonian):
    r = np.zeros(H.size)
    a = np.abs(H.offdiag)
    r[:-1] += a
    r[1:] += a
    return float(np.min(H.diag - r)), float(np.max(H.diag + r))


def sturm_count(H: Hamiltonian, x: float) -> int:
    """Number of eigenvalues of ``H`` strictly below ``x``."""
    e2 = H.offdiag**2
    return int(_count(H.diag, e2, float(x), _pivmin(H)))


def _pivmin(H: Hamiltonian) -> float:
    scale = max(1.0, float(np.max(np.abs(H.diag))), float(np.max(H.offdiag**2, initial=0.0)))
    return np.finfo(float).tiny * scale


def eigen_lowest(H: Hamiltonian, k: int) -> np.ndarray:
    """
    The ``k`` smallest eigenvalues, each bisected to 1e-10 * max(1, |E|).

    Raises
    ------
    ConvergenceFailure
        If the matrix has non-finite entries or bisection exceeds its cap.
    """
    if not 1 <= k <= H.size:
        raise ValueError(f"k must lie in [1, {H.size}], got {k!r}")
    if not (np.all(np.isfinite(H.diag)) and np.all(np.isfinite(H.offdiag))):
        raise ConvergenceFailure("Hamiltonian has non-finite entries")
    lo, hi = _gershgorin(H)
    pad = 1e-12 * max(1.0, abs(lo), abs(hi))
    lo, hi = lo - pad, hi + pad
    e2 = H.offdiag**2
    pivmin = _pivmin(H)
    out = np.empty(k)
    lower = lo
    for j in range(k):
        # eigenvalues are sorted, so the previous one bounds this one from below
        val, it = _bisect(H.diag, e2, j, lower, hi, BISECTION_RTOL, pivmin, MAX_BISECTIONS)
        if it < 0:
            raise ConvergenceFailure(f"bisection for eigenvalue {j} did not converge")
        out[j] = val
        lower = max(lo, val - BISECTION_RTOL * max(1.0, abs(val)))
    return out


def eigenvector(H: Hamiltonian, E: float, against=()) -> np.ndarray:
    """
    Eigenvector for the eigenvalue estimate ``E`` by shifted inverse iteration.

    The result lives on all grid nodes (zero at both ends) and is normalised
    so that sum |Phi|^2 h = 1. Its sign makes the first component with
    magnitude above 1e-8 of the maximum positive. ``against`` holds
    previously found full-grid vectors to orthogonalise against, for nearly
    degenerate levels.
    """
    m = H.size
    grid = H.grid
    norm_scale = float(np.max(np.abs(H.diag)))
    prev = [np.asarray(v, dtype=float)[1:-1] for v in against]
    prev = [v / np.linalg.norm(v) for v in prev]

    shift = float(E)
    ab = np.zeros((3, m))
    ab[0, 1:] = H.offdiag
    ab[2, :-1] = H.offdiag
    x = np.random.default_rng(12345).standard_normal(m)
    x /= np.linalg.norm(x)
    resid = np.inf
    for it in range(MAX_INVERSE_ITERATIONS):
        ab[1] = H.diag - shift
        try:
            y = solve_banded((1, 1), ab, x, check_finite=False)
        except LinAlgError:
            shift += 4 * np.finfo(float).eps * max(1.0, norm_scale)
            continue
        for v in prev:
            y -= (v @ y) * v
        nrm = np.linalg.norm(y)
        if not np.isfinite(nrm) or nrm == 0.0:
            raise ConvergenceFailure(f"inverse iteration broke down at E = {E!r}")
        x = y / nrm
        resid = float(np.max(np.abs(H.matvec(x) - E * x)))
        if it >= 1 and resid < 1e-9 * norm_scale:
            break
    if resid >= 1e-6 * norm_scale:
        raise ConvergenceFailure(f"inverse iteration did not converge at E = {E!r} (residual {resid:.3e})")

    big = np.abs(x) > 1e-8 * np.max(np.abs(x))
    if x[int(np.argmax(big))] < 0:
        x = -x
    full = np.zeros(grid.n)
    full[1:-1] = x / math.sqrt(grid.h)
    return full


def _vectors(H: Hamiltonian, energies: np.ndarray) -> np.ndarray:
    out = []
    for j, E in enumerate(energies):
        gap_scale = CLUSTER_RTOL * max(1.0, abs(E))
        close = [out[i] for i in range(j) if abs(energies[i] - E) < gap_scale]
        out.append(eigenvector(H, E, close))
    return np.array(out).reshape(len(energies), H.grid.n)


def lowest_states(source, L: int, grid: Grid, k: int = 10, vectors: bool = True) -> Spectrum:
    """The ``k`` lowest eigenpairs, with no threshold filtering."""
    profile = make_profile(source, L, grid)
    H = discretize(profile, grid)
    E = eigen_lowest(H, min(k, H.size))
    psi = _vectors(H, E) if vectors else np.zeros((0, grid.n))
    return Spectrum(E, psi, grid, int(L), profile.shape_descriptor, asymptotic_level(profile))


def bound_states(source, L: int, grid: Grid, k: int = 10) -> Spectrum:
    """
    Eigenstates below the continuum threshold.

    The threshold is the mean potential over the outermost 5 % of nodes,
    so centrifugal tails not yet decayed at l_max are accounted for. At most
    ``k`` states are returned; the result may be empty.
    """
    full = lowest_states(source, L, grid, k)
    keep = full.energies < full.v_asymptotic
    return Spectrum(full.energies[keep], full.wavefunctions[keep], grid, full.L,
                    full.shape_descriptor, full.v_asymptotic,
                    {"lowest": full.energies.copy()})


def convergence_check(source, L: int, l_max: float, n: int) -> ConvergenceReport:
    """Lowest eigenvalue on ``n`` and ``2n - 1`` nodes and its Richardson extrapolation."""
    coarse = Grid(l_max, n)
    fine = coarse.refined()
    Ec = float(eigen_lowest(discretize(make_profile(source, L, coarse), coarse), 1)[0])
    Ef = float(eigen_lowest(discretize(make_profile(source, L, fine), fine), 1)[0])
    rich = (4.0 * Ef - Ec) / 3.0
    return ConvergenceReport(Ec, Ef, rich, abs(Ef - Ec) < 1e-6 * max(1.0, abs(Ef)))


def sign_changes(phi: np.ndarray, rel_floor: float = 1e-6) -> int:
    """Interior sign changes, ignoring components below ``rel_floor`` of the maximum."""
    phi = np.asarray(phi, dtype=float)
    big = phi[np.abs(phi) > rel_floor * np.max(np.abs(phi))]
    s = np.sign(big)
    return int(np.count_nonzero(s[1:] != s[:-1]))
