"""Hermitian eigensolve contract, gap detection, and spectral projectors.

All spectra are computed by dense Hermitian eigendecomposition.  A gap is
a maximal open interval between consecutive eigenvalues that is wider than
a threshold and does not touch the spectral extremes; the default
threshold is ten times the median consecutive spacing, which separates
genuine gaps from the discrete filling of bands on a finite box.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .kernels import KernelOperator, hermiticity_defect
from .reports import ProbeReport

# Largest dimension accepted for a dense eigensolve.  Desk-scale boxes stay
# well below this; it guards against accidentally huge inputs.
MAX_DENSE_DIM = 8192

_GAP_THRESHOLD_FACTOR = 10.0
_CONTOUR_CLEARANCE = 1e-8


def _as_matrix(K) -> np.ndarray:
    matrix = K.matrix if isinstance(K, KernelOperator) else np.asarray(K)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] > MAX_DENSE_DIM:
        raise ValueError(
            f"dimension {matrix.shape[0]} exceeds the dense-solver limit {MAX_DENSE_DIM}"
        )
    scale = max(1.0, float(np.abs(matrix).max()))
    if hermiticity_defect(matrix) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian")
    return matrix


def eigenvalues(K) -> np.ndarray:
    """All eigenvalues, ascending (values only; no eigenvectors)."""
    return np.linalg.eigvalsh(_as_matrix(K))


def eigensystem(K) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and an orthonormal eigenvector matrix."""
    return np.linalg.eigh(_as_matrix(K))


@dataclass(frozen=True)
class Gap:
    """Open interval free of eigenvalues, with both endpoints in the spectrum."""

    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def overlaps(self, other: "Gap") -> float:
        return min(self.upper, other.upper) - max(self.lower, other.lower)


def default_gap_width(eigs: np.ndarray) -> float:
    """Default gap threshold: ten times the median positive consecutive spacing.

    Zero spacings (exact degeneracies, ubiquitous on symmetric boxes) are
    ignored when taking the median; otherwise a handful of degenerate
    levels would collapse the threshold and every band spacing would be
    reported as a gap.
    """
    diffs = np.diff(np.sort(eigs))
    positive = diffs[diffs > 0]
    if positive.size == 0:
        return np.inf
    return _GAP_THRESHOLD_FACTOR * float(np.median(positive))


def detect_gaps(eigs: np.ndarray, min_width: float | None = None) -> tuple[Gap, ...]:
    """Maximal eigenvalue-free intervals wider than ``min_width``.

    Intervals adjacent to the extreme eigenvalues are excluded: a gap must
    lie strictly inside the spectral hull.
    """
    eigs = np.sort(np.asarray(eigs, dtype=float))
    if eigs.size < 4:
        return ()
    if min_width is None:
        min_width = default_gap_width(eigs)
    if min_width <= 0:
        raise ValueError(f"min_width must be positive, got {min_width}")
    diffs = np.diff(eigs)
    gaps = []
    for i in range(1, eigs.size - 2):
        if diffs[i] >= min_width:
            gaps.append(Gap(lower=float(eigs[i]), upper=float(eigs[i + 1])))
    return tuple(gaps)


@dataclass(frozen=True)
class SpectralSummary:
    """Sorted eigenvalues with band edges and the detected gap list."""

    eigenvalues: np.ndarray
    gaps: tuple[Gap, ...]
    gap_min_width: float

    @property
    def e_minus(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def e_plus(self) -> float:
        return float(self.eigenvalues[-1])

    def __len__(self) -> int:
        return self.eigenvalues.size


def spectrum(K, gap_min_width: float | None = None) -> SpectralSummary:
    """Full spectrum of a Hermitian operator with gaps populated."""
    eigs = eigenvalues(K)
    width = gap_min_width if gap_min_width is not None else default_gap_width(eigs)
    return SpectralSummary(eigenvalues=eigs, gaps=detect_gaps(eigs, width), gap_min_width=width)


def hausdorff_distance(first, second) -> float:
    """Hausdorff distance between two finite eigenvalue sets."""
    a = np.asarray(first.eigenvalues if isinstance(first, SpectralSummary) else first, dtype=float)
    b = np.asarray(
        second.eigenvalues if isinstance(second, SpectralSummary) else second, dtype=float
    )
    if a.size == 0 or b.size == 0:
        raise ValueError("Hausdorff distance of an empty spectrum is undefined")
    pair = np.abs(a[:, None] - b[None, :])
    return float(max(pair.min(axis=1).max(), pair.min(axis=0).max()))


def sup_comparison_check(M, N, tolerance: float = 1e-12) -> ProbeReport:
    """Check that extreme eigenvalues move by at most the operator-norm distance.

    For self-adjoint ``M`` and ``N`` of the same dimension,
    ``|sup spec(M) - sup spec(N)| <= ||M - N||`` and likewise for the
    infima; both are verified with ``tolerance`` slack for roundoff.
    """
    m = _as_matrix(M)
    n = _as_matrix(N)
    if m.shape != n.shape:
        raise ValueError(f"dimension mismatch: {m.shape} vs {n.shape}")
    wm = np.linalg.eigvalsh(m)
    wn = np.linalg.eigvalsh(n)
    norm_diff = float(np.abs(np.linalg.eigvalsh(m - n)).max())
    sup_shift = abs(float(wm[-1] - wn[-1]))
    inf_shift = abs(float(wm[0] - wn[0]))
    margin = norm_diff + tolerance - max(sup_shift, inf_shift)
    return ProbeReport(
        probe="extreme_eigenvalue_comparison",
        inputs={"dimension": m.shape[0], "tolerance": tolerance},
        measured={"sup_shift": sup_shift, "inf_shift": inf_shift, "norm_difference": norm_diff},
        bound={"shift": norm_diff + tolerance},
        passed=bool(max(sup_shift, inf_shift) <= norm_diff + tolerance),
        margin=float(margin),
    )


@dataclass(frozen=True)
class ContourSpec:
    """Positively oriented circle in the complex plane for Riesz integrals."""

    center: float
    radius: float
    quadrature_nodes: int = 64

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.quadrature_nodes < 8:
            raise ValueError(f"need at least 8 quadrature nodes, got {self.quadrature_nodes}")


def _check_contour_clearance(eigs: np.ndarray, contour: ContourSpec) -> None:
    clearance = np.abs(np.abs(eigs - contour.center) - contour.radius).min()
    if clearance < _CONTOUR_CLEARANCE:
        raise ValueError(
            f"an eigenvalue lies within {clearance:.3e} of the contour; projector ill-posed"
        )


def riesz_projector(
    K,
    contour: ContourSpec,
    method: str = "spectral",
    eigenvalues_hint: np.ndarray | None = None,
) -> np.ndarray:
    """Spectral projector onto the eigenvalues enclosed by ``contour``.

    ``method="spectral"`` sums eigenvector outer products for eigenvalues
    inside the circle; ``method="quadrature"`` applies the trapezoid rule
    on the circle to the resolvent (spectrally accurate for periodic
    integrands).  ``eigenvalues_hint`` may pass a precomputed spectrum of
    ``K`` to avoid a redundant eigensolve; it must be exactly the spectrum
    of ``K``.
    """
    matrix = _as_matrix(K)
    eigs = np.linalg.eigvalsh(matrix) if eigenvalues_hint is None else np.asarray(eigenvalues_hint)
    _check_contour_clearance(eigs, contour)
    if method == "spectral":
        lo = contour.center - contour.radius
        hi = contour.center + contour.radius
        if not np.any((eigs > lo) & (eigs < hi)):
            return np.zeros_like(matrix, dtype=complex)
        _, vecs = sla.eigh(matrix, subset_by_value=(lo, hi))
        return (vecs @ vecs.conj().T).astype(complex)
    if method == "quadrature":
        n = matrix.shape[0]
        nodes = contour.quadrature_nodes
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        phase = np.exp(1j * theta)
        z_nodes = contour.center + contour.radius * phase
        acc = np.zeros((n, n), dtype=complex)
        identity = np.eye(n, dtype=complex)
        for w, z in zip(phase, z_nodes):
            acc += w * np.linalg.solve(matrix - z * identity, identity)
        return -(contour.radius / nodes) * acc
    raise ValueError(f"unknown projector method {method!r}")


def gap_edge_from_projector(
    K,
    contour: ContourSpec,
    shift: float,
    eigenvalues_hint: np.ndarray | None = None,
) -> float:
    """Smallest eigenvalue enclosed by ``contour``, read through a projector.

    Builds ``D = K P - shift * P`` with ``P`` the Riesz projector for the
    contour and returns ``shift + min spec(D)``.  With ``shift`` above the
    whole spectrum, the spectrum of ``D`` is the enclosed cluster moved
    below zero together with ``{0}``, so the minimum recovers the lower
    edge of the cluster; ``shift`` must clear the cluster by at least 1/2
    for the zero eigenvalue of ``D`` not to interfere.
    """
    matrix = _as_matrix(K)
    projector = riesz_projector(K, contour, method="spectral", eigenvalues_hint=eigenvalues_hint)
    rank = int(round(float(np.trace(projector).real)))
    if rank == 0 or rank == matrix.shape[0]:
        raise ValueError(f"contour misconfigured: projector rank {rank} of {matrix.shape[0]}")
    reduced = matrix @ projector - shift * projector
    lowest = float(np.linalg.eigvalsh(reduced)[0])
    if lowest > -0.5:
        raise ValueError(
            f"shift {shift} does not separate the enclosed cluster (min spec(D) = {lowest:.3g})"
        )
    return shift + lowest
