"""Weighted kernel norms and the column-sum embedding inequality.

Three kernel norms are used throughout: the plain maximal column sum of
entry moduli (a guaranteed upper bound for the operator norm of a
self-adjoint operator), and its polynomially weighted l1 and l2 variants

    colsum_alpha(K)  = max_y sum_x  w(x-y)^alpha * |K(x, y)|
    colsq_alpha(K)   = max_y ( sum_x w(x-y)^(2 alpha) * |K(x, y)|^2 )^(1/2)

with ``w(v) = (1 + |v|^2)^(1/2)``.  Cauchy-Schwarz embeds the l2 class in
the l1 class with a loss of slightly more than one weight order; the
embedding constant is an explicit lattice sum computed here numerically
with an analytic tail bound.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .kernels import KernelOperator
from .reports import ProbeReport


def _matrix_and_points(K, points):
    if isinstance(K, KernelOperator):
        return K.matrix, K.lattice.points
    matrix = np.asarray(K)
    if points is None:
        raise ValueError("points are required when passing a raw matrix")
    return matrix, np.asarray(points, dtype=float)


def _pair_weights(points: np.ndarray, alpha: float) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    dist2 = np.einsum("ijk,ijk->ij", diff, diff)
    return (1.0 + dist2) ** (alpha / 2.0)


def schur_holmgren_norm(K) -> float:
    """Maximal column sum of entry moduli; dominates the operator norm."""
    matrix = K.matrix if isinstance(K, KernelOperator) else np.asarray(K)
    return float(np.abs(matrix).sum(axis=0).max())


def c_alpha_norm(K, alpha: float, *, points=None) -> float:
    """Maximal weighted column sum with polynomial weight order ``alpha``."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    matrix, pts = _matrix_and_points(K, points)
    weights = _pair_weights(pts, alpha)
    return float((weights * np.abs(matrix)).sum(axis=0).max())


def h_alpha_norm(K, alpha: float, *, points=None) -> float:
    """Maximal weighted column l2 norm with polynomial weight order ``alpha``."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    matrix, pts = _matrix_and_points(K, points)
    weights = _pair_weights(pts, 2.0 * alpha)
    return float(np.sqrt((weights * np.abs(matrix) ** 2).sum(axis=0).max()))


def operator_norm(K) -> float:
    """Spectral norm of a Hermitian operator (largest eigenvalue modulus)."""
    matrix = K.matrix if isinstance(K, KernelOperator) else np.asarray(K)
    return float(np.abs(np.linalg.eigvalsh(matrix)).max())


@lru_cache(maxsize=32)
def embedding_constant(epsilon: float, box_radius: int = 1500) -> tuple[float, float]:
    """Cauchy-Schwarz constant ``sqrt(sum over Z^2 of (1+|v|^2)^(-(1+eps)))``.

    The lattice sum is truncated to the box ``|v|_inf <= box_radius`` and
    topped up with an integral-comparison tail bound, so the returned
    constant is a valid upper bound for the exact one.  Returns
    ``(constant, tail_bound)``.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    idx = np.arange(-box_radius, box_radius + 1, dtype=float)
    v1, v2 = np.meshgrid(idx, idx, indexing="ij")
    box_sum = float(((1.0 + v1**2 + v2**2) ** (-(1.0 + epsilon))).sum())
    # Integral comparison over unit squares: for |v| > R each summand is
    # bounded by inflate^(1+eps) times the cell integral, with
    # inflate = sup over the tail of (1 + (|v|+s2)^2)/(1 + |v|^2), s2 = sqrt(2)/2.
    s2 = np.sqrt(2.0) / 2.0
    inflate = (1.0 + (box_radius + s2) ** 2) / (1.0 + box_radius**2)
    tail = (
        inflate ** (1.0 + epsilon)
        * (np.pi / epsilon)
        * (1.0 + (box_radius - s2) ** 2) ** (-epsilon)
    )
    return float(np.sqrt(box_sum + tail)), float(tail)


def embedding_check(K, alpha: float, beta: float, epsilon: float, *, points=None) -> ProbeReport:
    """Check the weighted column-sum norm against the Cauchy-Schwarz bound.

    Verifies ``colsum_beta(K) <= C * colsq_alpha(K)`` with the explicit
    constant from :func:`embedding_constant`; requires
    ``beta < alpha - 1 - epsilon`` so the weight orders close the sum.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not beta < alpha - 1.0 - epsilon:
        raise ValueError(
            f"need beta < alpha - 1 - epsilon, got beta={beta}, alpha={alpha}, eps={epsilon}"
        )
    constant, tail = embedding_constant(epsilon)
    lhs = c_alpha_norm(K, beta, points=points)
    rhs_norm = h_alpha_norm(K, alpha, points=points)
    bound_value = constant * rhs_norm
    margin = bound_value - lhs
    return ProbeReport(
        probe="norm_embedding",
        inputs={"alpha": alpha, "beta": beta, "epsilon": epsilon},
        measured={
            "weighted_colsum": lhs,
            "weighted_colsq": rhs_norm,
            "constant": constant,
            "constant_tail_bound": tail,
        },
        bound={"weighted_colsum": bound_value},
        passed=bool(lhs <= bound_value),
        margin=float(margin),
    )
