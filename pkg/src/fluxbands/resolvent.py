"""Resolvents, the twisted-resolvent factorization, and decay probes.

For an untwisted kernel ``K`` with resolvent ``G = (K - z)^(-1)``, the
phase-twisted matrix ``S`` obtained by multiplying ``G`` entrywise with
the pair-phase factors is an approximate inverse of the twisted operator:

    (K_b - z) S = I + T,

where the defect ``T`` has the factored kernel

    T(x, y) = e^(i b phase(x, y)) * sum_w (e^(i b phase(x-w, w-y)) - 1)
              * K(x, w) * G(w, y)

(the additive phase identity moves the full phases onto the displacement
pair), and its operator norm is at most ``|b|`` times the product of the
order-1 weighted column-sum norms of ``K`` and ``|G|``.  Whenever
``||T|| <= 1/2`` a Neumann series certifies invertibility of ``K_b - z``
with an explicit bound, which keeps the resolvent set stable under small
flux changes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import KernelOperator, peierls_twist
from .magnetics import STANDARD_PHASES, phase_coordinates, twist_matrix
from .norms import c_alpha_norm, h_alpha_norm
from .reports import ProbeReport
from .spectral import eigensystem

_RESOLVENT_CLEARANCE = 1e-10


@dataclass(frozen=True)
class ResolventBundle:
    """Resolvent matrix of a kernel operator at one spectral parameter."""

    operator: KernelOperator
    z: complex
    matrix: np.ndarray
    dist_to_spectrum: float


def resolvent(K: KernelOperator, z: complex) -> ResolventBundle:
    """Dense inverse of ``K - z`` via the Hermitian eigendecomposition.

    Raises when ``z`` is within 1e-10 of the spectrum.  The residual
    ``max |(K - z) G - I|`` is at machine-precision level because the
    eigenbasis is orthonormal to working accuracy.
    """
    z = complex(z)
    w, vecs = eigensystem(K)
    dist = float(np.abs(w - z).min())
    if dist < _RESOLVENT_CLEARANCE:
        raise ValueError(f"z={z} is within {dist:.3e} of the spectrum")
    inv = vecs @ ((1.0 / (w - z))[:, None] * vecs.conj().T)
    return ResolventBundle(operator=K, z=z, matrix=inv, dist_to_spectrum=dist)


def twisted_resolvent(
    G: ResolventBundle, b: float, phase_source: str = STANDARD_PHASES
) -> np.ndarray:
    """Entrywise phase twist of the resolvent (the approximate inverse)."""
    coords = phase_coordinates(G.operator.lattice, phase_source)
    return twist_matrix(G.matrix, coords, b)


def twist_defect(
    K: KernelOperator,
    G: ResolventBundle,
    b: float,
    construction: str = "direct",
    phase_source: str = STANDARD_PHASES,
) -> np.ndarray:
    """Defect ``T`` in ``(K_b - z) S = I + T``.

    ``construction="direct"`` computes the left-hand side and subtracts
    the identity; ``construction="factored"`` builds the kernel from the
    additive phase identity, with the defect phase evaluated on the
    displacement pair ``(x - w, w - y)``.  The two agree to machine
    precision, which pins down the sign convention of the factored form.
    """
    if K.twisted:
        raise ValueError("the factorization starts from the untwisted kernel")
    coords = phase_coordinates(K.lattice, phase_source)
    if construction == "direct":
        Kb = peierls_twist(K, b, phase_source)
        S = twisted_resolvent(G, b, phase_source)
        n = len(K)
        return (Kb.matrix - G.z * np.eye(n)) @ S - np.eye(n)
    if construction == "factored":
        n = len(K)
        x1 = coords[:, 0]
        x2 = coords[:, 1]
        # d[a, j] = coords[a] - coords[j], reused per row below
        d1 = x1[:, None] - x1[None, :]
        d2 = x2[:, None] - x2[None, :]
        phases = np.exp(1j * b * (-0.5) * (np.outer(x1, x2) - np.outer(x2, x1)))
        T = np.empty((n, n), dtype=complex)
        for i in range(n):
            u1 = x1[i] - x1
            u2 = x2[i] - x2
            # phase((x_i - w), (w - y)) over w (rows) and y (columns)
            defect_phase = -0.5 * (u1[:, None] * d2 - u2[:, None] * d1)
            weight = np.exp(1j * b * defect_phase) - 1.0
            T[i, :] = phases[i, :] * (K.matrix[i, :] @ (weight * G.matrix))
        return T
    raise ValueError(f"unknown construction {construction!r}")


def factorization_check(
    K: KernelOperator,
    z: complex,
    b_values,
    tolerance: float = 1e-12,
    phase_source: str = STANDARD_PHASES,
) -> ProbeReport:
    """Compare the direct and factored defect constructions entrywise."""
    G = resolvent(K, z)
    deviations = []
    for b in b_values:
        direct = twist_defect(K, G, b, "direct", phase_source)
        factored = twist_defect(K, G, b, "factored", phase_source)
        deviations.append(float(np.abs(direct - factored).max()))
    worst = max(deviations)
    return ProbeReport(
        probe="twist_factorization",
        inputs={"z": complex(z), "b_values": list(map(float, b_values))},
        measured={"max_entry_deviation": deviations},
        bound={"max_entry_deviation": tolerance},
        passed=bool(worst <= tolerance),
        margin=float(tolerance - worst),
    )


def _two_norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix, 2))


def stability_probe(K: KernelOperator, z: complex, b_grid) -> ProbeReport:
    """Certify resolvent-set stability across a flux grid.

    For each flux ``b``: checks the defect-norm bound
    ``||T|| <= |b| * colsum_1(K) * colsum_1(|G|)``; when ``||T|| <= 1/2``
    additionally certifies ``dist(z, spec(K_b)) >= (1 - ||T||) / ||S||``
    against a direct eigensolve of the twisted operator, and checks the
    Neumann-series inverse against the directly computed one.
    """
    G = resolvent(K, z)
    pts = K.lattice.points
    c1_kernel = c_alpha_norm(K, 1.0)
    c1_resolvent = c_alpha_norm(np.abs(G.matrix), 1.0, points=pts)
    n = len(K)
    identity = np.eye(n)
    rows = []
    all_pass = True
    worst_margin = np.inf
    for b in np.asarray(list(b_grid), dtype=float):
        Kb = peierls_twist(K, b)
        S = twisted_resolvent(G, b)
        T = (Kb.matrix - G.z * identity) @ S - identity
        t_norm = _two_norm(T)
        t_bound = abs(b) * c1_kernel * c1_resolvent
        row = {
            "b": float(b),
            "defect_norm": t_norm,
            "defect_bound": t_bound,
            "defect_ok": bool(t_norm <= t_bound + 1e-12),
        }
        worst_margin = min(worst_margin, t_bound + 1e-12 - t_norm)
        if t_norm <= 0.5:
            s_norm = _two_norm(S)
            guaranteed = (1.0 - t_norm) / s_norm
            w_twisted = np.linalg.eigvalsh(Kb.matrix)
            dist_direct = float(np.abs(w_twisted - G.z).min())
            neumann = S @ np.linalg.inv(identity + T)
            direct_inverse = np.linalg.inv(Kb.matrix - G.z * identity)
            neumann_gap = float(np.abs(neumann - direct_inverse).max())
            row.update(
                {
                    "approx_inverse_norm": s_norm,
                    "guaranteed_distance": guaranteed,
                    "direct_distance": dist_direct,
                    "distance_ok": bool(dist_direct >= guaranteed - 1e-12),
                    "neumann_gap": neumann_gap,
                    "neumann_ok": bool(neumann_gap <= 1e-8),
                }
            )
            worst_margin = min(worst_margin, dist_direct - guaranteed + 1e-12)
            row_ok = row["defect_ok"] and row["distance_ok"] and row["neumann_ok"]
        else:
            row["contraction"] = False
            row_ok = row["defect_ok"]
        rows.append(row)
        all_pass = all_pass and row_ok
    return ProbeReport(
        probe="resolvent_stability",
        inputs={"z": complex(z), "b_grid": [float(b) for b in b_grid]},
        measured={"rows": rows, "dist_to_spectrum": G.dist_to_spectrum},
        bound={"defect": "|b| * colsum_1(K) * colsum_1(|G|)", "neumann_gap": 1e-8},
        passed=bool(all_pass),
        margin=float(worst_margin),
    )


def weighted_decay_probe(
    K: KernelOperator,
    alpha: float,
    alpha_prime: float,
    z_list,
    slope_margin: float = 0.2,
) -> ProbeReport:
    """Probe how the weighted resolvent norm grows approaching the spectrum.

    Computes the order-``alpha_prime`` weighted column-l2 norm of the
    resolvent over ``z_list`` and fits the log-log slope against
    ``1/dist`` in the near field (``dist <= 1``).  The slope must not
    exceed ``alpha + 2 + slope_margin``; the ratio of the measured norm to
    the two-term envelope ``dist^-(alpha+2) + dist^-1`` is reported and
    capped by ``1 + colsum_alpha(K)^(alpha+1)``.
    """
    if not 0 <= alpha_prime < alpha:
        raise ValueError(f"need 0 <= alpha_prime < alpha, got {alpha_prime}, {alpha}")
    pts = K.lattice.points
    dists = []
    weighted_norms = []
    for z in z_list:
        G = resolvent(K, z)
        dists.append(G.dist_to_spectrum)
        weighted_norms.append(h_alpha_norm(G.matrix, alpha_prime, points=pts))
    dists = np.asarray(dists)
    weighted_norms = np.asarray(weighted_norms)
    if np.log10(dists.max() / dists.min()) < 1.5:
        raise ValueError("z_list must span at least 1.5 decades of distance to the spectrum")
    near = dists <= 1.0
    if near.sum() < 2:
        raise ValueError("need at least two near-field points (dist <= 1)")
    slope = float(
        np.polyfit(np.log(1.0 / dists[near]), np.log(weighted_norms[near]), 1)[0]
    )
    envelope = dists ** (-(alpha + 2.0)) + dists ** (-1.0)
    ratios = weighted_norms / envelope
    ratio_cap = 1.0 + c_alpha_norm(K, alpha) ** (alpha + 1.0)
    slope_bound = alpha + 2.0 + slope_margin
    passed = slope <= slope_bound and float(ratios.max()) <= ratio_cap
    return ProbeReport(
        probe="weighted_resolvent_decay",
        inputs={
            "alpha": alpha,
            "alpha_prime": alpha_prime,
            "n_points": int(dists.size),
            "slope_margin": slope_margin,
        },
        measured={
            "near_field_slope": slope,
            "ratio_max": float(ratios.max()),
            "ratio_min": float(ratios.min()),
            "distances": dists.tolist(),
            "weighted_norms": weighted_norms.tolist(),
        },
        bound={"near_field_slope": slope_bound, "ratio_max": ratio_cap},
        passed=bool(passed),
        margin=float(slope_bound - slope),
    )


def conjugation_check(
    K: KernelOperator, k_vec, z: complex, tolerance: float = 1e-10
) -> ProbeReport:
    """Verify that plane-wave conjugation commutes with taking resolvents.

    Multiplying the kernel entrywise with ``exp(i k . (x - y))`` is a
    unitary conjugation, so the conjugated operator is isospectral and its
    resolvent is the entrywise-multiplied resolvent.  Both sides are
    computed independently and compared entrywise.
    """
    pts = K.lattice.points
    k1, k2 = float(k_vec[0]), float(k_vec[1])
    d1 = pts[:, 0][:, None] - pts[None, :, 0]
    d2 = pts[:, 1][:, None] - pts[None, :, 1]
    wave = np.exp(1j * (k1 * d1 + k2 * d2))
    conjugated = K.with_matrix(K.matrix * wave)
    G = resolvent(K, z)
    G_conj = resolvent(conjugated, z)
    entry_dev = float(np.abs(G_conj.matrix - wave * G.matrix).max())
    base_spectrum = np.linalg.eigvalsh(K.matrix)
    spec_dev = float(np.abs(np.linalg.eigvalsh(conjugated.matrix) - base_spectrum).max())
    spec_scale = max(1.0, float(np.abs(base_spectrum).max()))
    passed = entry_dev <= tolerance and spec_dev <= tolerance * spec_scale
    return ProbeReport(
        probe="plane_wave_conjugation",
        inputs={"k": [k1, k2], "z": complex(z)},
        measured={"entry_deviation": entry_dev, "spectrum_deviation": spec_dev},
        bound={"entry_deviation": tolerance},
        passed=bool(passed),
        margin=float(tolerance - entry_dev),
    )
