"""Planar magnetic heat kernel and its quadrature-verified identities.

The heat semigroup of the Landau Hamiltonian with uniform field ``b > 0``
in the symmetric gauge has the explicit integral kernel

    G(x, y; t) = e^(i b phase(x, y)) * b / (4 pi sinh(b t))
                 * exp(-b |x - y|^2 / (4 tanh(b t)))

(a Gaussian envelope carrying the same pair phase as the lattice
operators).  Three consequences of the semigroup property are verified
numerically on the plane:

* composition: ``G(x, y; 2t) = integral G(x, w; t) G(w, y; t) dw``;
* phase reconstruction: dividing the composition integral by the envelope
  at time ``2t`` recovers the bare phase factor ``e^(i b phase(x, y))``
  (and its conjugate with the argument order swapped);
* normalization: ``integral |G(w, x; t)|^2 dw = b / (4 pi sinh(2 b t))``,
  independent of ``x``.

The integrals run over a square patch that captures the Gaussian mass up
to an analytically bounded tail, using tensor-product Gauss-Legendre
nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .magnetics import magnetic_phase
from .reports import ProbeReport


@dataclass(frozen=True)
class HeatKernelParams:
    """Field intensity and time; both must be positive."""

    b: float
    t: float

    def __post_init__(self) -> None:
        if self.b <= 0:
            raise ValueError(f"field must be positive, got {self.b}")
        if self.t <= 0:
            raise ValueError(f"time must be positive, got {self.t}")


@dataclass(frozen=True)
class PlaneQuadrature:
    """Tensor Gauss-Legendre rule on a centered square patch.

    ``nodes_per_axis`` controls resolution; the patch half-width is
    ``radius_sigmas`` Gaussian widths of the integrand, which fixes the
    truncated tail analytically.
    """

    nodes_per_axis: int = 80
    radius_sigmas: float = 9.0

    def __post_init__(self) -> None:
        if self.nodes_per_axis < 4:
            raise ValueError("need at least 4 nodes per axis")
        if self.radius_sigmas < 3.0:
            raise ValueError("patch must cover at least 3 Gaussian widths")


def envelope_amplitude(params: HeatKernelParams) -> float:
    """Prefactor ``b / (4 pi sinh(b t))`` of the heat kernel."""
    return params.b / (4.0 * np.pi * np.sinh(params.b * params.t))


def gaussian_width(params: HeatKernelParams) -> float:
    """Width of the composition integrand: ``sigma^2 = tanh(b t) / b``."""
    return float(np.sqrt(np.tanh(params.b * params.t) / params.b))


def mehler_kernel(params: HeatKernelParams, x, y) -> complex:
    """Heat-kernel value at the point pair ``(x, y)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    bt = params.b * params.t
    envelope = envelope_amplitude(params) * np.exp(
        -params.b * np.sum((x - y) ** 2) / (4.0 * np.tanh(bt))
    )
    return complex(np.exp(1j * params.b * magnetic_phase(x, y)) * envelope)


def _mehler_profile(params: HeatKernelParams, fixed, nodes, reversed_order=False):
    """Vectorized kernel values ``G(fixed, w; t)`` (or ``G(w, fixed; t)``) over rows ``w``."""
    fixed = np.asarray(fixed, dtype=float)
    diff = nodes - fixed[None, :]
    bt = params.b * params.t
    envelope = envelope_amplitude(params) * np.exp(
        -params.b * np.einsum("ij,ij->i", diff, diff) / (4.0 * np.tanh(bt))
    )
    # phase(fixed, w) = -(f1 w2 - f2 w1)/2; swap sign for reversed order
    phases = -0.5 * (fixed[0] * nodes[:, 1] - fixed[1] * nodes[:, 0])
    if reversed_order:
        phases = -phases
    return np.exp(1j * params.b * phases) * envelope


def _tensor_gauss_legendre(center: np.ndarray, half_width: float, n: int):
    """Nodes (m, 2) and weights (m,) for the square patch around ``center``."""
    x, w = np.polynomial.legendre.leggauss(n)
    x1 = center[0] + half_width * x
    x2 = center[1] + half_width * x
    nodes = np.column_stack(
        [np.repeat(x1, n), np.tile(x2, n)]
    )
    weights = (half_width**2) * np.outer(w, w).ravel()
    return nodes, weights


def _composition_integral(
    params: HeatKernelParams, x, y, quad: PlaneQuadrature, reversed_order: bool = False
):
    """Quadrature of the kernel product over the plane, with its tail bound.

    ``reversed_order=False`` integrates ``G(x, w; t) G(w, y; t)``;
    ``reversed_order=True`` integrates ``G(w, x; t) G(y, w; t)`` (the
    conjugated composition).  Returns ``(value, tail_bound)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sigma = gaussian_width(params)
    center = 0.5 * (x + y)
    half_width = quad.radius_sigmas * sigma
    nodes, weights = _tensor_gauss_legendre(center, half_width, quad.nodes_per_axis)
    first = _mehler_profile(params, x, nodes, reversed_order=reversed_order)
    second = _mehler_profile(params, y, nodes, reversed_order=not reversed_order)
    value = complex(np.sum(weights * first * second))
    # Outside the patch the integrand modulus is a Gaussian in |w - center|:
    # amp^2 * exp(-|x-y|^2 b / (8 tanh bt)) * exp(-|w-center|^2 / (2 sigma^2)).
    amp = envelope_amplitude(params)
    sep = float(np.sum((x - y) ** 2))
    static = amp**2 * np.exp(-params.b * sep / (8.0 * np.tanh(params.b * params.t)))
    tail = static * 2.0 * np.pi * sigma**2 * np.exp(-(half_width**2) / (2.0 * sigma**2))
    return value, float(tail)


def semigroup_check(
    params: HeatKernelParams, x, y, quad: PlaneQuadrature = PlaneQuadrature()
) -> ProbeReport:
    """Compare the composed kernel at time ``2t`` with the quadrature integral."""
    doubled = HeatKernelParams(b=params.b, t=2.0 * params.t)
    reference = mehler_kernel(doubled, x, y)
    integral, tail = _composition_integral(params, x, y, quad)
    rel_error = abs(integral - reference) / abs(reference)
    return ProbeReport(
        probe="heat_semigroup",
        inputs={"b": params.b, "t": params.t, "x": list(map(float, x)), "y": list(map(float, y)),
                "nodes_per_axis": quad.nodes_per_axis},
        measured={"relative_error": float(rel_error), "tail_bound": tail,
                  "reference_modulus": abs(reference)},
        bound={"relative_error": 1e-6},
        passed=bool(rel_error <= 1e-6),
        margin=float(1e-6 - rel_error),
    )


def phase_identity_check(
    params: HeatKernelParams, x, y, quad: PlaneQuadrature = PlaneQuadrature()
) -> ProbeReport:
    """Recover the bare pair-phase factor from the composition integral.

    Checks both orientations: the forward composition reproduces
    ``e^(i b phase(x, y))`` and the reversed one its complex conjugate.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    b, t = params.b, params.t
    prefactor = (4.0 * np.pi * np.sinh(2.0 * b * t) / b) * np.exp(
        b * np.sum((x - y) ** 2) / (4.0 * np.tanh(2.0 * b * t))
    )
    target = np.exp(1j * b * magnetic_phase(x, y))
    forward, tail_f = _composition_integral(params, x, y, quad)
    reversed_, tail_r = _composition_integral(params, x, y, quad, reversed_order=True)
    err_forward = abs(prefactor * forward - target)
    err_reversed = abs(prefactor * reversed_ - np.conj(target))
    modulus_dev = abs(abs(prefactor * forward) - 1.0)
    worst = max(err_forward, err_reversed)
    return ProbeReport(
        probe="phase_reconstruction",
        inputs={"b": b, "t": t, "x": x.tolist(), "y": y.tolist(),
                "nodes_per_axis": quad.nodes_per_axis},
        measured={
            "error_forward": float(err_forward),
            "error_reversed": float(err_reversed),
            "modulus_deviation": float(modulus_dev),
            "tail_bound": max(tail_f, tail_r),
        },
        bound={"error": 1e-6},
        passed=bool(worst <= 1e-6),
        margin=float(1e-6 - worst),
    )


def normalization_check(
    params: HeatKernelParams, x, quad: PlaneQuadrature = PlaneQuadrature()
) -> ProbeReport:
    """Integrate the squared kernel modulus and compare with the closed form.

    The integral equals ``b / (4 pi sinh(2 b t))`` for every base point;
    the check repeats at a shifted point to confirm position independence.
    """
    x = np.asarray(x, dtype=float)
    b, t = params.b, params.t
    closed_form = b / (4.0 * np.pi * np.sinh(2.0 * b * t))
    sigma = gaussian_width(params)

    def integral_at(point):
        half_width = quad.radius_sigmas * sigma
        nodes, weights = _tensor_gauss_legendre(point, half_width, quad.nodes_per_axis)
        values = _mehler_profile(params, point, nodes, reversed_order=True)
        return float(np.sum(weights * np.abs(values) ** 2))

    here = integral_at(x)
    shifted = integral_at(x + np.array([3.0, -2.0]))
    rel_error = abs(here - closed_form) / closed_form
    shift_dev = abs(here - shifted) / closed_form
    passed = rel_error <= 1e-6 and shift_dev <= 1e-8
    return ProbeReport(
        probe="squared_kernel_normalization",
        inputs={"b": b, "t": t, "x": x.tolist(), "nodes_per_axis": quad.nodes_per_axis},
        measured={
            "integral": here,
            "closed_form": closed_form,
            "relative_error": float(rel_error),
            "translation_deviation": float(shift_dev),
        },
        bound={"relative_error": 1e-6, "translation_deviation": 1e-8},
        passed=bool(passed),
        margin=float(1e-6 - rel_error),
    )


def quadrature_convergence(
    check, params: HeatKernelParams, coarse_nodes: int = 12, **check_kwargs
) -> ProbeReport:
    """Error-reduction factor when the quadrature step is halved.

    Runs ``check`` at ``coarse_nodes`` and ``2 * coarse_nodes`` nodes per
    axis and reports the ratio of errors; the rule is better than
    second-order, so the ratio must be at least 4.
    """
    coarse = check(params, quad=PlaneQuadrature(nodes_per_axis=coarse_nodes), **check_kwargs)
    fine = check(params, quad=PlaneQuadrature(nodes_per_axis=2 * coarse_nodes), **check_kwargs)

    def _err(report: ProbeReport) -> float:
        for key in ("relative_error", "error_forward"):
            if key in report.measured:
                return float(report.measured[key])
        raise KeyError("check report carries no error field")

    err_coarse = _err(coarse)
    err_fine = _err(fine)
    ratio = err_coarse / max(err_fine, 1e-300)
    return ProbeReport(
        probe="quadrature_convergence",
        inputs={"b": params.b, "t": params.t, "coarse_nodes": coarse_nodes,
                "check": getattr(check, "__name__", str(check))},
        measured={"error_coarse": err_coarse, "error_fine": err_fine, "ratio": float(ratio)},
        bound={"ratio": 4.0},
        passed=bool(ratio >= 4.0),
        margin=float(ratio - 4.0),
    )
