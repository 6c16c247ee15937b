"""Generating kernels and dense Hermitian operators on a lattice.

A generating kernel assigns a real symmetric amplitude to every pair of
lattice sites; assembling it on a lattice produces a dense Hermitian
matrix indexed in lattice enumeration order.  The kernel families here are
the nearest-neighbour hopping kernel, exponentially and polynomially
decaying kernels, the nearest-neighbour kernel with a staggered on-site
mass, and a field-modulated family whose entries depend on the flux
parameter with a column-sum deviation linear in the flux.

On labelled lattices (square boxes and their deformations) kernel values
are evaluated at the integer labels, so a deformed lattice carries the
transported kernel of its underlying box, while distance cut-offs and
phase factors may refer to the physical positions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .lattice import Lattice
from .magnetics import STANDARD_PHASES, phase_coordinates, twist_matrix

HARPER = "harper"
EXP_DECAY = "expdecay"
POWER_DECAY = "powerdecay"
STAGGERED = "staggered"
B_DEPENDENT = "bdependent"

CUTOFF_NONE = "none"
CUTOFF_HAT = "hat"
CUTOFF_TILDE = "tilde"

# Closedness of the cut-off indicator at the boundary, with a small float
# guard so exact boundary pairs (e.g. unit hops at b = 1) are kept.
_CHI_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class GeneratingKernel:
    """Symmetric kernel family with its parameters.

    Use the factory functions (:func:`harper_nn`, :func:`exp_decay`, ...)
    rather than instantiating directly.
    """

    family: str
    rate: float | None = None
    exponent: float | None = None
    mass: float | None = None
    modulation_scale: float | None = None
    base: "GeneratingKernel | None" = None

    @property
    def depends_on_flux(self) -> bool:
        return self.family == B_DEPENDENT

    @property
    def description(self) -> str:
        if self.family == HARPER:
            return "nearest-neighbour hopping"
        if self.family == EXP_DECAY:
            return f"exponential decay (rate={self.rate})"
        if self.family == POWER_DECAY:
            return f"polynomial decay (exponent={self.exponent})"
        if self.family == STAGGERED:
            return f"nearest-neighbour hopping + staggered mass {self.mass}"
        if self.family == B_DEPENDENT:
            return (
                f"flux-modulated [{self.base.description}]"
                f" (scale={self.modulation_scale})"
            )
        return self.family


def harper_nn() -> GeneratingKernel:
    """Amplitude 1 between sites at distance exactly 1, zero elsewhere."""
    return GeneratingKernel(family=HARPER)


def exp_decay(rate: float) -> GeneratingKernel:
    """Off-diagonal amplitude ``exp(-rate * |x - y|)``, zero diagonal."""
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    return GeneratingKernel(family=EXP_DECAY, rate=float(rate))


def power_decay(exponent: float = 6.0) -> GeneratingKernel:
    """Off-diagonal amplitude ``(1 + |x - y|^2)^(-exponent/2)``, zero diagonal.

    The default exponent 6 keeps the infinite-lattice model inside every
    weighted-norm class used by the probes (finite column sums with
    polynomial weights beyond order 4).
    """
    if exponent <= 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    return GeneratingKernel(family=POWER_DECAY, exponent=float(exponent))


def staggered_mass_harper(mass: float) -> GeneratingKernel:
    """Nearest-neighbour hopping plus a checkerboard diagonal ``mass * (-1)^(x1+x2)``."""
    return GeneratingKernel(family=STAGGERED, mass=float(mass))


def b_dependent(base: GeneratingKernel, modulation_scale: float) -> GeneratingKernel:
    """Flux-modulated kernel ``base(x,y) * (1 + scale * b * exp(-|x - y|))``.

    The column-sum distance between the kernels at fluxes ``b`` and ``0``
    is at most ``scale * |b|`` times the column-sum norm of the base.
    """
    if base.depends_on_flux:
        raise ValueError("base kernel must not itself depend on the flux")
    return GeneratingKernel(
        family=B_DEPENDENT, base=base, modulation_scale=float(modulation_scale)
    )


@dataclass(frozen=True)
class KernelOperator:
    """Dense Hermitian operator on a lattice, with build provenance.

    Attributes
    ----------
    lattice : Lattice
        Index space; matrix index ``i`` is lattice point ``i``.
    matrix : ndarray
        Dense Hermitian matrix (real for untwisted real kernels).
    generator : GeneratingKernel
        Kernel the matrix was assembled from.
    kernel_b : float
        Flux fed to a flux-dependent generator (0 otherwise).
    twist_b : float
        Total flux of the phase factors applied; 0 means untwisted.
    phase_source : str or None
        Phase convention used for twisting (``None`` while untwisted).
    cutoff : str
        ``"none"``, ``"hat"`` (plain distance cut-off) or ``"tilde"``
        (cut-off plus phases).
    comparison_t : float or None
        Time parameter if a Gaussian-growth comparison factor was applied.
    """

    lattice: Lattice
    matrix: np.ndarray
    generator: GeneratingKernel
    kernel_b: float = 0.0
    twist_b: float = 0.0
    phase_source: str | None = None
    cutoff: str = CUTOFF_NONE
    comparison_t: float | None = None

    def __len__(self) -> int:
        return self.matrix.shape[0]

    @property
    def twisted(self) -> bool:
        return self.twist_b != 0.0

    def with_matrix(self, matrix: np.ndarray, **meta) -> "KernelOperator":
        return replace(self, matrix=matrix, **meta)


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest entrywise modulus of ``M - M^dagger``."""
    return float(np.abs(matrix - matrix.conj().T).max())


def pair_distances(coords: np.ndarray) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    return np.linalg.norm(diff, axis=-1)


def _kernel_matrix(gen: GeneratingKernel, coords: np.ndarray, b: float) -> np.ndarray:
    dist = pair_distances(coords)
    n = coords.shape[0]
    if gen.family == HARPER:
        mat = np.where(np.abs(dist - 1.0) < 1e-9, 1.0, 0.0)
    elif gen.family == EXP_DECAY:
        mat = np.exp(-gen.rate * dist)
        np.fill_diagonal(mat, 0.0)
    elif gen.family == POWER_DECAY:
        mat = (1.0 + dist**2) ** (-gen.exponent / 2.0)
        np.fill_diagonal(mat, 0.0)
    elif gen.family == STAGGERED:
        mat = np.where(np.abs(dist - 1.0) < 1e-9, 1.0, 0.0)
        parity = np.rint(coords[:, 0] + coords[:, 1]).astype(np.int64)
        np.fill_diagonal(mat, gen.mass * np.where(parity % 2 == 0, 1.0, -1.0))
    elif gen.family == B_DEPENDENT:
        mat = _kernel_matrix(gen.base, coords, 0.0)
        mat = mat * (1.0 + gen.modulation_scale * b * np.exp(-dist))
    else:
        raise ValueError(f"unknown kernel family {gen.family!r}")
    assert mat.shape == (n, n)
    return mat


def assemble(lattice: Lattice, gen: GeneratingKernel, b: float = 0.0) -> KernelOperator:
    """Dense untwisted operator for ``gen`` on ``lattice``.

    ``b`` only enters through flux-dependent generators; no phase factors
    are applied here.
    """
    matrix = _kernel_matrix(gen, lattice.kernel_coords, b)
    kernel_b = float(b) if gen.depends_on_flux else 0.0
    return KernelOperator(lattice=lattice, matrix=matrix, generator=gen, kernel_b=kernel_b)


def peierls_twist(
    K: KernelOperator, b: float, phase_source: str = STANDARD_PHASES
) -> KernelOperator:
    """Entrywise multiplication by the unimodular pair-phase factors.

    Hermiticity, the diagonal and every entrywise modulus are preserved;
    twisting an already twisted operator accumulates the flux (phases
    compose additively in ``b``).
    """
    coords = phase_coordinates(K.lattice, phase_source)
    if K.twisted and K.phase_source != phase_source:
        raise ValueError("cannot mix phase conventions on one operator")
    matrix = twist_matrix(K.matrix, coords, b)
    total = K.twist_b + float(b)
    source = phase_source if total != 0.0 else None
    new_cutoff = CUTOFF_TILDE if (K.cutoff != CUTOFF_NONE and total != 0.0) else K.cutoff
    return K.with_matrix(matrix, twist_b=total, phase_source=source, cutoff=new_cutoff)


def _cutoff_mask(K: KernelOperator, b: float) -> np.ndarray:
    # chi(sqrt(b) |x - y|) as an indicator of [0, 1], closed at the right
    # endpoint; tested on the squared form to keep integer-distance
    # boundary pairs exact.
    dist2 = pair_distances(K.lattice.points) ** 2
    return b * dist2 <= 1.0 + _CHI_BOUNDARY_TOL


def apply_cutoff_hat(K: KernelOperator, b: float) -> KernelOperator:
    """Zero all entries between sites farther apart than ``1/sqrt(b)``.

    Requires a positive flux and an untwisted input; distances are
    physical.  The column-sum norm of the removed part is at most
    ``b`` times the order-2 weighted column-sum norm of ``K``.
    """
    if b <= 0:
        raise ValueError(f"cutoff requires b > 0, got {b}")
    if K.twisted:
        raise ValueError("cutoff applies to the untwisted kernel")
    mask = _cutoff_mask(K, b)
    return K.with_matrix(np.where(mask, K.matrix, 0.0), cutoff=CUTOFF_HAT)


def apply_cutoff_tilde(
    K: KernelOperator, b: float, phase_source: str = STANDARD_PHASES
) -> KernelOperator:
    """Distance cut-off followed by the phase twist at the same flux."""
    return peierls_twist(apply_cutoff_hat(K, b), b, phase_source)


def comparison_operator(K: KernelOperator, b: float, t: float) -> KernelOperator:
    """Cut-off kernel with a Gaussian growth factor on the surviving pairs.

    Entry ``(x, y)`` of the result is
    ``K(x, y) * exp(b |x-y|^2 / (4 tanh(2 b t)))`` when ``|x-y| <= 1/sqrt(b)``
    and zero otherwise.  On the surviving pairs ``b |x-y|^2 <= 1``, so at
    ``t = 1/b`` the growth factor never exceeds ``exp(1/(4 tanh 2))``.
    Its top eigenvalue dominates the top eigenvalue of the twisted cut-off
    operator at the same flux, for every ``t > 0``.
    """
    if b <= 0 or t <= 0:
        raise ValueError(f"comparison operator requires b > 0 and t > 0, got b={b}, t={t}")
    if K.twisted:
        raise ValueError("comparison operator is built from the untwisted kernel")
    mask = _cutoff_mask(K, b)
    dist2 = pair_distances(K.lattice.points) ** 2
    growth = np.zeros_like(dist2)
    growth[mask] = np.exp(b * dist2[mask] / (4.0 * np.tanh(2.0 * b * t)))
    matrix = np.where(mask, K.matrix, 0.0) * growth
    return K.with_matrix(matrix, cutoff=CUTOFF_HAT, comparison_t=float(t))


def assemble_b_family(
    lattice: Lattice,
    gen: GeneratingKernel,
    b: float,
    phase_source: str = STANDARD_PHASES,
) -> KernelOperator:
    """Assemble a flux-dependent kernel at flux ``b`` and twist it at the same flux."""
    if not gen.depends_on_flux:
        raise ValueError("assemble_b_family expects a flux-dependent generator")
    return peierls_twist(assemble(lattice, gen, b), b, phase_source)
