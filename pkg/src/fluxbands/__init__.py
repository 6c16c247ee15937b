"""Magnetic lattice operators, flux sweeps and band-edge tracking.

The package builds dense Hermitian hopping operators on finite planar
lattices, threads a uniform magnetic flux through them via unimodular
pair-phase factors, and verifies at desk scale the algebraic identities,
norm bounds and edge-motion properties of the resulting operator families:
flux sweeps (butterfly spectra), Lipschitz probes for band and gap edges,
cut-off and Gaussian-comparison machinery, resolvent stability, and the
planar magnetic heat-kernel identities feeding the edge comparisons.
"""

from .heatkernel import (
    HeatKernelParams,
    PlaneQuadrature,
    mehler_kernel,
    normalization_check,
    phase_identity_check,
    quadrature_convergence,
    semigroup_check,
)
from .kernels import (
    GeneratingKernel,
    KernelOperator,
    apply_cutoff_hat,
    apply_cutoff_tilde,
    assemble,
    assemble_b_family,
    b_dependent,
    comparison_operator,
    exp_decay,
    harper_nn,
    hermiticity_defect,
    peierls_twist,
    power_decay,
    staggered_mass_harper,
)
from .lattice import (
    Lattice,
    build_deformed_lattice,
    build_grid_lattice,
    build_square_lattice,
    min_pair_distance,
)
from .magnetics import (
    deformed_phase,
    magnetic_phase,
    phase_additive_defect,
    phase_matrix,
    plaquette_circulation,
)
from .norms import (
    c_alpha_norm,
    embedding_check,
    embedding_constant,
    h_alpha_norm,
    operator_norm,
    schur_holmgren_norm,
)
from .reports import ProbeReport
from .resolvent import (
    ResolventBundle,
    conjugation_check,
    factorization_check,
    resolvent,
    stability_probe,
    twist_defect,
    twisted_resolvent,
    weighted_decay_probe,
)
from .spectral import (
    ContourSpec,
    Gap,
    SpectralSummary,
    default_gap_width,
    detect_gaps,
    eigensystem,
    eigenvalues,
    gap_edge_from_projector,
    hausdorff_distance,
    riesz_projector,
    spectrum,
    sup_comparison_check,
)
from .experiments import (
    ContinuumBandResult,
    FluxSweep,
    GapTrackResult,
    IrregularLatticeResult,
    LipschitzReport,
    continuum_band_experiment,
    continuum_model,
    cosine_well_potential,
    cutoff_reduction_check,
    edge_comparison_check,
    finite_size_drift,
    flux_sweep,
    gap_track,
    geometric_flux_grid,
    hausdorff_scaling_probe,
    irregular_lattice_experiment,
    lipschitz_probe,
    synthetic_sweep,
)

__version__ = "0.1.0"
