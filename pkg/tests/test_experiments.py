import numpy as np
import pytest

from fluxbands import (
    assemble,
    b_dependent,
    build_square_lattice,
    continuum_band_experiment,
    continuum_model,
    cosine_well_potential,
    cutoff_reduction_check,
    edge_comparison_check,
    eigenvalues,
    exp_decay,
    finite_size_drift,
    flux_sweep,
    gap_track,
    geometric_flux_grid,
    harper_nn,
    hausdorff_scaling_probe,
    hermiticity_defect,
    irregular_lattice_experiment,
    lipschitz_probe,
    spectrum,
    staggered_mass_harper,
    synthetic_sweep,
)


def test_geometric_grid_contents():
    grid = geometric_flux_grid(0.0, 3, 5)
    np.testing.assert_allclose(grid, [0.0, np.pi / 32, np.pi / 16, np.pi / 8])
    assert np.all(np.diff(grid) > 0)


def test_flux_sweep_single_point_matches_spectrum(harper10):
    sweep = flux_sweep(harper10.lattice, harper_nn(), [0.0])
    direct = spectrum(harper10)
    assert np.array_equal(sweep.summaries[0].eigenvalues, direct.eigenvalues)


def test_flux_sweep_requires_increasing_grid(harper10):
    with pytest.raises(ValueError):
        flux_sweep(harper10.lattice, harper_nn(), [0.1, 0.1])


def test_spectrum_symmetric_in_flux_sign():
    from fluxbands import peierls_twist

    lat = build_square_lattice(8)
    for gen in (harper_nn(), staggered_mass_harper(1.0)):
        w_plus = eigenvalues(peierls_twist(assemble(lat, gen), 0.3).matrix)
        w_minus = eigenvalues(peierls_twist(assemble(lat, gen), -0.3).matrix)
        np.testing.assert_allclose(w_plus, w_minus, atol=1e-12)


def test_lipschitz_linear_control():
    b = np.array([0.0] + [4.0 ** (-k) for k in range(9, 2, -1)])
    sweep = synthetic_sweep(b, [[0.0, 4.0 - 2.0 * bb] for bb in b], gap_min_width=np.inf)
    report = lipschitz_probe(sweep, "e_plus", 0.0)
    assert report.verdict == "bounded"
    assert all(q == pytest.approx(2.0, rel=1e-12) for _, _, q in report.samples)


def test_lipschitz_sqrt_control_diverges():
    b = np.array([0.0] + [4.0 ** (-k) for k in range(9, 2, -1)])
    sweep = synthetic_sweep(b, [[0.0, 4.0 - np.sqrt(bb)] for bb in b], gap_min_width=np.inf)
    report = lipschitz_probe(sweep, "e_plus", 0.0)
    assert report.verdict == "diverging"
    quotients = [q for _, _, q in report.samples]
    # quotient doubles on each refinement of the geometric grid
    ratios = np.array(quotients[:-1]) / np.array(quotients[1:])
    np.testing.assert_allclose(ratios, 2.0, rtol=1e-10)


def test_lipschitz_requires_enough_samples():
    b = np.array([0.0, 0.1, 0.2])
    sweep = synthetic_sweep(b, [[0.0, 1.0]] * 3, gap_min_width=np.inf)
    with pytest.raises(ValueError):
        lipschitz_probe(sweep, "e_plus", 0.0)
    with pytest.raises(ValueError):
        lipschitz_probe(sweep, "e_plus", 0.05)


def test_lipschitz_gap_edge_tracking_with_closure():
    # the gap narrows and disappears at the last two fluxes
    b = np.linspace(0.0, 0.7, 8)
    rows = []
    for bb in b:
        if bb < 0.5:
            rows.append([-2.0, -1.0 + bb, 1.0 - bb, 2.0])
        else:
            rows.append([-2.0, -0.1, 0.1, 2.0])
    sweep = synthetic_sweep(b, rows, gap_min_width=0.5)
    report = lipschitz_probe(sweep, "gap_upper:0", 0.0)
    assert report.closures  # closure recorded instead of failing
    assert all(q == pytest.approx(1.0, rel=1e-12) for _, _, q in report.samples)


def test_pinned_edge_is_bounded_despite_quotient_noise():
    # edge frozen to a 1e-6 wiggle: quotient max/median ratio is noise,
    # the excursion floor recognizes the edge as numerically constant
    b = np.linspace(0.0, 0.6, 7)
    rows = [[-4.0, 4.0 + (1e-6 if i == 1 else 0.0)] for i in range(7)]
    sweep = synthetic_sweep(b, rows, gap_min_width=np.inf)
    report = lipschitz_probe(sweep, "e_plus", 0.0)
    assert report.pinned
    assert report.verdict == "bounded"


def test_moving_edge_is_not_pinned():
    b = np.linspace(0.0, 0.6, 7)
    sweep = synthetic_sweep(b, [[-4.0, 4.0 - bb] for bb in b], gap_min_width=np.inf)
    report = lipschitz_probe(sweep, "e_plus", 0.0)
    assert not report.pinned
    assert report.verdict == "bounded"


def test_unknown_edge_selector_rejected():
    b = np.linspace(0.0, 0.6, 7)
    sweep = synthetic_sweep(b, [[0.0, 1.0]] * 7, gap_min_width=np.inf)
    with pytest.raises(ValueError):
        lipschitz_probe(sweep, "gap_top:0", 0.0)


def test_cutoff_reduction_noop_regime():
    # flux small enough that the cut-off keeps every pair of the box
    lat = build_square_lattice(6)
    report = cutoff_reduction_check(lat, harper_nn(), 1.0 / (2 * 5**2 + 1))
    assert report.passed
    assert report.measured["removed_colsum"] == 0.0


@pytest.mark.parametrize(
    "gen,b",
    [(harper_nn(), 0.25), (exp_decay(1.0), 0.1), (None, 0.1)],
)
def test_cutoff_reduction_bounds(gen, b):
    from fluxbands import power_decay

    gen = gen if gen is not None else power_decay(6.0)
    report = cutoff_reduction_check(build_square_lattice(12), gen, b)
    assert report.passed, report.measured


def test_edge_comparison_inequality_holds():
    lat = build_square_lattice(12)
    for gen in (harper_nn(), exp_decay(1.0)):
        for b in (0.05, 0.2):
            report = edge_comparison_check(lat, gen, b)
            assert report.passed, report.measured
            assert (
                report.measured["sup_twisted_cutoff"]
                <= report.measured["sup_comparison"] + 1e-10
            )


def test_edge_comparison_small_flux_slack_is_tiny():
    lat = build_square_lattice(10)
    report = edge_comparison_check(lat, harper_nn(), 1e-3)
    gap = report.measured["sup_comparison"] - report.measured["sup_twisted_cutoff"]
    assert 0.0 <= gap <= 1e-2


def test_comparison_top_edge_monotone_in_time_for_nonnegative_kernel():
    # entrywise domination implies top-eigenvalue domination for kernels
    # with nonnegative entries, so larger times give smaller top edges
    from fluxbands import comparison_operator

    K = assemble(build_square_lattice(10), harper_nn())
    b = 0.3
    tops = []
    for t in (0.5 / b, 1.0 / b, 2.0 / b):
        comp = comparison_operator(K, b, t)
        assert np.all(comp.matrix >= 0.0)
        tops.append(eigenvalues(comp)[-1])
    assert tops[0] >= tops[1] >= tops[2]


def test_gap_track_small_box():
    lat = build_square_lattice(16)
    result = gap_track(lat, staggered_mass_harper(1.0), np.linspace(0.0, 0.1, 6),
                       gap_min_width=0.5)
    assert result.closures == ()
    assert max(result.edge_agreement) <= 1e-10
    assert result.lower_report.verdict == "bounded"
    assert result.upper_report.verdict == "bounded"
    base_gap = result.gap_chain[0]
    assert base_gap.lower == pytest.approx(-1.0, abs=1e-10)
    assert base_gap.upper == pytest.approx(1.0, abs=1e-10)


def test_gap_track_requires_gap():
    lat = build_square_lattice(10)
    with pytest.raises(ValueError):
        gap_track(lat, staggered_mass_harper(0.0), np.linspace(0.0, 0.1, 6),
                  gap_min_width=0.5)


def test_irregular_zero_amplitude_matches_square_sweep():
    b = np.linspace(0.0, 0.1, 6)
    res = irregular_lattice_experiment(8, 0.0, 3, staggered_mass_harper(1.0), b,
                                       gap_min_width=0.5)
    square = flux_sweep(build_square_lattice(8), staggered_mass_harper(1.0), b,
                        gap_min_width=0.5)
    for got, want in zip(res.sweep.summaries, square.summaries):
        assert np.array_equal(got.eigenvalues, want.eigenvalues)
    assert res.relabeling.passed


def test_irregular_relabeling_unitary():
    b = np.linspace(0.0, 0.1, 6)
    res = irregular_lattice_experiment(8, 0.3, 11, staggered_mass_harper(1.0), b,
                                       gap_min_width=0.5)
    assert res.relabeling.passed
    assert res.relabeling.measured["spectrum_deviation"] <= 1e-10


def test_hausdorff_probe_sqrt_control():
    b = np.array([0.0] + [2.0 ** (-k) for k in range(10, 4, -1)])
    sweep = synthetic_sweep(b, [[0.0, np.sqrt(bb)] for bb in b], gap_min_width=np.inf)
    report = hausdorff_scaling_probe(sweep, 0.0)
    assert report.passed
    assert report.measured["exponent"] == pytest.approx(0.5, abs=1e-10)
    assert report.measured["sqrt_law_consistent"]


def test_hausdorff_probe_degenerate_model():
    b = np.linspace(0.0, 0.5, 7)
    sweep = synthetic_sweep(b, [[0.0, 1.0]] * 7, gap_min_width=np.inf)
    report = hausdorff_scaling_probe(sweep, 0.0)
    assert report.passed
    assert report.measured["exponent"] is None
    assert report.measured["degenerate_points"] == 6


def test_continuum_zero_field_zero_potential_bounds():
    h = 0.5
    op = continuum_model(8, h, lambda x1, x2: np.zeros_like(x1), 0.0)
    w = eigenvalues(op)
    assert w[0] >= -1e-12
    assert w[-1] <= 8.0 / h**2 + 1e-12
    assert op.matrix.dtype == np.float64


def test_continuum_hermitian_and_gauge_dtype():
    op = continuum_model(6, 0.25, cosine_well_potential(), 0.3)
    assert op.matrix.dtype == np.complex128
    assert hermiticity_defect(op.matrix) == 0.0


def test_continuum_band_is_isolated_small_grid():
    # one well per unit cell: 36 wells on a 24-site grid of spacing 0.25
    result = continuum_band_experiment(
        24, 0.25, cosine_well_potential(10.0, 1.0),
        geometric_flux_grid(0.0, 0, 5), gap_min_width=1.0,
    )
    n_wells = (24 * 0.25) ** 2
    band = result.sweep.summaries[0]
    states_below = np.sum(band.eigenvalues < result.base_gap.lower + 1e-9)
    assert states_below == n_wells
    assert result.base_gap.width > 1.0


def test_continuum_potential_sample_count_checked():
    with pytest.raises(ValueError):
        continuum_model(4, 0.5, np.zeros(7), 0.0)


def test_finite_size_drift_reports_shrinking_edges():
    drift = finite_size_drift(harper_nn(), 10, growth=1.2)
    assert drift["n_large"] == 12
    assert 0.0 < drift["e_plus_shift"] < 0.1


def test_sweep_determinism():
    lat = build_square_lattice(8)
    grid = np.linspace(0.0, 0.3, 4)
    first = flux_sweep(lat, staggered_mass_harper(1.0), grid)
    second = flux_sweep(lat, staggered_mass_harper(1.0), grid)
    for a, b in zip(first.summaries, second.summaries):
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert a.gaps == b.gaps


def test_b_dependent_sweep_uses_kernel_flux():
    lat = build_square_lattice(6)
    gen = b_dependent(harper_nn(), 0.5)
    sweep = flux_sweep(lat, gen, [0.0, 0.2])
    base = flux_sweep(lat, harper_nn(), [0.0, 0.2])
    # the modulation amplifies every hop, so the top edge exceeds the plain one
    assert sweep.summaries[1].e_plus > base.summaries[1].e_plus
