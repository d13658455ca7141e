import math

import numpy as np
import pytest

from spinclone import (GridSpec, ProtocolScan, b_opt_xy, bipartite,
                       disorder_study, heis_star_fidelity, optimize,
                       optimize_exact_field, optimize_tree, run_protocol, star,
                       t_c_xy, xy_star_fidelity)

EQUATOR = math.pi / 2

STAR_GRID = GridSpec(t_range=(0.0, 10.0), t_points=600,
                     b_range=(0.0, 2.0), b_points=60)
FIXED_B0 = GridSpec(t_range=(0.0, 10.0), t_points=600,
                    b_range=(0.0, 0.0), b_points=1)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(t_range=(1.0, 1.0), t_points=10, b_range=(0.0, 1.0),
                 b_points=5)
    with pytest.raises(ValueError):
        GridSpec(t_range=(0.0, 1.0), t_points=1, b_range=(0.0, 1.0),
                 b_points=5)
    with pytest.raises(ValueError):
        GridSpec(t_range=(0.0, 1.0), t_points=10, b_range=(1.0, 1.0),
                 b_points=5)


def test_scan_matches_run_protocol():
    net = bipartite(2, 3)
    scan = ProtocolScan(net, 0.7, 1.1, phi=0.4)
    for t, b in [(0.0, 0.0), (1.7, 0.45), (13.2, 0.08)]:
        direct = run_protocol(net, 0.7, b, 1.1, 0.4, t).mean_fidelity
        assert abs(scan.mean_fidelity(t, b) - direct) <= 1e-12


def test_envelope_is_field_maximum():
    # The closed-form field maximum must dominate any sampled field value
    # and be attained by the reported aligning phase.
    net = bipartite(2, 4)
    scan = ProtocolScan(net, 0.0, EQUATOR)
    times = np.array([0.9, 3.7, 21.3])
    best, chi = scan.envelope(times)
    for k, t in enumerate(times):
        sampled = scan.grid(np.array([t]), np.linspace(0.0, 8.0, 400))[0]
        assert sampled.max() <= best[k] + 1e-12
        realizing = (chi[k] % (2.0 * math.pi)) / t
        assert abs(scan.mean_fidelity(t, realizing) - best[k]) <= 1e-12


def test_optimize_xy_star_two_clones():
    result = optimize(star(2), 0.0, EQUATOR, STAR_GRID)
    assert abs(result.fidelity - (2 + math.sqrt(2)) / 4) <= 1e-6
    assert abs(result.t_c - math.pi / math.sqrt(2)) <= 1e-3
    assert abs(result.b_opt - 1 / math.sqrt(2)) <= 1e-3


def test_optimize_heisenberg_star_two_clones():
    result = optimize(star(2), 1.0, EQUATOR, FIXED_B0)
    assert abs(result.fidelity - 5.0 / 6.0) <= 1e-6
    assert abs(result.t_c - 2.0 * math.pi / 3.0) <= 1e-3
    assert result.b_opt == 0.0
    assert result.j_over_b == math.inf


@pytest.mark.parametrize("m", range(1, 8))
def test_star_consistency_both_models(m):
    xy = optimize(star(m), 0.0, EQUATOR, STAR_GRID)
    assert abs(xy.fidelity - xy_star_fidelity(m, EQUATOR)) <= 1e-5
    heis = optimize(star(m), 1.0, EQUATOR, FIXED_B0)
    assert abs(heis.fidelity - heis_star_fidelity(m, EQUATOR)) <= 1e-5


def test_reevaluation_consistency():
    result = optimize(star(3), 0.0, EQUATOR, STAR_GRID)
    direct = run_protocol(star(3), 0.0, result.b_opt, EQUATOR, 0.0,
                          result.t_c).mean_fidelity
    assert abs(direct - result.fidelity) <= STAR_GRID.refine_tolerance


def test_refinement_monotone():
    # Within each candidate's ascent the incumbent never decreases; the
    # final pick never falls below any candidate start.
    result = optimize(star(2), 0.0, EQUATOR, STAR_GRID)
    incumbent = -1.0
    for stage, _, _, value in result.refinement_history:
        if stage == "window":
            incumbent = value
        elif stage == "refine":
            assert value >= incumbent - 1e-15
            incumbent = max(incumbent, value)
    assert result.refinement_history[-1][0] == "final"
    assert result.fidelity >= result.refinement_history[0][3] - 1e-15


def test_optimize_deterministic():
    a = optimize(star(2), 0.0, EQUATOR, STAR_GRID)
    b = optimize(star(2), 0.0, EQUATOR, STAR_GRID)
    assert a == b


def test_flat_landscape_returns_smallest_time():
    # theta = 0 keeps every clone exactly blank: F = 1 everywhere.
    result = optimize(star(2), 0.0, 0.0, STAR_GRID)
    assert abs(result.fidelity - 1.0) <= 1e-12
    assert result.t_c <= STAR_GRID.t_values()[1] + 1e-9


def test_csv_row_format():
    result = optimize(star(2), 0.0, EQUATOR, STAR_GRID)
    row = result.csv_row(1, 2, 0.0, EQUATOR)
    cells = row.split(",")
    assert len(cells) == 9
    assert cells[0] == "1" and cells[1] == "2"
    assert abs(float(cells[4]) - result.fidelity) < 1e-8


def test_exact_field_matches_grid_on_star():
    grid = optimize(star(2), 0.0, EQUATOR, STAR_GRID)
    exact = optimize_exact_field(star(2), 0.0, EQUATOR,
                                 t_range=(0.0, 10.0), t_points=2001)
    assert abs(exact.fidelity - grid.fidelity) <= 1e-6
    assert abs(exact.t_c - grid.t_c) <= 1e-3
    direct = run_protocol(star(2), 0.0, exact.b_opt, EQUATOR, 0.0,
                          exact.t_c).mean_fidelity
    assert abs(direct - exact.fidelity) <= 1e-10


def test_tree_values():
    small = optimize_tree(2, 0)
    assert abs(small.fidelity - (2 + math.sqrt(2)) / 4) <= 1e-4
    mid = optimize_tree(2, 1)
    assert abs(mid.fidelity - 0.75) <= 1e-4   # three-site chains transfer perfectly


def test_tree_headline_numbers():
    eight = optimize_tree(2, 2)
    assert abs(eight.fidelity - 0.676) <= 0.005
    twenty_seven = optimize_tree(3, 2)
    assert abs(twenty_seven.fidelity - 0.596) <= 0.005


def test_disorder_zero_epsilon():
    summary = disorder_study(star(2), 0.0, 20, 0.0, EQUATOR,
                             t_c_xy(2), b_opt_xy(2), seed=3)
    assert summary.relative_drop == 0.0
    assert summary.std_fidelity <= 1e-15


def test_disorder_star_two():
    summary = disorder_study(star(2), 0.1, 500, 0.0, EQUATOR,
                             t_c_xy(2), b_opt_xy(2), seed=42)
    assert summary.samples == 500
    assert 0.0 < summary.relative_drop < 0.002
    assert abs(summary.ideal_fidelity - (2 + math.sqrt(2)) / 4) < 1e-12


def test_disorder_star_four_regression():
    # Frozen measurement: the drop stays in the same order as the 1->2 case.
    summary = disorder_study(star(4), 0.1, 500, 0.0, EQUATOR,
                             t_c_xy(4), b_opt_xy(4), seed=42)
    assert summary.relative_drop < 0.005
    assert abs(summary.relative_drop - 0.00081) < 5e-4


def test_disorder_deterministic():
    a = disorder_study(star(2), 0.1, 40, 0.0, EQUATOR, t_c_xy(2),
                       b_opt_xy(2), seed=7)
    b = disorder_study(star(2), 0.1, 40, 0.0, EQUATOR, t_c_xy(2),
                       b_opt_xy(2), seed=7)
    assert a == b
