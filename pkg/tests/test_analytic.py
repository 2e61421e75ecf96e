import math

import pytest

from entshare import analytic


def test_binary_entropy_values():
    assert analytic.binary_entropy(0.5) == 1.0
    assert analytic.binary_entropy(0.0) == 0.0
    assert analytic.binary_entropy(1.0) == 0.0
    expect = -(0.11 * math.log2(0.11) + 0.89 * math.log2(0.89))
    assert analytic.binary_entropy(0.11) == pytest.approx(expect, abs=1e-15)
    with pytest.raises(ValueError):
        analytic.binary_entropy(1.2)


def test_mu_n_values():
    assert analytic.mu_n(0.8) == pytest.approx(0.8)
    assert analytic.mu_n(1.0, [1.0]) == pytest.approx(1.0)
    assert analytic.mu_n(0.8, [0.6]) == pytest.approx(0.64, abs=1e-15)
    assert analytic.mu_n(0.8, [0.6], p=0.5) == pytest.approx(0.32, abs=1e-15)


def test_nu_n_values():
    assert analytic.nu_n(0.8) == pytest.approx(0.64, abs=1e-15)
    assert analytic.nu_n(1.0, [1.0]) == pytest.approx(1.0)
    assert analytic.nu_n(0.8, [0.6]) == pytest.approx(0.4352, abs=1e-15)


def test_uncertainty_os1_endpoints():
    for d in (2, 3, 7):
        assert analytic.uncertainty_os1(d, 1.0) == 0.0
        assert analytic.uncertainty_os1(d, 0.0) == pytest.approx(
            2.0 * math.log2(d), abs=1e-12
        )
    with pytest.raises(ValueError):
        analytic.uncertainty_os1(3, -0.1)


def test_uncertainty_os1_qubit_witness_root():
    # the witness threshold log2(2) = 1 bit sits near mu = 0.7799
    assert analytic.uncertainty_os1(2, 0.7799) == pytest.approx(1.0, abs=1e-3)


def test_uncertainty_ts1_same_functional_form():
    for d in (2, 5):
        for val in (0.0, 0.3, 0.8, 1.0):
            assert analytic.uncertainty_ts1(d, val) == analytic.uncertainty_os1(d, val)


def test_uncertainty_os1_monotone_in_mu():
    for d in (2, 3, 10):
        grid = [k / 200 for k in range(201)]
        vals = [analytic.uncertainty_os1(d, m) for m in grid]
        assert all(b < a + 1e-6 for a, b in zip(vals, vals[1:]))


def test_os2_reduces_to_os1():
    for d in (2, 3, 7):
        for g in (0.2, 0.6, 0.95):
            assert analytic.uncertainty_os2(d, g) == pytest.approx(
                analytic.uncertainty_os1(d, g), abs=1e-12
            )
            # lossless predecessors collapse all histories onto one branch
            mu = analytic.mu_n(g, [1.0, 1.0])
            assert analytic.uncertainty_os2(d, g, [1.0, 1.0]) == pytest.approx(
                analytic.uncertainty_os1(d, mu), abs=1e-12
            )


def test_ts2_reduces_to_ts1():
    for d in (2, 5):
        for g in (0.3, 0.9):
            assert analytic.uncertainty_ts2(d, g) == pytest.approx(
                analytic.uncertainty_ts1(d, g * g), abs=1e-12
            )
            nu = analytic.nu_n(g, [1.0])
            assert analytic.uncertainty_ts2(d, g, [1.0]) == pytest.approx(
                analytic.uncertainty_ts1(d, nu), abs=1e-12
            )


def test_isotropic_weight_one_is_identity():
    for scenario in analytic.SCENARIOS:
        a = analytic.scenario_uncertainty(scenario, 3, 0.7, [0.8], 1.0)
        b = analytic.scenario_uncertainty(scenario, 3, 0.7, [0.8])
        assert a == b


def test_scenario_dispatch_rejects_unknown():
    with pytest.raises(ValueError):
        analytic.scenario_uncertainty("os3", 3, 0.5)


def test_ts1_probability_pattern_masses():
    for d in (2, 3, 5):
        for nu in (0.0, 0.44, 1.0):
            on, off, support = analytic.ts1_probability_pattern(d, nu)
            assert len(support) == d
            total = d * on + (d * d - d) * off
            assert total == pytest.approx(1.0, abs=1e-12)
    on, _, support = analytic.ts1_probability_pattern(2, 1.0)
    assert on == pytest.approx(0.5)
    assert set(support) == {(0, 0), (1, 1)}


def test_ts1_pattern_uniform_at_zero_correlation():
    on, off, _ = analytic.ts1_probability_pattern(4, 0.0)
    assert on == off == pytest.approx(1.0 / 16.0)


def test_os2_branch_eigenvalues():
    (e0, m0), (e1, m1) = analytic.os2_branch_eigenvalues(2, 0.8, [0.6], [1])
    assert (m0, m1) == (1, 1)
    assert e0 == pytest.approx((1.0 + 0.48) / 4.0, abs=1e-15)
    (e0, m0), (e1, m1) = analytic.os2_branch_eigenvalues(5, 0.9, [0.7], [0])
    assert (m0, m1) == (1, 4)
    assert e0 == pytest.approx((1.0 + 4 * 0.9) / 25.0, abs=1e-15)
    # normalization: the d outcome blocks together carry unit probability
    assert 5 * (e0 + 4 * e1) == pytest.approx(1.0, abs=1e-12)


def test_os2_branch_eigenvalues_zero_precision():
    (e0, _), (e1, _) = analytic.os2_branch_eigenvalues(3, 0.0, [], [])
    assert e0 == e1 == pytest.approx(1.0 / 9.0)


def test_os2_branch_eigenvalues_rejects_bad_flags():
    with pytest.raises(ValueError):
        analytic.os2_branch_eigenvalues(3, 0.5, [0.5], [])
    with pytest.raises(ValueError):
        analytic.os2_branch_eigenvalues(3, 0.5, [0.5], [2])
