import math

import pytest

from entshare import analytic, solver
from entshare.pointer import PointerModel
from entshare.solver import (CriticalResult, ScenarioConfig, alt_mub_witness,
                             chained_critical, critical_g1,
                             critical_gn_averaged, critical_precision,
                             equal_precision_bounds, isotropic_thresholds,
                             max_observers, min_dimension, unsharp_xi)


def _cfg(scenario, d, kind="optimal", p=1.0):
    return ScenarioConfig(scenario=scenario, d=d,
                          pointer=PointerModel(kind=kind, d=d), p=p)


def test_critical_g1_qubit():
    res = critical_g1(_cfg("os1", 2))
    assert res.feasible
    assert res.require() == pytest.approx(0.7799, abs=5e-4)


def test_critical_g1_two_sided_is_square_root():
    for d in (2, 3, 10):
        g_os = critical_g1(_cfg("os1", d)).require()
        g_ts = critical_g1(_cfg("ts1", d)).require()
        assert g_ts**2 == pytest.approx(g_os, abs=1e-8)


def test_critical_g1_pointer_independent():
    vals = {kind: critical_g1(_cfg("os1", 7, kind)).require()
            for kind in ("unsharp", "optimal", "square")}
    assert len({round(v, 12) for v in vals.values()}) == 1


def test_critical_g1_infeasible_below_witness_range():
    res = critical_g1(_cfg("os1", 2, p=0.3))
    assert not res.feasible
    with pytest.raises(ValueError):
        res.require()


def test_chain_formula_lossless_predecessor():
    assert solver._chain_formula("os1", 0.78, [1.0]) == pytest.approx(0.78)
    assert solver._chain_formula("ts1", 0.88, [1.0]) == pytest.approx(0.88)


def test_chained_critical_qubit_closed_form():
    cfg = _cfg("os1", 2)
    g1c = critical_g1(cfg).require()
    res = chained_critical(cfg, 2, [g1c])
    expect = 2.0 * g1c / (1.0 + math.sqrt(1.0 - g1c * g1c))
    assert res.feasible
    assert res.require() == pytest.approx(expect, abs=1e-9)


def test_chained_critical_square_pointer_threshold():
    g33 = critical_g1(_cfg("os1", 33, "square")).require()
    assert not chained_critical(_cfg("os1", 33, "square"), 2, [g33]).feasible
    g34 = critical_g1(_cfg("os1", 34, "square")).require()
    assert chained_critical(_cfg("os1", 34, "square"), 2, [g34]).feasible


def test_chained_critical_rejects_subcritical_predecessor():
    cfg = _cfg("os1", 2)
    g1c = critical_g1(cfg).require()
    with pytest.raises(ValueError):
        chained_critical(cfg, 2, [g1c - 0.05])


def test_chained_critical_scenario_guard():
    with pytest.raises(ValueError):
        chained_critical(_cfg("os2", 3), 2, [0.9])


def test_greedy_predecessors_minimize_the_chain():
    # raising any predecessor precision never lowers the next critical
    for kind in ("unsharp", "optimal", "square"):
        cfg = _cfg("os1", 40, kind)
        g1c = critical_g1(cfg).require()
        base = chained_critical(cfg, 2, [g1c]).g_crit
        for bump in (0.01, 0.05, 0.1):
            raised = chained_critical(cfg, 2, [min(g1c + bump, 1.0)]).g_crit
            assert raised >= base - 1e-12


def test_averaged_critical_matches_direct_root():
    cfg = _cfg("os2", 5)
    res = critical_gn_averaged(cfg, 2)
    assert res.feasible
    u = analytic.uncertainty_os2(5, res.require(), list(res.f_chain))
    assert u == pytest.approx(math.log2(5), abs=1e-7)


def test_averaged_critical_scenario_guard():
    with pytest.raises(ValueError):
        critical_gn_averaged(_cfg("os1", 3), 2)


def test_root_certificates():
    # every feasible critical reproduces the witness threshold
    for scenario in ("os1", "os2", "ts1", "ts2"):
        for d in (3, 17):
            for n in (1, 2):
                res = critical_precision(_cfg(scenario, d), n)
                if not res.feasible:
                    continue
                u = analytic.scenario_uncertainty(scenario, d, res.require(),
                                                  list(res.f_chain))
                assert u == pytest.approx(math.log2(d), abs=1e-7), (scenario, d, n)


def test_max_observers_os2_optimal():
    assert max_observers(_cfg("os2", 9)) == 2
    assert max_observers(_cfg("os2", 10)) == 3


def test_max_observers_os1_unsharp_saturates_at_two():
    for d in (2, 10, 100):
        assert max_observers(_cfg("os1", d, "unsharp")) == 2


def test_max_observers_zero_below_p1():
    assert max_observers(_cfg("os1", 2, p=0.5)) == 0


def test_min_dimension_square_pointer():
    assert min_dimension("os1", "square", 2) == 34


def test_min_dimension_honors_cap():
    assert min_dimension("ts1", "square", 2, d_hi=1000) is None
    with pytest.raises(ValueError):
        min_dimension("os1", "square", 1)


def test_dimension_monotonicity_of_critical_g1():
    prev = None
    for d in range(2, 51):
        g = critical_g1(_cfg("os1", d)).require()
        if prev is not None:
            assert g < prev
        prev = g


def test_unsharp_xi_qubit_reduction():
    g = 0.7799442713
    xi = unsharp_xi(2, g)
    assert xi == pytest.approx(2.0 * math.sqrt(g * (1.0 - g)), abs=1e-9)


def test_unsharp_xi_window_nonempty():
    for d in (3, 10, 100):
        g1c = critical_g1(_cfg("os1", d, "unsharp")).require()
        assert 2.0 * unsharp_xi(d, g1c) / d >= g1c


def test_unsharp_xi_rejects_negative_radicand():
    with pytest.raises(ValueError):
        unsharp_xi(10, 0.01)


def test_isotropic_closed_forms():
    for d in (3, 10, 50):
        g1c = critical_g1(_cfg("os1", d)).require()
        thr = isotropic_thresholds(_cfg("os1", d, "optimal"))
        assert thr.p1 == pytest.approx(g1c, abs=1e-9)
        assert thr.p2 == pytest.approx(1.25 * g1c, abs=1e-12)
        thr = isotropic_thresholds(_cfg("os1", d, "square"))
        assert thr.p2 == pytest.approx(1.5 * g1c, abs=1e-12)
        thr = isotropic_thresholds(_cfg("ts1", d, "optimal"))
        assert thr.p2 == pytest.approx(1.5 * g1c, abs=1e-12)
        thr = isotropic_thresholds(_cfg("os1", d, "unsharp"))
        expect = (3.0 * d - math.sqrt(2.0 * d) - 4.0) * g1c / (2.0 * (d - 2))
        assert thr.p2 == pytest.approx(expect, abs=1e-12)


def test_isotropic_unsharp_qubit_uses_optimal_form():
    g1c = critical_g1(_cfg("os1", 2)).require()
    thr = isotropic_thresholds(_cfg("os1", 2, "unsharp"))
    assert thr.p2 == pytest.approx(1.25 * g1c, abs=1e-12)


def test_isotropic_numeric_p2_certificate():
    for scenario in ("os2", "ts2"):
        cfg = _cfg(scenario, 20, "unsharp")
        thr = isotropic_thresholds(cfg)
        assert thr.feasible
        assert thr.p1 < thr.p2 <= 1.0
        pointer = cfg.pointer
        p2 = thr.p2
        g1 = math.sqrt(thr.p1 / p2) if scenario == "ts2" else thr.p1 / p2
        f1 = pointer.quality(g1)
        u = analytic.scenario_uncertainty(scenario, 20, 1.0, [f1], p2)
        assert u == pytest.approx(math.log2(20), abs=1e-7)


def test_isotropic_ts1_requires_optimal_pointer():
    with pytest.raises(ValueError):
        isotropic_thresholds(_cfg("ts1", 5, "square"))


def test_equal_precision_windows():
    assert equal_precision_bounds(_cfg("os1", 61)) is None
    bounds = equal_precision_bounds(_cfg("os1", 62))
    assert bounds is not None
    g_l, g_u = bounds
    assert 0.0 < g_l < g_u < 1.0
    # both edges sit on the witness threshold
    pointer = PointerModel(kind="optimal", d=62)
    for g in bounds:
        mu = analytic.mu_n(g, [pointer.quality(g)])
        assert analytic.uncertainty_os1(62, mu) == pytest.approx(
            math.log2(62), abs=1e-7
        )


def test_equal_precision_os2_window():
    assert equal_precision_bounds(_cfg("os2", 10)) is None
    bounds = equal_precision_bounds(_cfg("os2", 11))
    assert bounds is not None
    assert bounds[0] < bounds[1]


def test_equal_precision_scenario_guard():
    with pytest.raises(ValueError):
        equal_precision_bounds(_cfg("ts1", 62))


def test_alt_mub_one_sided_insensitive_to_basis_choice():
    canonical = alt_mub_witness(3, [("fourier", "computational")],
                                "one-sided", [1.0])
    quadratic = alt_mub_witness(3, [("quadratic:1", "quadratic:2")],
                                "one-sided", [1.0])
    assert canonical[0][0] == pytest.approx(quadratic[0][0], abs=1e-9)
    assert canonical[0][1] and quadratic[0][1]


def test_alt_mub_two_sided_quadratic_pair_fails():
    for d in (3, 5):
        verdicts = alt_mub_witness(d, [("quadratic:1", "quadratic:2")],
                                   "two-sided", [1.0])
        assert not verdicts[0][1]
        assert verdicts[0][0] >= math.log2(d)


def test_alt_mub_mixed_settings_limit_sharing():
    g1 = critical_g1(_cfg("os1", 5)).require() + 0.01
    mixed = alt_mub_witness(
        5,
        [("fourier", "computational"), ("quadratic:1", "quadratic:2")],
        "one-sided", [g1, 1.0],
    )
    assert mixed[0][1] and not mixed[1][1]
    consistent = alt_mub_witness(
        5,
        [("fourier", "computational"), ("fourier", "computational")],
        "one-sided", [g1, 1.0],
    )
    assert consistent[0][1] and consistent[1][1]


def test_alt_mub_rejects_composite_dimension():
    with pytest.raises(ValueError):
        alt_mub_witness(4, [("fourier", "computational")], "one-sided", [1.0])


def test_scenario_config_validation():
    with pytest.raises(ValueError):
        ScenarioConfig(scenario="bad", d=3, pointer=PointerModel("optimal", 3))
    with pytest.raises(ValueError):
        ScenarioConfig(scenario="os1", d=1, pointer=PointerModel("optimal", 1))
    with pytest.raises(ValueError):
        ScenarioConfig(scenario="os1", d=3,
                       pointer=PointerModel("optimal", 3), p=1.5)


def test_critical_result_require():
    with pytest.raises(ValueError):
        CriticalResult(n=2, feasible=False).require()
