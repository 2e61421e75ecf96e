"""Closed-form uncertainties for the four sequential-measurement scenarios.

Scenario tags: os1/os2 (one-sided, state-averaged / uncertainty-averaged),
ts1/ts2 (two-sided analogs).  All functions are scalar and take quality
factors as explicit lists; pointer resolution lives in the solver.
Entropies are in bits throughout.
"""

from __future__ import annotations

import math
from itertools import product

SCENARIOS = ("os1", "os2", "ts1", "ts2")


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def mu_n(g_n: float, f_list=(), p: float = 1.0) -> float:
    """Effective correlation after one-sided disturbances: p G_n prod (1+F_k)/2."""
    out = p * g_n
    for f in f_list:
        out *= (1.0 + f) / 2.0
    return out


def nu_n(g_n: float, f_list=(), p: float = 1.0) -> float:
    """Two-sided analog of mu_n: squared precision and quality factors."""
    return mu_n(g_n * g_n, [f * f for f in f_list], p)


def uncertainty_os1(d: int, mu: float) -> float:
    """2 [ H2((1 + (d-1)mu)/d) + (d-1)(1-mu)/d log2(d-1) ] bits."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    d1 = d - 1
    val = binary_entropy((1.0 + d1 * mu) / d)
    if d1 > 1:
        val += d1 * (1.0 - mu) / d * math.log2(d1)
    return 2.0 * val


def uncertainty_ts1(d: int, nu: float) -> float:
    return uncertainty_os1(d, nu)


def _avg_uncertainty(d: int, g: float, f_list) -> float:
    """Average uncertainty over the 2^(n-1) shared-setting histories.

    Sums H2((1 + (d-1) g prod F_k^{i_k})/d) over exponent patterns with
    i_0 = 0 fixed, plus the degeneracy term, scaled by 1/2^(n-2).
    """
    d1 = d - 1
    n = len(f_list) + 1
    acc = 0.0
    for bits in product((0, 1), repeat=n - 1):
        eff = g
        for f, b in zip(f_list, bits):
            if b:
                eff *= f
        acc += binary_entropy((1.0 + d1 * eff) / d)
    if d1 > 1:
        acc += d1 / d * 2.0 ** (n - 1) * (1.0 - mu_n(g, f_list)) * math.log2(d1)
    return acc / 2.0 ** (n - 2)


def uncertainty_os2(d: int, g_n: float, f_list=(), p: float = 1.0) -> float:
    return _avg_uncertainty(d, p * g_n, list(f_list))


def uncertainty_ts2(d: int, g_n: float, f_list=(), p: float = 1.0) -> float:
    return _avg_uncertainty(d, p * g_n * g_n, [f * f for f in f_list])


def scenario_uncertainty(scenario: str, d: int, g_n: float, f_list=(),
                         p: float = 1.0) -> float:
    """Dispatch to the closed form of the given scenario."""
    if scenario == "os1":
        return uncertainty_os1(d, mu_n(g_n, f_list, p))
    if scenario == "ts1":
        return uncertainty_ts1(d, nu_n(g_n, f_list, p))
    if scenario == "os2":
        return uncertainty_os2(d, g_n, f_list, p)
    if scenario == "ts2":
        return uncertainty_ts2(d, g_n, f_list, p)
    raise ValueError(f"unknown scenario {scenario!r}")


def ts1_probability_pattern(d: int, nu: float):
    """(correlated-cell mass, off-cell mass, support S) of the outcome table.

    S is the anticorrelated support for the Fourier pair on the maximally
    entangled state: x1 + x2 = 0 mod d (for the computational pair the
    support is the diagonal z1 = z2 instead).
    """
    if not 0.0 <= nu <= 1.0:
        raise ValueError(f"nu must lie in [0, 1], got {nu}")
    d1 = d - 1
    on = (1.0 + d1 * nu) / d**2
    off = (1.0 - nu) / d**2
    support = ((0, 0),) + tuple((k, d - k) for k in range(1, d))
    return on, off, support


def os2_branch_eigenvalues(d: int, g_n: float, f_list, deltas):
    """Reduced-state eigenvalues of one shared-setting history.

    deltas[k] is 1 when predecessor k measured the other observable.
    Returns ((eps0, 1), (eps1, d-1)) with multiplicities.
    """
    if len(deltas) != len(f_list):
        raise ValueError("need one delta flag per predecessor quality factor")
    eff = g_n
    for f, delta in zip(f_list, deltas):
        if delta not in (0, 1):
            raise ValueError(f"delta flags must be 0 or 1, got {delta}")
        if delta:
            eff *= f
    d1 = d - 1
    eps0 = (1.0 + d1 * eff) / d**2
    eps1 = (1.0 - eff) / d**2
    return (eps0, 1), (eps1, d1)
