"""Critical precisions, observer counts, and threshold searches.

Inverts the closed forms in `analytic`: solves the transcendental witness
equations U = log2(d) by bisection, chains critical precisions through the
pointer trade-off, and searches dimensions for feasibility thresholds.
All chains use the greedy-minimal convention: every predecessor measures
exactly at its own critical precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import analytic, oracle
from .mub import basis_from_label
from .pointer import PointerModel

G_TOL = 1e-9
MAX_BISECT = 200
MAX_LEVELS = 16


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    d: int
    pointer: PointerModel
    p: float = 1.0

    def __post_init__(self):
        if self.scenario not in analytic.SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"isotropic weight must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class CriticalResult:
    n: int
    feasible: bool
    g_crit: float | None = None
    f_chain: tuple = ()
    bracket: tuple | None = None
    tol: float = G_TOL

    def require(self) -> float:
        if not self.feasible or self.g_crit is None:
            raise ValueError(f"level {self.n} is infeasible")
        return self.g_crit


def bisect(fun, lo: float, hi: float, xtol: float = G_TOL,
           maxiter: int = MAX_BISECT) -> float:
    """Root of a sign-changing function on [lo, hi] by plain bisection."""
    flo, fhi = fun(lo), fun(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fmid = fun(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
        if hi - lo <= xtol:
            break
    return 0.5 * (lo + hi)


def critical_mu(d: int, xtol: float = G_TOL) -> float:
    """Root mu* of the one-sided witness equation U(mu) = log2(d)."""
    target = math.log2(d)
    return bisect(lambda m: analytic.uncertainty_os1(d, m) - target, 0.0, 1.0, xtol)


def critical_g1(config: ScenarioConfig, xtol: float = G_TOL) -> CriticalResult:
    """Critical precision of the first observer (pointer-independent).

    One-sided: root of U(p G) = log2(d) in G.  Two-sided: the square root of
    the one-sided critical.  Infeasible when p is below the witness range.
    """
    d, p = config.d, config.p
    target = math.log2(d)
    if p == 0.0 or analytic.uncertainty_os1(d, p) - target > 0.0:
        return CriticalResult(n=1, feasible=False, tol=xtol)
    g_os = bisect(
        lambda g: analytic.uncertainty_os1(d, p * g) - target, 0.0, 1.0, xtol
    )
    if config.scenario.startswith("ts"):
        g = math.sqrt(g_os)
    else:
        g = g_os
    return CriticalResult(n=1, feasible=True, g_crit=g, bracket=(0.0, 1.0), tol=xtol)


def _chain_formula(scenario: str, g1c: float, f_values) -> float:
    """Closed-form chained critical for OS1/TS1 given predecessor qualities."""
    if scenario.startswith("os"):
        out = g1c
        for f in f_values:
            out *= 2.0 / (1.0 + f)
        return out
    out = g1c
    for f in f_values:
        out *= math.sqrt(2.0 / (1.0 + f * f))
    return out


def chained_critical(config: ScenarioConfig, n: int, g_choices) -> CriticalResult:
    """Critical precision of observer n given predecessors' actual precisions.

    OS:  G_{n,c} = 2^n G_{1,c} / prod_{k=0}^{n-1} (1 + F_k)
    TS:  G_{n,c} = 2^{n/2} G_{1,c} / sqrt(prod (1 + F_k^2))
    with F_0 = 1 and F_k taken from the pointer curve at g_choices[k-1].
    Raises when a predecessor sits below its own critical precision.
    """
    if config.scenario not in ("os1", "ts1"):
        raise ValueError("chained criticals apply to the OS1/TS1 scenarios")
    if len(g_choices) != n - 1:
        raise ValueError(f"need {n - 1} predecessor precisions, got {len(g_choices)}")
    first = critical_g1(config)
    if not first.feasible:
        return CriticalResult(n=n, feasible=False)
    g1c = first.require()
    f_values = []
    for level, g in enumerate(g_choices, start=1):
        level_crit = _chain_formula(config.scenario, g1c, f_values)
        if g < level_crit - 1e-12:
            raise ValueError(
                f"predecessor {level} at G={g} is below its critical {level_crit}"
            )
        f_values.append(config.pointer.quality(g))
    gnc = _chain_formula(config.scenario, g1c, f_values)
    return CriticalResult(
        n=n, feasible=gnc <= 1.0 + 1e-12, g_crit=gnc, f_chain=tuple(f_values)
    )


def _averaged_level(config: ScenarioConfig, f_values, xtol: float) -> float | None:
    """Solve the averaged witness equation for the next observer, or None."""
    d, p = config.d, config.p
    target = math.log2(d)
    two_sided = config.scenario.startswith("ts")
    unc = analytic.uncertainty_ts2 if two_sided else analytic.uncertainty_os2
    fun = lambda g: unc(d, g, f_values, p) - target
    if fun(1.0) > 0.0:
        return None
    return bisect(fun, 0.0, 1.0, xtol)


def critical_gn_averaged(config: ScenarioConfig, n: int,
                         xtol: float = G_TOL) -> CriticalResult:
    """Critical precision of observer n in the OS2/TS2 scenarios.

    Predecessors are placed greedily at their own averaged criticals; each
    level solves the averaged-uncertainty equation by bisection.
    """
    if config.scenario not in ("os2", "ts2"):
        raise ValueError("averaged criticals apply to the OS2/TS2 scenarios")
    if n < 1:
        raise ValueError(f"observer index must be >= 1, got {n}")
    first = critical_g1(config, xtol)
    if not first.feasible:
        return CriticalResult(n=n, feasible=False, tol=xtol)
    g_levels = [first.require()]
    f_values: list[float] = []
    for level in range(2, n + 1):
        f_values.append(config.pointer.quality(g_levels[-1]))
        g = _averaged_level(config, f_values, xtol)
        if g is None:
            return CriticalResult(
                n=n, feasible=False, f_chain=tuple(f_values), tol=xtol
            )
        g_levels.append(g)
    return CriticalResult(
        n=n, feasible=True, g_crit=g_levels[-1], f_chain=tuple(f_values),
        bracket=(0.0, 1.0), tol=xtol,
    )


def critical_precision(config: ScenarioConfig, n: int,
                       xtol: float = G_TOL) -> CriticalResult:
    """Greedy critical precision of observer n for any scenario."""
    if config.scenario in ("os1", "ts1"):
        greedy: list[float] = []
        for level in range(1, n):
            res = chained_critical(config, level, greedy)
            if not res.feasible:
                return CriticalResult(n=n, feasible=False)
            greedy.append(res.require())
        return chained_critical(config, n, greedy)
    return critical_gn_averaged(config, n, xtol)


def max_observers(config: ScenarioConfig, cap: int = MAX_LEVELS) -> int:
    """Largest n for which the greedy chain stays feasible (0 if none)."""
    count = 0
    for n in range(1, cap + 1):
        if not critical_precision(config, n).feasible:
            break
        count = n
    return count


def min_dimension(scenario: str, pointer_kind: str, target_n: int,
                  d_hi: int = 10**10, curve=None) -> int | None:
    """Smallest d whose greedy chain supports target_n observers.

    Exponential bracketing followed by integer bisection; relies on the
    (empirically verified) monotonicity of feasibility in d.  Returns None
    when no dimension up to d_hi works.
    """
    if target_n < 2:
        raise ValueError("threshold search needs target_n >= 2")

    def feasible(d: int) -> bool:
        pointer = PointerModel(kind=pointer_kind, d=d, curve=curve)
        cfg = ScenarioConfig(scenario=scenario, d=d, pointer=pointer)
        return critical_precision(cfg, target_n).feasible

    lo, hi = 1, 2
    while not feasible(hi):
        lo, hi = hi, hi * 2
        if hi > d_hi:
            return None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def unsharp_xi(d: int, g1c: float) -> float:
    """Feasibility-window parameter of the unsharp pointer in OS1.

    xi = (d-2)(1 - G1c) + sqrt(2 (1 - G1c) (2 (d-1) G1c - (d-2)));
    the window for the first observer is G1 in [G1c, 2 xi / d].
    """
    d1, d2 = d - 1, d - 2
    radicand = 2.0 * (1.0 - g1c) * (2.0 * d1 * g1c - d2)
    if radicand < 0.0:
        raise ValueError(f"no feasibility window at d={d}, G1c={g1c}")
    return d2 * (1.0 - g1c) + math.sqrt(radicand)


@dataclass(frozen=True)
class IsotropicThresholds:
    p1: float
    p2: float
    feasible: bool  # p2 <= 1


def isotropic_thresholds(config: ScenarioConfig,
                         xtol: float = G_TOL) -> IsotropicThresholds:
    """(p1, p2): minimum mixing for one observer / for two observers.

    p1 = G_{1,c}^OS.  p2 comes from the closed forms where they exist
    (OS1 unsharp/optimal/square, TS1 optimal) and otherwise from solving
    the averaged equation with G1 = G_{1,c}/p and G2 = 1.
    """
    d = config.d
    kind = config.pointer.kind
    base = ScenarioConfig(scenario="os1", d=d, pointer=config.pointer, p=1.0)
    g1c = critical_g1(base, xtol).require()
    scenario = config.scenario
    if scenario == "os1":
        if kind == "optimal" or (kind == "unsharp" and d == 2):
            p2 = 5.0 * g1c / 4.0
        elif kind == "unsharp":
            p2 = (3.0 * d - math.sqrt(2.0 * d) - 4.0) * g1c / (2.0 * (d - 2))
        elif kind == "square":
            p2 = 3.0 * g1c / 2.0
        else:
            raise ValueError(f"no closed OS1 threshold for pointer {kind!r}")
    elif scenario == "ts1":
        if kind != "optimal":
            raise ValueError("TS1 isotropic threshold is derived for the "
                             "optimal pointer only")
        p2 = 3.0 * g1c / 2.0
    else:
        p2 = _isotropic_averaged_p2(config, g1c, xtol)
    return IsotropicThresholds(p1=g1c, p2=p2, feasible=p2 <= 1.0 + 1e-12)


def _isotropic_averaged_p2(config: ScenarioConfig, g1c: float,
                           xtol: float) -> float:
    """Numeric p2 for OS2/TS2: first observer at critical, second at G=1."""
    d = config.d
    target = math.log2(d)
    two_sided = config.scenario == "ts2"
    unc = analytic.uncertainty_ts2 if two_sided else analytic.uncertainty_os2

    def fun(p: float) -> float:
        g1 = math.sqrt(g1c / p) if two_sided else g1c / p
        f1 = config.pointer.quality(min(g1, 1.0))
        return unc(d, 1.0, [f1], p) - target

    lo = g1c  # below this the first observer would need G1 > 1
    if fun(1.0) > 0.0:
        return math.inf
    if fun(lo) <= 0.0:
        return lo
    return bisect(fun, lo, 1.0, xtol)


def equal_precision_bounds(config: ScenarioConfig, xtol: float = G_TOL,
                           grid: int = 4001):
    """(G_L, G_U) window where two observers witness at equal precision.

    Scans the second observer's uncertainty over the pointer domain, then
    bisects on both sides of its minimum.  Returns None when the minimum
    never reaches log2(d).
    """
    if config.scenario not in ("os1", "os2"):
        raise ValueError("equal-precision bounds apply to OS1/OS2 only")
    d, p = config.d, config.p
    target = math.log2(d)
    pointer = config.pointer

    def fun(g: float) -> float:
        f1 = pointer.quality(g)
        if config.scenario == "os1":
            return analytic.uncertainty_os1(d, analytic.mu_n(g, [f1], p)) - target
        return analytic.uncertainty_os2(d, g, [f1], p) - target

    lo, hi = pointer.domain()
    gs = [lo + (hi - lo) * k / (grid - 1) for k in range(grid)]
    vals = [fun(g) for g in gs]
    # The averaged uncertainty touches log2(d) exactly at G=1, so endpoint
    # signs are float noise; require a genuinely negative interior dip.
    neg = [k for k, v in enumerate(vals) if v < -1e-12]
    if not neg:
        return None
    k0, k1 = neg[0], neg[-1]
    below = [k for k in range(k0) if vals[k] > 0.0]
    above = [k for k in range(k1 + 1, grid) if vals[k] > 0.0]
    g_l = bisect(fun, gs[below[-1]], gs[below[-1] + 1], xtol) if below else gs[0]
    g_u = bisect(fun, gs[above[0] - 1], gs[above[0]], xtol) if above else gs[-1]
    return g_l, g_u


def alt_mub_witness(d: int, settings, scenario: str, g_list,
                    pointer_kind: str = "optimal"):
    """Per-observer witness verdicts for arbitrary MUB measurement settings.

    settings[k] is a (label_x, label_z) pair of basis labels for observer
    k+1; labels are 'computational', 'fourier', or 'quadratic:<r>'.  Runs
    the brute-force oracle on the maximally entangled state, so d must stay
    small.  Returns a list of (uncertainty_bits, witnessed) per observer.
    """
    from .mub import is_odd_prime

    if d != 2 and not is_odd_prime(d):
        raise ValueError(f"alternative-MUB analysis needs a prime d, got {d}")
    if len(settings) != len(g_list):
        raise ValueError("need one precision per observer")
    if scenario not in ("one-sided", "two-sided"):
        raise ValueError(f"unknown scenario {scenario!r}")
    side = "A" if scenario == "one-sided" else "both"
    pairs = [
        (basis_from_label(d, lx).projectors(), basis_from_label(d, lz).projectors())
        for lx, lz in settings
    ]
    target = math.log2(d)
    state = oracle.maximally_entangled(d)
    verdicts = []
    for k, ((proj_x, proj_z), g) in enumerate(zip(pairs, g_list)):
        if side == "A":
            u = oracle.uncertainty_one_sided(state, proj_x, proj_z, g)
        else:
            u = oracle.uncertainty_two_sided(state, proj_x, proj_z, g)
        verdicts.append((u, u < target - 1e-12))
        if k + 1 < len(pairs):
            f = PointerModel(kind=pointer_kind, d=d).quality(g)
            spec_x = oracle.InstrumentSpec(projectors=proj_x, F=f, G=0.0, side=side)
            spec_z = oracle.InstrumentSpec(projectors=proj_z, F=f, G=0.0, side=side)
            state = 0.5 * (
                oracle.nonselective_map(state, spec_x)
                + oracle.nonselective_map(state, spec_z)
            )
    return verdicts
