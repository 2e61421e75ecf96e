"""Brute-force density-matrix simulation of the measurement chains.

Everything here works on explicit d^2 x d^2 complex matrices and exists to
cross-validate the closed forms in `analytic` at small d.  The dimension is
capped at d <= 11 (matrix dimension 121) and chain length at 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .mub import ProjectorSet, computational_basis, fourier_basis

MAX_DIM = 11
MAX_CHAIN = 4
EIG_FLOOR = -1e-10


class NumericFailure(RuntimeError):
    """An intermediate state violated positivity beyond tolerance."""


@dataclass(frozen=True)
class InstrumentSpec:
    """One weak measurement: basis projectors, quality F, precision G, side."""

    projectors: ProjectorSet
    F: float
    G: float
    side: str = "A"  # "A" or "both"

    def __post_init__(self):
        if not (0.0 <= self.F <= 1.0 and 0.0 <= self.G <= 1.0):
            raise ValueError("F and G must lie in [0, 1]")
        if self.F**2 + self.G**2 > 1.0 + 1e-12:
            raise ValueError("spec violates F^2 + G^2 <= 1")
        if self.side not in ("A", "both"):
            raise ValueError(f"side must be 'A' or 'both', got {self.side!r}")


def _check_dim(d: int):
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if d > MAX_DIM:
        raise ValueError(f"oracle is capped at d <= {MAX_DIM}, got {d}")


def maximally_entangled(d: int) -> np.ndarray:
    """|Psi+><Psi+| with |Psi+> = sum_k |kk> / sqrt(d)."""
    _check_dim(d)
    psi = np.zeros(d * d, dtype=complex)
    psi[:: d + 1] = 1.0 / math.sqrt(d)
    return np.outer(psi, psi.conj())


def isotropic(d: int, p: float) -> np.ndarray:
    """p |Psi+><Psi+| + (1-p) I / d^2.  Separable for p <= 1/(d+1)."""
    _check_dim(d)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    return p * maximally_entangled(d) + (1.0 - p) * np.eye(d * d) / d**2


def is_separable_isotropic(d: int, p: float) -> bool:
    return p <= 1.0 / (d + 1)


def ptrace_a(rho: np.ndarray, d: int) -> np.ndarray:
    return np.einsum("abac->bc", rho.reshape(d, d, d, d))


def ptrace_b(rho: np.ndarray, d: int) -> np.ndarray:
    return np.einsum("abcb->ac", rho.reshape(d, d, d, d))


def _dim_of(rho: np.ndarray) -> int:
    d = math.isqrt(rho.shape[0])
    if d * d != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a d^2 x d^2 matrix, got shape {rho.shape}")
    return d


def _clean_eigvals(mat: np.ndarray) -> np.ndarray:
    vals = np.linalg.eigvalsh(mat)
    if np.min(vals) < EIG_FLOOR:
        raise NumericFailure(f"eigenvalue {np.min(vals)} below positivity floor")
    return np.clip(vals, 0.0, None)


def entropy_bits(mat: np.ndarray) -> float:
    """-tr(rho log2 rho) with 0 log 0 = 0; works for unnormalized states."""
    vals = _clean_eigvals(mat)
    nz = vals[vals > 0]
    return float(-(nz * np.log2(nz)).sum())


def _dephase_a(rho: np.ndarray, projs: np.ndarray, d: int) -> np.ndarray:
    eye = np.eye(d)
    out = np.zeros_like(rho)
    for p in projs:
        big = np.kron(p, eye)
        out += big @ rho @ big
    return out


def _dephase_b(rho: np.ndarray, projs: np.ndarray, d: int) -> np.ndarray:
    eye = np.eye(d)
    out = np.zeros_like(rho)
    for p in projs:
        big = np.kron(eye, p)
        out += big @ rho @ big
    return out


def _dephase_ab(rho: np.ndarray, projs: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho)
    for pa in projs:
        for pb in projs:
            big = np.kron(pa, pb)
            out += big @ rho @ big
    return out


def nonselective_map(rho: np.ndarray, spec: InstrumentSpec) -> np.ndarray:
    """Nonselective weak-measurement channel, one- or two-sided.

    One-sided:  F rho + (1-F) sum_i P_i rho P_i           (on A)
    Two-sided:  F^2 rho + F(1-F)(D_A + D_B) + (1-F)^2 D_AB
    where D are the dephasing sums; the two-sided form is the three-term
    map with coefficients F, (1-F), (F^2-F) after regrouping.
    """
    d = _dim_of(rho)
    if spec.projectors.d != d:
        raise ValueError("projector dimension does not match the state")
    projs = spec.projectors.projectors
    f = spec.F
    if spec.side == "A":
        return f * rho + (1.0 - f) * _dephase_a(rho, projs, d)
    da = _dephase_a(rho, projs, d)
    db = _dephase_b(rho, projs, d)
    dab = _dephase_ab(rho, projs)
    return f * f * rho + f * (1.0 - f) * (da + db) + (1.0 - f) * (1.0 - f) * dab


def selective_post_state(rho: np.ndarray, spec: InstrumentSpec, i: int):
    """(p_i, unnormalized post-state) of outcome i for a one-sided measurement.

    rho_tilde = [Fc rho + (1 + (d-1)G - Fc) P rho P + (1 - G - Fc) Q rho Q]/d
    with Fc = sqrt((1 + (d-1)G)(1 - G)), P = P_i (x) I and Q = (I - P_i) (x) I.
    """
    d = _dim_of(rho)
    g = spec.G
    if not 0 <= i < d:
        raise ValueError(f"outcome index {i} out of range for d={d}")
    fc = math.sqrt((1.0 + (d - 1) * g) * (1.0 - g))
    eye = np.eye(d)
    p_big = np.kron(spec.projectors.projectors[i], eye)
    q_big = np.kron(eye - spec.projectors.projectors[i], eye)
    tilde = (
        fc * rho
        + (1.0 + (d - 1) * g - fc) * (p_big @ rho @ p_big)
        + (1.0 - g - fc) * (q_big @ rho @ q_big)
    ) / d
    prob = g * float(np.trace(p_big @ rho).real) + (1.0 - g) / d
    if abs(float(np.trace(tilde).real) - prob) > 1e-10:
        raise NumericFailure("selective state trace does not match its probability")
    return prob, tilde


def two_sided_probs(rho: np.ndarray, spec_a: InstrumentSpec,
                    spec_b: InstrumentSpec) -> np.ndarray:
    """d x d outcome table of simultaneous weak measurements on A and B.

    Raw four-term overlap form; reduces to the (1+(d-1)G)^2 / (1-G)^2 / Fc^2
    display when both precisions are equal.
    """
    d = _dim_of(rho)
    pa = spec_a.projectors.projectors
    pb = spec_b.projectors.projectors
    joint = np.empty((d, d))
    for k in range(d):
        for l in range(d):
            joint[k, l] = float(np.trace(np.kron(pa[k], pb[l]) @ rho).real)

    def weights(g):
        w = np.full((d, d), (1.0 - g) / d)
        np.fill_diagonal(w, (1.0 + (d - 1) * g) / d)
        return w

    table = weights(spec_a.G) @ joint @ weights(spec_b.G).T
    if abs(table.sum() - 1.0) > 1e-10:
        raise NumericFailure("outcome table does not sum to 1")
    return table


def sequential_state(rho0: np.ndarray, proj_x: ProjectorSet, proj_z: ProjectorSet,
                     f_list, side: str = "A", mode: str = "averaged"):
    """State(s) reaching observer n after n-1 nonselective disturbances.

    Each predecessor slot k applies the nonselective map with quality
    f_list[k] in either the X or Z basis; 'averaged' returns the uniform
    mixture over the 2^(n-1) choices, 'per-history' the list of branches.
    """
    if len(f_list) >= MAX_CHAIN:
        raise ValueError(f"oracle chains are capped at {MAX_CHAIN} observers")
    if mode not in ("averaged", "per-history"):
        raise ValueError(f"unknown mode {mode!r}")
    branches = []
    for choices in product((proj_x, proj_z), repeat=len(f_list)):
        state = rho0
        for projs, f in zip(choices, f_list):
            state = nonselective_map(
                state, InstrumentSpec(projectors=projs, F=f, G=0.0, side=side)
            )
        branches.append(state)
    if mode == "per-history":
        return branches
    return sum(branches) / len(branches)


def uncertainty_one_sided(rho: np.ndarray, proj_x: ProjectorSet,
                          proj_z: ProjectorSet, g: float) -> float:
    """H(X|B) + H(Z|B) in bits for a one-sided measurement with precision G."""
    d = _dim_of(rho)
    s_b = entropy_bits(ptrace_a(rho, d))
    total = 0.0
    for projs in (proj_x, proj_z):
        spec = InstrumentSpec(projectors=projs, F=0.0, G=g, side="A")
        acc = 0.0
        for i in range(d):
            _, tilde = selective_post_state(rho, spec, i)
            acc += entropy_bits(ptrace_a(tilde, d))
        total += acc - s_b
    return total


def _conditional_entropy(table: np.ndarray) -> float:
    """H(first outcome | second outcome) of a joint probability table, bits."""
    flat = table[table > 0]
    h_joint = float(-(flat * np.log2(flat)).sum())
    marg = table.sum(axis=0)
    marg = marg[marg > 0]
    return h_joint - float(-(marg * np.log2(marg)).sum())


def uncertainty_two_sided(rho: np.ndarray, proj_x: ProjectorSet,
                          proj_z: ProjectorSet, g: float) -> float:
    """H(X|X) + H(Z|Z) in bits for matched two-sided measurements."""
    total = 0.0
    for projs in (proj_x, proj_z):
        spec = InstrumentSpec(projectors=projs, F=0.0, G=g, side="both")
        total += _conditional_entropy(two_sided_probs(rho, spec, spec))
    return total


def scenario_uncertainty(scenario: str, d: int, g_n: float, f_list=(),
                         p: float = 1.0, proj_x: ProjectorSet | None = None,
                         proj_z: ProjectorSet | None = None) -> float:
    """End-to-end brute-force uncertainty seen by observer n.

    Starts from the isotropic state, applies the predecessor chain for the
    given scenario, and evaluates the entropic uncertainty of the final
    measurement.  Defaults to the Fourier/computational MUB pair.
    """
    if proj_x is None:
        proj_x = fourier_basis(d).projectors()
    if proj_z is None:
        proj_z = computational_basis(d).projectors()
    rho0 = isotropic(d, p)
    side = "A" if scenario.startswith("os") else "both"
    measure = uncertainty_one_sided if side == "A" else uncertainty_two_sided
    if scenario in ("os1", "ts1"):
        state = sequential_state(rho0, proj_x, proj_z, f_list, side, "averaged")
        return measure(state, proj_x, proj_z, g_n)
    if scenario in ("os2", "ts2"):
        branches = sequential_state(rho0, proj_x, proj_z, f_list, side, "per-history")
        return sum(measure(b, proj_x, proj_z, g_n) for b in branches) / len(branches)
    raise ValueError(f"unknown scenario {scenario!r}")
