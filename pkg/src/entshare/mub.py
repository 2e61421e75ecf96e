"""Mutually unbiased bases for qudits and POVM incompatibility.

Provides the computational basis, the Fourier basis, and (for odd prime d)
the quadratic-phase family that completes a set of d+1 MUBs.  At d=2 the
quadratic slot is the sigma_y eigenbasis, so all three Pauli eigenbases are
reachable through the same interface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOL = 1e-12


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Basis:
    """An orthonormal basis of C^d.  Row a of `vectors` is the a-th vector."""

    d: int
    label: str
    vectors: np.ndarray

    def projectors(self) -> "ProjectorSet":
        vecs = self.vectors
        projs = np.einsum("ai,aj->aij", vecs, vecs.conj())
        return ProjectorSet(d=self.d, projectors=projs)


@dataclass(frozen=True)
class ProjectorSet:
    """Rank-one projectors of a basis, stacked along the first axis."""

    d: int
    projectors: np.ndarray


def computational_basis(d: int) -> Basis:
    """Standard basis |0>, ..., |d-1>."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return Basis(d=d, label="computational", vectors=np.eye(d, dtype=complex))


def fourier_basis(d: int) -> Basis:
    """Basis with components exp(i 2 pi x n / d) / sqrt(d)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    x = np.arange(d)
    phases = np.exp(2j * np.pi * np.outer(x, x) / d)
    return Basis(d=d, label="fourier", vectors=phases / np.sqrt(d))


def quadratic_mub(d: int, r: int) -> Basis:
    """Quadratic-phase MUB: components exp(i 2 pi r (a+n)^2 / d) / sqrt(d).

    Requires odd prime d.  The special case d=2, r=1 returns the sigma_y
    eigenbasis so the three qubit Pauli bases run through one interface.
    """
    if d == 2:
        if r != 1:
            raise ValueError(f"index r must be 1 for d=2, got {r}")
        vecs = np.array([[1.0, 1.0j], [1.0, -1.0j]], dtype=complex) / np.sqrt(2.0)
        return Basis(d=2, label="quadratic(1)", vectors=vecs)
    if not is_odd_prime(d):
        raise ValueError(f"quadratic MUBs need an odd prime dimension, got {d}")
    if not 1 <= r <= d - 1:
        raise ValueError(f"index r must be in 1..{d - 1}, got {r}")
    a = np.arange(d)[:, None]
    n = np.arange(d)[None, :]
    vecs = np.exp(2j * np.pi * r * (a + n) ** 2 / d) / np.sqrt(d)
    return Basis(d=d, label=f"quadratic({r})", vectors=vecs)


def basis_from_label(d: int, label: str) -> Basis:
    """Parse 'computational', 'fourier', or 'quadratic:<r>'."""
    if label == "computational":
        return computational_basis(d)
    if label == "fourier":
        return fourier_basis(d)
    if label.startswith("quadratic:"):
        return quadratic_mub(d, int(label.split(":", 1)[1]))
    raise ValueError(f"unknown basis label {label!r}")


def incompatibility(povm_x, povm_z) -> float:
    """max_{x,z} tr(X_x Z_z) for two POVMs given as lists of elements."""
    for elems in (povm_x, povm_z):
        dim = elems[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for e in elems:
            if np.min(np.linalg.eigvalsh(e)) < -1e-10:
                raise ValueError("POVM element is not positive semidefinite")
            total += e
        if np.max(np.abs(total - np.eye(dim))) > 1e-10:
            raise ValueError("POVM elements do not sum to the identity")
    best = 0.0
    for ex in povm_x:
        for ez in povm_z:
            best = max(best, float(np.trace(ex @ ez).real))
    return best
