"""Pointer families: quality-factor F versus measurement precision G.

Built-in trade-off curves:

  unsharp  F = [ (d-2)(1-G) + 2 sqrt(1 + (d-2)G - (d-1)G^2) ] / d
  optimal  F = sqrt(1 - G^2)
  square   F = 1 - G

plus user-supplied tabulated curves (e.g. a Gaussian pointer) loaded from a
two-column CSV and interpolated piecewise-linearly.  All curves satisfy
F^2 + G^2 <= 1 and F nonincreasing in G.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

BUILTIN_KINDS = ("unsharp", "optimal", "square")


def unsharp_quality(d: int, g: float) -> float:
    d1, d2 = d - 1, d - 2
    return (d2 * (1.0 - g) + 2.0 * math.sqrt(1.0 + d2 * g - d1 * g * g)) / d


def quality(kind: str, d: int, g: float, curve=None) -> float:
    """Quality factor F at precision G for the given pointer family."""
    if not 0.0 <= g <= 1.0:
        raise ValueError(f"precision must lie in [0, 1], got {g}")
    if kind == "unsharp":
        return unsharp_quality(d, g)
    if kind == "optimal":
        return math.sqrt(max(0.0, 1.0 - g * g))
    if kind == "square":
        return 1.0 - g
    if kind == "custom":
        if curve is None:
            raise ValueError("custom pointer needs a tabulated curve")
        gs, fs = curve
        if g < gs[0] - 1e-15 or g > gs[-1] + 1e-15:
            raise ValueError(
                f"precision {g} outside tabulated domain [{gs[0]}, {gs[-1]}]"
            )
        return float(np.interp(g, gs, fs))
    raise ValueError(f"unknown pointer kind {kind!r}")


def load_curve(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a G,F curve from CSV (header row required, G strictly increasing)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"empty curve file {path}")
    header = rows[0]
    try:
        float(header[0])
    except (ValueError, IndexError):
        pass
    else:
        raise ValueError(f"curve file {path} is missing a header row")
    data = np.array([[float(c) for c in row[:2]] for row in rows[1:]])
    if data.shape[0] < 2:
        raise ValueError("curve needs at least two points")
    gs, fs = data[:, 0], data[:, 1]
    if np.any(np.diff(gs) <= 0):
        raise ValueError("curve G column must be strictly increasing")
    if gs[0] < -1e-12 or gs[-1] > 1 + 1e-12:
        raise ValueError("curve G values must lie in [0, 1]")
    if np.any(fs < -1e-12) or np.any(fs > 1 + 1e-12):
        raise ValueError("curve F values must lie in [0, 1]")
    if np.any(np.diff(fs) > 1e-12):
        raise ValueError("curve F must be nonincreasing in G")
    if np.any(fs**2 + gs**2 > 1 + 1e-12):
        raise ValueError("curve violates F^2 + G^2 <= 1")
    return gs, fs


@dataclass(frozen=True)
class PointerModel:
    """A named F(G) trade-off curve with its validity domain."""

    kind: str
    d: int
    curve: tuple | None = None

    def __post_init__(self):
        if self.kind == "custom" and self.curve is None:
            raise ValueError("custom pointer needs a tabulated curve")
        if self.kind != "custom" and self.kind not in BUILTIN_KINDS:
            raise ValueError(f"unknown pointer kind {self.kind!r}")

    def quality(self, g: float) -> float:
        return quality(self.kind, self.d, g, self.curve)

    def domain(self) -> tuple[float, float]:
        if self.kind == "custom":
            gs = self.curve[0]
            return float(gs[0]), float(gs[-1])
        return 0.0, 1.0


@dataclass(frozen=True)
class PointerAmplitudes:
    """Diagonal (u) and off-diagonal (v) real pointer-state amplitudes."""

    u: float
    v: float


def optimal_amplitudes(d: int, g: float) -> PointerAmplitudes:
    """Amplitudes of the best unbiased pointer at precision G.

    v is fixed by G = 1 - d v^2 and u by normalization u^2 + (d-1) v^2 = 1,
    which maximizes the overlap F = 2uv + (d-2)v^2 at that precision.  For
    d=2 this saturates F^2 + G^2 = 1; for d >= 3 the reconstructed F equals
    the unsharp curve, strictly below the saturating bound.
    """
    if not 0.0 < g < 1.0:
        raise ValueError(f"precision must lie in (0, 1), got {g}")
    v = math.sqrt((1.0 - g) / d)
    u_sq = 1.0 - (d - 1) * v * v
    if u_sq <= 0.0:
        raise ValueError(f"no admissible amplitudes at d={d}, G={g}")
    u = math.sqrt(u_sq)
    if abs((1.0 - d * v * v) - g) > 1e-10:
        raise ValueError("amplitude solve failed to reproduce the precision")
    return PointerAmplitudes(u=u, v=v)


def amplitudes_quality(d: int, amps: PointerAmplitudes) -> float:
    """Overlap F = 2uv + (d-2)v^2 reconstructed from pointer amplitudes."""
    return 2.0 * amps.u * amps.v + (d - 2) * amps.v * amps.v


def unsharp_povm(d: int, lam: float, projectors: np.ndarray):
    """POVM elements and measurement operators of the unsharp measurement.

    Elements  E_i = lam P_i + (1-lam) I / d
    Operators M_i = (sqrt((1+(d-1)lam)/d) - sqrt((1-lam)/d)) P_i
                    + sqrt((1-lam)/d) I
    Returns (elements, operators) as lists of d matrices.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"sharpness must lie in [0, 1], got {lam}")
    eye = np.eye(d, dtype=complex)
    hi = math.sqrt((1.0 + (d - 1) * lam) / d)
    lo = math.sqrt((1.0 - lam) / d)
    elements = [lam * p + (1.0 - lam) / d * eye for p in projectors]
    operators = [(hi - lo) * p + lo * eye for p in projectors]
    return elements, operators
