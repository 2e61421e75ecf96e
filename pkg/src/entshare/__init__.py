"""Entanglement-sharing thresholds for sequentially measured two-qudit states."""

from .mub import Basis, ProjectorSet, computational_basis, fourier_basis, \
    incompatibility, quadratic_mub
from .pointer import PointerModel, load_curve, optimal_amplitudes, quality, \
    unsharp_povm
from .solver import CriticalResult, ScenarioConfig, chained_critical, \
    critical_g1, critical_gn_averaged, equal_precision_bounds, \
    isotropic_thresholds, max_observers, min_dimension, unsharp_xi

__version__ = "0.1.0"

__all__ = [
    "Basis", "ProjectorSet", "computational_basis", "fourier_basis",
    "quadratic_mub", "incompatibility",
    "PointerModel", "quality", "optimal_amplitudes", "unsharp_povm",
    "load_curve",
    "ScenarioConfig", "CriticalResult", "critical_g1", "chained_critical",
    "critical_gn_averaged", "max_observers", "min_dimension", "unsharp_xi",
    "isotropic_thresholds", "equal_precision_bounds",
    "__version__",
]
