"""Exact harmonic analysis on local fields: characters, Fourier transforms of
compact open sets and discrete measures, spectral-pair checks, the
homogeneity/tile/spectrum triad on Z/p^nZ, Landau operators and
self-similar measures."""

from .balls import Ball, CompactOpenSet
from .cyclotomic import CyclotomicSum, RootOfUnityPhase
from .errors import (
    CertificateError,
    InvalidSetError,
    LocalSpectraError,
    ModelMismatchError,
    PrecisionError,
    SearchBudgetExceeded,
)
from .field import FieldModel, LocalFieldElement, Vector
from .fourier import (
    AtomicMeasure,
    FourierValue,
    SelfSimilarMeasure,
    UniformCompactOpen,
    fourier_transform,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "Ball",
    "CertificateError",
    "CompactOpenSet",
    "CyclotomicSum",
    "FieldModel",
    "FourierValue",
    "InvalidSetError",
    "LocalFieldElement",
    "LocalSpectraError",
    "ModelMismatchError",
    "PrecisionError",
    "RootOfUnityPhase",
    "SearchBudgetExceeded",
    "SelfSimilarMeasure",
    "UniformCompactOpen",
    "Vector",
    "fourier_transform",
]
