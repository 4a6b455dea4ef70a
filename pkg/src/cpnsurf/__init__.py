"""Projector chains of CP^{N-1} sigma models and their soliton surfaces in su(N)."""

from .chain import (CurveNotFullRank, HolomorphicCurve, ProjectorChain, build_chain, polynomial_curve,
                    veronese_curve)
from .jets import Jet, JetOrderError, SingularNormalization
from .linalg import DimensionError, NotHermitianError, NotSuError, killing_inner, matrix_exp
from .minkowski import TravelingWaveModel, rotating_wave_profile
from .spectral import SpectralParams, SpectralPole, sym_tafel_surface, wavefunction
from .suite import registry_coverage, run_suite
from .surfaces import SurfaceSample, projector_from_surface, weierstrass_surface

__all__ = [
    "CurveNotFullRank", "HolomorphicCurve", "ProjectorChain", "build_chain", "polynomial_curve",
    "veronese_curve", "Jet", "JetOrderError", "SingularNormalization", "DimensionError",
    "NotHermitianError", "NotSuError", "killing_inner", "matrix_exp", "TravelingWaveModel",
    "rotating_wave_profile", "SpectralParams", "SpectralPole", "sym_tafel_surface", "wavefunction",
    "registry_coverage", "run_suite", "SurfaceSample", "projector_from_surface", "weierstrass_surface",
]
