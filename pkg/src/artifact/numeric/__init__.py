"""Numerical verification: integral solutions, asymptotics, ODE continuation
and the numerically recovered Stokes matrix."""

from .formal import asymptotic_check, phi_formal
from .mellin import QuadratureConfig, SectorError, cyclic_identity_residual, mellin_barnes_g
from .ode import PathSpec, ode_integrate
from .spectral import SpectralData, spectral_data
from .stokes_num import NumericConfig, NumericToleranceError, numeric_cyclic_monodromy, numeric_stokes

__all__ = [
    "NumericConfig",
    "NumericToleranceError",
    "PathSpec",
    "QuadratureConfig",
    "SectorError",
    "SpectralData",
    "asymptotic_check",
    "cyclic_identity_residual",
    "mellin_barnes_g",
    "numeric_cyclic_monodromy",
    "numeric_stokes",
    "ode_integrate",
    "phi_formal",
    "spectral_data",
]
