"""Exact Stokes matrices, braid canonical forms and monodromy for the
quantum cohomology of CP^(k-1), with numerical cross-checks."""

from .exact import Mat
from .stokes import build_S, build_T, stokes_data

__all__ = ["Mat", "build_S", "build_T", "stokes_data"]
__version__ = "0.1.0"
