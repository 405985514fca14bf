"""Exact verification of twist-deformed kappa-Minkowski and kappa-Poincare structures,
with a numerical photon-delay phenomenology layer."""
from .kernels import BACKEND
from .scalar import Scalar
from .series import DEFAULT_ORDER, TruncSeries

__version__ = "0.1.0"
__all__ = ["BACKEND", "DEFAULT_ORDER", "Scalar", "TruncSeries", "__version__"]
