"""
c3a: leading-order asymptotics of continuous-spectrum eigenfunctions for three
charged three-dimensional particles.

Modules
-------
geometry   Jacobi coordinates, channel maps, matching-region classifier
specfun    log-Gamma and the Kummer function Phi(-i eta, 1, i s)
twobody    two-body Coulomb waves, scattering kernels, partial-wave operators
bbk        product-of-distortions approximant and its near-screen expansion
rkernel    coefficients of the spectral kernel for near-screen solutions
assembly   near-screen surrogate, partition of unity, blended field
residual   finite-difference discrepancy and decay fits
quad       spherical quadrature and test functions
weakform3  structural terms of the three-body weak asymptotics
scenario   JSON scenario configuration
cli        command-line runner
"""

__version__ = "0.1.0"

from .geometry import ConfigPoint, MomentumPoint, RegionParams  # noqa: E402
from .bbk import BBKContext, BBKField  # noqa: E402
from .assembly import PartitionSpec, PsiAsField  # noqa: E402

__all__ = [
    "__version__",
    "ConfigPoint",
    "MomentumPoint",
    "RegionParams",
    "BBKContext",
    "BBKField",
    "PartitionSpec",
    "PsiAsField",
]
