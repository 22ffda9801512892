"""Bergman kernels of planar and generalized annuli, with numerical checks."""
from .annulus import (AnnulusPoint, DecayProfile, KernelValue, boundary_decay_profile,
                      kernel_closed, kernel_series, levi_zeta_component, levi_zeta_fd,
                      remark_identity_residual)
from .circular import (CircularDomainBasis, RadiusFunction, TruncatedKernel, kernel_general,
                       log_kernel, monomial_norm, radius_function, truncated_kernel,
                       truncated_log_kernel, u0_eval)
from .elliptic import (EllipticValue, QuasiPeriods, RectLattice, lattice_reduce, quasi_periods,
                       wp, wp_prime, wzeta)
from .errors import (BergkernError, DimensionMismatch, DomainError, NonConvergence,
                     PoleProximity, StencilOutOfDomain)
from .levi import (HermitianForm, ProductSampler, ScanReport, Shell, complex_hessian_fd,
                   min_eigenvalue, psh_scan, strict_psh_scan)

__version__ = "0.1.0"
