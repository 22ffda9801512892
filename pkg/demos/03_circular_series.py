"""Series kernels of a ball with a dilated ball removed.

For n >= 2 the monomial series is the full Bergman kernel.  Increasing
the precision request increases the degree cutoff, and the certified tail
bound tracks it.
"""
import numpy as np

from bergkern import CircularDomainBasis, radius_function
from bergkern.circular import truncated_kernel, truncated_log_kernel

basis = CircularDomainBasis("ball", 2)
rho = radius_function("sqnorm-affine", m=1)
zeta = np.array([0.4])
z = np.array([0.5 + 0.1j, -0.3j])
print(f"rho(zeta) = {rho(zeta):.4f}, |z| = {np.linalg.norm(z):.4f}")

for eps in (1e-4, 1e-8, 1e-12, 1e-16):
    tk = truncated_kernel(basis, rho, zeta, z, eps)
    print(f"eps = {eps:.0e}: degree cutoff {tk.k:3d}, K = {tk.value:.16f}, tail <= {tk.tail_bound:.1e}")

# partial sums of log K converge from below
for k in (0, 2, 5, 10, 20, 40):
    print(f"k = {k:2d}: log partial sum = {truncated_log_kernel(basis, rho, zeta, z, k):.12f}")

# the polydisc works the same way
pd = CircularDomainBasis("polydisc", 2)
print("polydisc K =", truncated_kernel(pd, rho, zeta, np.array([0.5, 0.5j])).value)
