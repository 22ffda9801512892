"""Bergman kernel of a planar annulus, two ways.

The diagonal kernel of {r < |z| < 1} is computed from the Weierstrass
closed form and from the Laurent expansion.  The two agree to rounding.
Then we look at the second zeta-derivative of log K.
"""
from bergkern import AnnulusPoint, kernel_closed, kernel_series
from bergkern.annulus import boundary_decay_profile, levi_zeta_component, levi_zeta_fd

r = 0.3
print(" |z|      closed               series               rel diff")
for s in (0.35, 0.5, 0.7, 0.9, 0.99):
    kc = kernel_closed(AnnulusPoint(r, s)).value
    ks = kernel_series(r, s).value
    print(f"{s:5.2f}  {kc:.15e}  {ks:.15e}  {abs(kc - ks) / ks:.1e}")

# The zeta-Levi form of log K by finite differences, on both evaluators,
# next to the closed expression implemented in levi_zeta_component.
print("\n |z|   fd(closed)     fd(series)     formula")
for s in (0.4, 0.6, 0.9):
    p = AnnulusPoint(r, s)
    print(f"{s:4.2f}  {levi_zeta_fd(p):.8f}  {levi_zeta_fd(p, method='series'):.8f}"
          f"  {levi_zeta_component(p):.8f}")

# The formula decays as |z| -> 1, roughly by a factor 100 per decade.
for row in boundary_decay_profile(r, "outer", [1, 2, 3, 4]).rows:
    print(f"|z| = {row.z_abs:.4f}  value = {row.levi_value:.3e}  ratio = {row.ratio_to_previous:.4f}")
