"""Weierstrass functions on the rectangular lattice (2*omega1, 2*pi*i).

Walks through a few basic facts, checking each numerically:
periodicity, the vanishing of wp' at the real half-period, the Legendre
relation between the quasi-periods, and the behaviour of omega1^2 wp(omega1)
as the lattice changes shape.
"""
import math

from bergkern import RectLattice, quasi_periods, wp, wp_prime, wzeta

lat = RectLattice(1.3)
u = 0.4 + 0.7j

# wp is doubly periodic, wzeta picks up 2*eta per real period
print("wp(u)             =", complex(wp(u, lat)))
print("wp(u + 2 omega1)  =", complex(wp(u + 2 * lat.omega1, lat)))
print("wp(u + 2 pi i)    =", complex(wp(u + 2j * math.pi, lat)))
qp = quasi_periods(lat)
shift = complex(wzeta(u + 2 * lat.omega1, lat)) - complex(wzeta(u, lat))
print(f"zeta shift {shift.real:.15f} vs 2 eta {2 * qp.eta:.15f}")

# the real half-period is a critical point of wp
print("wp'(omega1)       =", complex(wp_prime(lat.omega1, lat)))

# Legendre: eta * (pi i) - eta2 * omega1 = pi i / 2
print("Legendre residual =", qp.eta * math.pi * 1j - lat.eta2 * lat.omega1 - math.pi * 1j / 2)

# omega1^2 wp(omega1) approaches pi^2/6 only while the lattice is tall and thin
for w in (0.1, 0.5, 1.0, 2.0, 5.0):
    v = w * w * complex(wp(w, RectLattice(w))).real
    print(f"omega1 = {w:4}: omega1^2 wp(omega1) = {v:.10f}   pi^2/6 = {math.pi ** 2 / 6:.10f}")
