"""Sampled plurisubharmonicity of (zeta, z) -> log K_zeta(z).

Scans 100 quasi-random points of U x ball(C^2) and reports the smallest Levi
eigenvalue for a plurisubharmonic radius and for one that is not.
"""
from bergkern import levi
from bergkern.checks import scan_setup

for name, extra in (("abs", {}), ("sqnorm-affine", {}),
                    ("gauss-bump", {"z_max": 0.05, "zeta_max": 1.0})):
    f, sampler = scan_setup("ball", 2, name, **extra)
    rep = levi.psh_scan(f, sampler, h=1e-4, tol=1e-6, seed=7, count=100)
    print(f"{name:14s} min eigenvalue {rep.global_min:+.3e}   "
          f"samples below -1e-6: {len(rep.flagged)}")

# the smallest eigenvalue for the gauss bump sits where rho is concave
f, sampler = scan_setup("ball", 2, "gauss-bump", z_max=0.05, zeta_max=1.0)
rep = levi.psh_scan(f, sampler, seed=7, count=100)
i = int(rep.min_eigs.argmin())
print("worst point:", rep.points[i])
