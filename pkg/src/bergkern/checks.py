"""Named identity and property checks, grouped into suites with a JSON report."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import annulus, circular, elliptic, levi
from .annulus import AnnulusPoint


@dataclass(frozen=True)
class Check:
    """One comparison ``lhs`` vs ``rhs``.

    Passing means ``rel_diff <= tol``, or ``abs_diff <= tol`` when ``rhs`` is
    zero or ``absolute`` is set.  Report-only checks carry ``passed = None``.
    """

    name: str
    lhs: complex
    rhs: complex
    tol: float | None = None
    report_only: bool = False
    absolute: bool = False

    @property
    def abs_diff(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def rel_diff(self) -> float:
        return self.abs_diff / abs(self.rhs) if self.rhs != 0 else math.nan

    @property
    def passed(self) -> bool | None:
        if self.report_only:
            return None
        if self.absolute or self.rhs == 0:
            return bool(self.abs_diff <= self.tol)
        return bool(self.rel_diff <= self.tol)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _jnum(self.lhs),
            "rhs": _jnum(self.rhs),
            "abs_diff": _jnum(self.abs_diff),
            "rel_diff": _jnum(self.rel_diff),
            "tol": self.tol,
            "pass": self.passed,
            "report_only": self.report_only,
        }


def _jnum(x):
    x = complex(x)
    if x.imag != 0:
        return [_jreal(x.real), _jreal(x.imag)]
    return _jreal(x.real)


def _jreal(x: float):
    if math.isnan(x) or math.isinf(x):
        return None
    # 17 significant digits, stable across runs
    return float(format(x, ".17g"))


@dataclass
class CheckReport:
    suite: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def add(self, *args, **kwargs) -> Check:
        c = Check(*args, **kwargs)
        self.checks.append(c)
        return c

    def in_range(self, name: str, value: float, lo: float, hi: float) -> Check:
        """Asserted check that ``value`` lies in ``[lo, hi]``; ``abs_diff`` is the excursion."""
        return self.add(name, value, min(max(value, lo), hi), 0.0, absolute=True)

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def failures(self) -> list:
        return [c for c in self.checks if c.passed is False]

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


# -- elliptic identities ------------------------------------------------------------

IDENTITY_OMEGAS = (0.1, 0.5, 1.0, 2.0, 5.0)
IDENTITY_TOL = 1e-10


def _d1_fd(g, u, h):
    """Sixth-order central first derivative."""
    return (45 * (g(u + h) - g(u - h)) - 9 * (g(u + 2 * h) - g(u - 2 * h))
            + (g(u + 3 * h) - g(u - 3 * h))) / (60 * h)


def suite_identities(omega1s=IDENTITY_OMEGAS, tol: float = IDENTITY_TOL) -> CheckReport:
    rep = CheckReport("identities", config={"omega1": list(omega1s), "tol": tol})
    for w1 in omega1s:
        lat = elliptic.RectLattice(w1)
        wp = lambda u: elliptic.wp(u, lat)  # noqa: E731
        wz = lambda u: elliptic.wzeta(u, lat)  # noqa: E731
        eta = wz(w1)
        eta2 = wz(np.pi * 1j)
        pw1 = wp(w1)
        tag = f"[omega1={w1:g}]"
        samples = [0.37 * w1 + 0.21j, -0.6 * w1 + 1.3j, 0.15 * w1 - 2.2j]
        for i, u in enumerate(samples):
            rep.add(f"zeta quasi-period 2*omega1 {tag} u{i}", wz(u + 2 * w1) - wz(u), 2 * eta, tol)
            rep.add(f"zeta quasi-period 2*pi*i {tag} u{i}", wz(u + 2j * np.pi) - wz(u), 2 * eta2, tol)
            rep.add(f"wp period 2*omega1 {tag} u{i}", wp(u + 2 * w1), wp(u), tol)
            rep.add(f"wp period 2*pi*i {tag} u{i}", wp(u + 2j * np.pi), wp(u), tol)
            rep.add(f"wp even {tag} u{i}", wp(-u), wp(u), tol)
            rep.add(f"zeta odd {tag} u{i}", wz(-u), -wz(u), tol)
            rep.add(f"wp' odd {tag} u{i}", elliptic.wp_prime(-u, lat), -elliptic.wp_prime(u, lat), tol)
            h = 1e-3 * min(w1, 1.0)
            rep.add(f"zeta' = -wp (FD) {tag} u{i}", _d1_fd(wz, u, h), -wp(u), tol)
        rep.add(f"wp'(omega1) = 0 {tag}", elliptic.wp_prime(w1, lat), 0.0, tol * abs(pw1))
        rep.add(f"zeta(omega1 - 2*omega1) shift gives 2*eta {tag}",
                wz(-w1 + 0.3 * w1 + 2 * w1) - wz(-w1 + 0.3 * w1), 2 * eta, tol)
        rep.add(f"Legendre relation {tag}", eta * np.pi * 1j - eta2 * w1, np.pi * 1j / 2, tol)
        rep.add(f"omega1^2 wp(omega1) vs pi^2/6 {tag}", w1 * w1 * pw1, np.pi ** 2 / 6,
                report_only=True)
    return rep


# -- annulus kernel -----------------------------------------------------------------

GRID_R = (0.1, 0.3, 0.5, 0.7)


def kernel_grid(n_s: int = 10):
    """(r, s) pairs: for each r, ``n_s`` radii strictly between r and 1."""
    return [(r, float(s)) for r in GRID_R for s in np.linspace(r, 1, n_s + 2)[1:-1]]


def suite_kernels(tol: float = 1e-8, eps: float = 1e-14) -> CheckReport:
    """Closed form vs Laurent series; n = 1 circular series alongside (report-only)."""
    rep = CheckReport("kernels", config={"tol": tol, "eps": eps, "r": list(GRID_R)})
    basis = circular.CircularDomainBasis("ball", 1)
    rho = circular.radius_function("abs")
    for r, s in kernel_grid():
        closed = annulus.kernel_closed(AnnulusPoint(r, s)).value
        series = annulus.kernel_series(r, s, eps).value
        rep.add(f"closed vs series r={r:g} s={s:.6g}", closed, series, tol)
        gen = circular.kernel_general(basis, rho, r, s, eps).value
        rep.add(f"n=1 circular series vs closed r={r:g} s={s:.6g}", gen, closed, report_only=True)
    return rep


THEOREM12_POINTS = ((0.3, 0.6), (0.3, 0.9), (0.5, 0.7), (0.1, 0.5), (0.7, 0.8), (0.3j, 0.4),
                    (0.2, 0.95), (0.6, 0.65))


def suite_theorem12(points=THEOREM12_POINTS, h: float = 1e-4, fd_tol: float = 1e-5) -> CheckReport:
    """Closed-form zeta-Levi value against finite differences.

    The closed/series FD agreement is asserted; the formula comparison is
    report-only.
    """
    rep = CheckReport("theorem12", config={"h": h, "fd_tol": fd_tol,
                                          "points": [[_jnum(a), _jnum(b)] for a, b in points]})
    for zeta, z in points:
        p = AnnulusPoint(zeta, z)
        tag = f"zeta={zeta} z={z}"
        fd_closed = annulus.levi_zeta_fd(p, h, "closed")
        fd_series = annulus.levi_zeta_fd(p, h, "series")
        rep.add(f"levi FD closed vs series {tag}", fd_closed, fd_series, fd_tol)
        rep.add(f"levi formula vs FD {tag}", annulus.levi_zeta_component(p), fd_closed,
                report_only=True)
    return rep


def suite_remark32(points=THEOREM12_POINTS, h: float = 1e-4) -> CheckReport:
    rep = CheckReport("remark32", config={"h": h})
    for zeta, z in points:
        lhs, rhs, _ = annulus.remark_identity_residual(AnnulusPoint(zeta, z), h)
        rep.add(f"d2K/dzeta dzetabar vs |dK/dzeta|^2 zeta={zeta} z={z}", lhs, rhs, report_only=True)
    return rep


def suite_corollary13(zeta: complex = 0.3, ks=(1, 2, 3, 4)) -> CheckReport:
    """Decay of the zeta-Levi formula at both boundary circles (asserted)."""
    rep = CheckReport("corollary13", config={"zeta": _jnum(zeta), "ks": list(ks)})
    for approach in ("outer", "inner"):
        prof = annulus.boundary_decay_profile(zeta, approach, ks)
        vals = [r.levi_value for r in prof.rows]
        for a, b in zip(prof.rows, prof.rows[1:]):
            rep.in_range(f"{approach} step ratio < 1 at |z|={b.z_abs:.10g}",
                         b.levi_value / a.levi_value, 0.0, 1.0 - 1e-15)
        rep.in_range(f"{approach} final / first < 1e-3", vals[-1] / vals[0], 0.0, 1e-3)
        if approach == "outer":
            for k, row in zip(ks, prof.rows):
                if k >= 2:
                    # u^2 law predicts 1e-2
                    rep.in_range(f"outer ratio k={k} in [5e-3, 5e-2]", row.ratio_to_previous,
                                 5e-3, 5e-2)
    return rep


# -- plurisubharmonicity scans -------------------------------------------------------------

def scan_setup(domain: str, dim: int, rho_name: str, m: int = 1, z_max: float = 0.9,
               zeta_min: float | None = None, zeta_max: float | None = None):
    """Field ``log K`` on U x Omega and a sampler for it."""
    basis = circular.CircularDomainBasis(domain, dim)
    rho = circular.radius_function(rho_name, m)
    if zeta_min is None:
        zeta_min = 0.1 if rho_name in ("abs", "abs-power") else 0.0
    if zeta_max is None:
        zeta_max = 0.9
    sampler = levi.ProductSampler((levi.Shell(m, zeta_min, zeta_max),
                                   levi.Shell(dim, 0.0, z_max, domain)))

    def field_fn(w):
        return circular.log_kernel(basis, rho, w[:m], w[m:])

    return field_fn, sampler


def suite_theorem11(count: int = 100, seed: int = 7, h: float = levi.DEFAULT_H,
                    tol: float = levi.DEFAULT_TOL, workers: int = 1) -> CheckReport:
    rep = CheckReport("theorem11", config={"count": count, "seed": seed, "h": h, "tol": tol})
    f, sampler = scan_setup("ball", 2, "abs")
    scan = levi.psh_scan(f, sampler, h, tol, seed, count, workers)
    rep.in_range("psh scan ball C^2 rho=abs: global min eigenvalue >= -tol", scan.global_min,
                 -tol, math.inf)
    rep.add("psh scan stencil failures", float(len(scan.errors)), 0.0, 0.0, absolute=True)
    f, sampler = scan_setup("ball", 2, "sqnorm-affine")
    strict = levi.strict_psh_scan(f, sampler, h, 0.0, seed, count, workers)
    rep.add("strict scan ball C^2 rho=sqnorm-affine: samples with min eigenvalue <= 0",
            float(len(strict.flagged)), 0.0, 0.0, absolute=True)
    rep.in_range("strict scan: global min eigenvalue > 0", strict.global_min, 1e-300, math.inf)
    return rep


def suite_remark21(count: int = 100, seed: int = 7, h: float = levi.DEFAULT_H,
                   threshold: float = 1e-4, workers: int = 1) -> CheckReport:
    rep = CheckReport("remark21", config={"count": count, "seed": seed, "h": h,
                                         "threshold": threshold})
    f, sampler = scan_setup("ball", 2, "gauss-bump", z_max=0.05, zeta_max=1.0)
    scan = levi.psh_scan(f, sampler, h, threshold, seed, count, workers)
    rep.in_range("gauss-bump: global min eigenvalue <= -threshold", scan.global_min,
                 -math.inf, -threshold)
    return rep


SUITES = {
    "identities": suite_identities,
    "kernels": suite_kernels,
    "theorem12": suite_theorem12,
    "remark32": suite_remark32,
    "corollary13": suite_corollary13,
    "theorem11": suite_theorem11,
    "remark21": suite_remark21,
}
