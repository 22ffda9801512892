"""Bergman kernel of the planar annulus {r < |z| < 1} and its zeta-Levi form.

Two evaluators are provided for the diagonal kernel:

* :func:`kernel_closed` uses the Weierstrass form
  ``K = (wp(u) + c) / (pi |z|^2)`` with ``u = -2 log|z|``, periods
  ``2*omega1 = -2 log r`` and ``2*pi*i``, and ``c = zeta(omega1) / omega1``.
* :func:`kernel_series` sums the Laurent-monomial expansion
  ``sum_n |z|^{2n} / ||z^n||^2`` with a certified truncation.

The two share no code, so agreement between them checks the normalisation
of the closed form as well as the elliptic evaluator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .elliptic import RectLattice, wp
from .errors import DomainError, NonConvergence

SERIES_TERM_CAP = 10 ** 6
DEFAULT_H = 1e-4
RICHARDSON_TOL = 1e-5


@dataclass(frozen=True)
class AnnulusPoint:
    """A point ``z`` of the annulus ``A_zeta = {|zeta| < |z| < 1}``."""

    zeta: complex
    z: complex
    u: float = field(init=False)
    omega1: float = field(init=False)

    def __post_init__(self):
        zeta, z = complex(self.zeta), complex(self.z)
        r, s = abs(zeta), abs(z)
        if not 0 < r < 1:
            raise DomainError(f"need 0 < |zeta| < 1, got {r!r}")
        if not r < s < 1:
            raise DomainError(f"need |zeta| < |z| < 1, got |zeta|={r!r}, |z|={s!r}")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "u", -2.0 * math.log(s))
        object.__setattr__(self, "omega1", -math.log(r))

    @property
    def lattice(self) -> RectLattice:
        return RectLattice(self.omega1)

    @property
    def c(self) -> float:
        lat = self.lattice
        return lat.eta / lat.omega1


@dataclass(frozen=True)
class KernelValue:
    value: float
    method: str

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class DecayRow:
    z_abs: float
    u: float
    levi_value: float
    ratio_to_previous: float


@dataclass(frozen=True)
class DecayProfile:
    rows: tuple
    approach: str


def kernel_closed(p: AnnulusPoint) -> KernelValue:
    lat = p.lattice
    wp_u = complex(wp(p.u, lat)).real
    value = (wp_u + lat.eta / lat.omega1) / (math.pi * abs(p.z) ** 2)
    if not value > 0:
        raise ArithmeticError(f"non-positive kernel value {value!r} at {p}")
    return KernelValue(value, "closed")


def series_cutoffs(r: float, s: float, eps: float) -> tuple[int, int, float]:
    """Index window ``[-k_neg, n_pos]`` whose omitted tail is below ``eps``.

    With ``x = s^2`` the terms for ``n >= 0`` are
    ``(n+1) x^n / (pi (1 - r^{2n+2}))``; for ``n > N`` the denominator is at
    least ``pi (1 - r^{2N+4})`` and ``sum_{n>N} (n+1) x^n`` has the closed form
    ``x^{N+1} ((N+2)/(1-x) + x/(1-x)^2)``.

    Writing ``n = -k`` with ``k >= 2`` and ``y = (r/s)^2`` the terms are
    ``(k-1) y^k / (pi r^2 (1 - r^{2k-2}))``, and for ``k > K`` the tail is at
    most ``y^{K+1} (K/(1-y) + y/(1-y)^2) / (pi r^2 (1 - r^{2K}))``.

    Each tail is held below ``eps/2``.  Returns ``(n_pos, k_neg, bound)``.
    """
    x, y = s * s, (r / s) ** 2

    def pos_tail(N):
        return x ** (N + 1) * ((N + 2) / (1 - x) + x / (1 - x) ** 2) / (
            math.pi * (1 - r ** (2 * N + 4)))

    def neg_tail(K):
        return y ** (K + 1) * (K / (1 - y) + y / (1 - y) ** 2) / (
            math.pi * r * r * (1 - r ** (2 * K)))

    def first_below(tail, start):
        # tails are eventually decreasing; step geometrically then bisect
        lo, hi = start, start
        while tail(hi) >= eps / 2:
            lo, hi = hi, 2 * hi + 1
            if hi > SERIES_TERM_CAP:
                raise NonConvergence(
                    f"more than {SERIES_TERM_CAP} terms needed for eps={eps!r} (r={r}, s={s})")
        while lo < hi:
            mid = (lo + hi) // 2
            if tail(mid) < eps / 2:
                hi = mid
            else:
                lo = mid + 1
        return hi

    n_pos = first_below(pos_tail, 0)
    k_neg = first_below(neg_tail, 1)
    return n_pos, k_neg, pos_tail(n_pos) + neg_tail(k_neg)


def laurent_terms(r: float, s: float, n_pos: int, k_neg: int) -> np.ndarray:
    """Terms ``s^{2n} / ||z^n||^2`` for ``n = -k_neg .. n_pos``."""
    n = np.arange(-k_neg, n_pos + 1, dtype=float)
    lr, ls = math.log(r), math.log(s)
    out = np.empty_like(n)
    pos = n >= 0
    out[pos] = (n[pos] + 1) * np.exp(2 * n[pos] * ls) / (math.pi * -np.expm1((2 * n[pos] + 2) * lr))
    k = -n[n <= -2]
    # s^{-2k} (k-1) / (pi (r^{2-2k} - 1)) = (k-1) (r/s)^{2k} / (pi r^2 (1 - r^{2k-2}))
    out[n <= -2] = (k - 1) * np.exp(2 * k * (lr - ls)) / (math.pi * r * r * -np.expm1((2 * k - 2) * lr))
    out[n == -1] = 1.0 / (s * s * 2 * math.pi * -lr)
    return out


def kernel_series(r: float, s: float, eps: float = 1e-14) -> KernelValue:
    """Laurent-series Bergman kernel of ``{r < |z| < 1}`` at ``|z| = s``.

    Uses ``||z^n||^2 = pi (1 - r^{2n+2}) / (n+1)`` for ``n != -1`` and
    ``||z^-1||^2 = 2 pi log(1/r)``; the truncation is certified by
    :func:`series_cutoffs`.
    """
    r, s = float(r), float(s)
    if not 0 < r < s < 1:
        raise DomainError(f"need 0 < r < s < 1, got r={r!r}, s={s!r}")
    if not eps > 0:
        raise DomainError("eps must be positive")
    n_pos, k_neg, _ = series_cutoffs(r, s, eps)
    return KernelValue(math.fsum(laurent_terms(r, s, n_pos, k_neg)), "series")


# -- zeta-direction Levi form -------------------------------------------------

def levi_zeta_component(p: AnnulusPoint) -> float:
    """Closed-form value of d^2 log K / d zeta d zeta-bar stated for this family.

    Evaluated term by term as
    ``e^{2 w} (2 P(u) - P(w) + c)(P(w) + c) / (4 w^2 (P(u) + c)^2)`` with
    ``w = omega1`` and ``P`` the Weierstrass function.
    """
    lat = p.lattice
    w = lat.omega1
    c = lat.eta / w
    pu = complex(wp(p.u, lat)).real
    pw = complex(wp(w, lat)).real
    return math.exp(2 * w) * (2 * pu - pw + c) * (pw + c) / (4 * w * w * (pu + c) ** 2)


def _kernel_evaluator(method) -> Callable[[complex, complex], float]:
    if callable(method):
        return method
    if method == "closed":
        return lambda zeta, z: kernel_closed(AnnulusPoint(zeta, z)).value
    if method == "series":
        # K >= 1/pi, so this eps keeps the relative truncation error below 1e-17
        return lambda zeta, z: kernel_series(abs(zeta), abs(z), eps=1e-17).value
    raise ValueError(f"unknown kernel method {method!r}")


def _zeta_stencil(p: AnnulusPoint, h: float):
    pts = [p.zeta + h, p.zeta - h, p.zeta + 1j * h, p.zeta - 1j * h]
    s = abs(p.z)
    for q in pts:
        if not 0 < abs(q) < s:
            raise DomainError(f"stencil point {q!r} leaves the region 0 < |zeta| < |z| (h={h})")
    return pts


def _default_h(p: AnnulusPoint) -> float:
    r = abs(p.zeta)
    return min(DEFAULT_H, 0.25 * min(r, abs(p.z) - r))


def _laplace_quarter(f, p: AnnulusPoint, h: float) -> float:
    xp, xm, yp, ym = (f(q, p.z) for q in _zeta_stencil(p, h))
    return (xp + xm + yp + ym - 4 * f(p.zeta, p.z)) / (4 * h * h)


def levi_zeta_fd(p: AnnulusPoint, h: float | None = None, method="closed") -> float:
    """Finite-difference d^2 log K / d zeta d zeta-bar at fixed ``z``.

    ``method`` is ``"closed"`` or ``"series"`` (the kernel is evaluated and its
    logarithm differentiated), or a callable ``f(zeta, z)`` which is
    differentiated as given.  A Richardson step with ``h/2`` is taken when the
    two estimates differ by more than 1e-5 relative.
    """
    if callable(method):
        f = method
    else:
        K = _kernel_evaluator(method)
        f = lambda zeta, z: math.log(K(zeta, z))  # noqa: E731
    if h is None:
        h = _default_h(p)
    d1 = _laplace_quarter(f, p, h)
    d2 = _laplace_quarter(f, p, h / 2)
    if abs(d1 - d2) > RICHARDSON_TOL * max(abs(d2), 1e-300):
        return (4 * d2 - d1) / 3
    return d2


def remark_identity_residual(p: AnnulusPoint, h: float | None = None, method="closed"):
    """Compare d^2 K / d zeta d zeta-bar with |dK / d zeta|^2 by central differences.

    Returns ``(lhs, rhs, lhs - rhs)``.  ``method`` selects the kernel as in
    :func:`levi_zeta_fd`; a callable is used as ``K`` directly.
    """
    K = _kernel_evaluator(method)
    if h is None:
        h = _default_h(p)
    xp, xm, yp, ym = (K(q, p.z) for q in _zeta_stencil(p, h))
    k0 = K(p.zeta, p.z)
    lhs = (xp + xm + yp + ym - 4 * k0) / (4 * h * h)
    dz = 0.5 * ((xp - xm) - 1j * (yp - ym)) / (2 * h)
    rhs = abs(dz) ** 2
    return lhs, rhs, lhs - rhs


def boundary_decay_profile(zeta: complex, approach: str, ks: Sequence[int]) -> DecayProfile:
    """Sample the closed-form zeta-Levi value as ``z`` tends to a boundary circle.

    ``approach="outer"`` uses ``|z| = 1 - 10^-k``; ``"inner"`` uses
    ``|z| = |zeta| + 10^-k (1 - |zeta|)``.
    """
    ks = list(ks)
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("ks must be a nonempty increasing sequence")
    r = abs(zeta)
    rows = []
    prev = None
    for k in ks:
        if approach == "outer":
            s = 1 - 10.0 ** -k
        elif approach == "inner":
            s = r + 10.0 ** -k * (1 - r)
        else:
            raise ValueError(f"approach must be 'outer' or 'inner', got {approach!r}")
        p = AnnulusPoint(zeta, s)
        val = levi_zeta_component(p)
        ratio = val / prev if prev else math.nan
        rows.append(DecayRow(s, p.u, val, ratio))
        prev = val
    return DecayProfile(tuple(rows), approach)
