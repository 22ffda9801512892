"""Series Bergman kernels of generalized annuli ``Omega - closure(rho(zeta) * Omega)``.

``Omega`` is the unit ball or the unit polydisc in C^n.  Monomials ``z^alpha``
are orthogonal on both, and removing the dilate ``rho * Omega`` scales the
squared norm of a degree ``j`` monomial by ``1 - rho^{2j+2n}``, so the kernel
on the diagonal is

    K_zeta(z) = sum_j  S_j(z) / (1 - rho(zeta)^{2j+2n}),
    S_j(z)    = sum_{|alpha| = j} |z^alpha|^2 / ||z^alpha||^2_Omega.

Norms are taken with Lebesgue measure; nothing is rescaled to unit volume.
For n >= 2 every holomorphic function on the annulus extends to ``Omega``, so
this is the Bergman kernel of the annulus.  For n = 1 the same series is only
the part of the Laurent expansion with nonnegative powers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Sequence

import numpy as np

from .annulus import KernelValue
from .errors import DimensionMismatch, DomainError, NonConvergence

DEGREE_CAP = 10 ** 6
KINDS = ("ball", "polydisc")
PSH_CLASSES = ("psh", "strictly-psh", "not-psh")


@lru_cache(maxsize=None)
def _multi_indices(n: int, j: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(n), j):
        alpha = [0] * n
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return tuple(out)


@dataclass(frozen=True)
class CircularDomainBasis:
    """Monomial orthogonal basis of the unit ball or unit polydisc in C^n."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n!r}")

    def multi_indices(self, j: int) -> tuple:
        """All ``alpha`` with ``|alpha| = j``; there are C(j+n-1, n-1) of them."""
        return _multi_indices(self.n, j)

    def dimension(self, j: int) -> int:
        return math.comb(j + self.n - 1, self.n - 1)

    def norm(self, alpha: Sequence[int]) -> float:
        return monomial_norm(self, alpha)

    @property
    def volume(self) -> float:
        return monomial_norm(self, (0,) * self.n)

    def point(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if z.shape != (self.n,):
            raise DimensionMismatch(f"expected a point of C^{self.n}, got shape {z.shape}")
        return z

    def gauge(self, z) -> float:
        """Minkowski functional of the domain; ``z`` lies in it iff the gauge is < 1."""
        z = self.point(z)
        if self.kind == "ball":
            return float(np.linalg.norm(z))
        return float(np.max(np.abs(z)))

    def degree_sums(self, z, jmax: int) -> np.ndarray:
        """``S_j(z)`` for ``j = 0 .. jmax``."""
        z = self.point(z)
        j = np.arange(jmax + 1)
        x = np.abs(z) ** 2
        if self.kind == "ball":
            # sum_{|alpha|=j} (j!/alpha!) |z^alpha|^2 = |z|^{2j}
            logc = (np.array([math.lgamma(k + self.n + 1) - math.lgamma(k + 1) for k in j])
                    - self.n * math.log(math.pi))
            t = float(x.sum())
            if t == 0:
                out = np.zeros(jmax + 1)
                out[0] = math.exp(logc[0])
                return out
            return np.exp(logc + j * math.log(t))
        # polydisc: generating function prod_i 1 / (pi (1 - x_i T)^2)
        out = np.zeros(jmax + 1)
        out[0] = 1.0
        for xi in x:
            factor = (j + 1) * xi ** j
            out = np.convolve(out, factor)[: jmax + 1]
        return out / math.pi ** self.n

    def _tail_shape(self):
        # S_j <= const * C(j+M-1, M-1) g^j with g = gauge^2
        if self.kind == "ball":
            return self.n + 1, math.factorial(self.n) / math.pi ** self.n
        return 2 * self.n, 1.0 / math.pi ** self.n

    def tail_bound(self, g: float, k: int, rho: float) -> float:
        """Upper bound for ``sum_{j>k} S_j / (1 - rho^{2j+2n})`` when gauge^2 = g.

        ``b_j = C(j+M-1, M-1) g^j`` has ratio ``b_{j+1}/b_j = (j+M) g / (j+1)``,
        decreasing in ``j``; once that ratio at ``j = k+1`` is below one the tail
        is dominated by a geometric series.  Returns ``inf`` before that point.
        """
        M, const = self._tail_shape()
        ratio = (k + 1 + M) * g / (k + 2)
        if ratio >= 1:
            return math.inf
        if g == 0:
            return 0.0
        log_b = (math.lgamma(k + M + 1) - math.lgamma(k + 2) - math.lgamma(M)
                 + (k + 1) * math.log(g))
        denom = -math.expm1((2 * k + 2 + 2 * self.n) * math.log(rho))
        return const * math.exp(log_b) / (1 - ratio) / denom


def monomial_norm(basis: CircularDomainBasis, alpha: Sequence[int]) -> float:
    """Squared L^2 norm of ``z^alpha`` over the domain (Lebesgue measure)."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != basis.n:
        raise DimensionMismatch(f"multi-index of length {len(alpha)} for n = {basis.n}")
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index entries must be nonnegative")
    if basis.kind == "ball":
        log_num = sum(math.lgamma(a + 1) for a in alpha)
        log_den = math.lgamma(basis.n + sum(alpha) + 1)
        return math.pi ** basis.n * math.exp(log_num - log_den)
    return math.prod(math.pi / (a + 1) for a in alpha)


# -- radius functions -----------------------------------------------------------

@dataclass(frozen=True)
class RadiusFunction:
    """A radius ``rho: U -> (0, 1)`` with a declared plurisubharmonicity class."""

    id: str
    m: int
    func: Callable[[np.ndarray], float]
    psh_class: str
    domain_check: Callable[[np.ndarray], bool]
    boundary_distance: Callable[[np.ndarray], float]

    def point(self, zeta) -> np.ndarray:
        zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
        if zeta.shape != (self.m,):
            raise DimensionMismatch(f"{self.id} takes a point of C^{self.m}, got shape {zeta.shape}")
        return zeta

    def contains(self, zeta) -> bool:
        return bool(self.domain_check(self.point(zeta)))

    def __call__(self, zeta) -> float:
        zeta = self.point(zeta)
        if not self.domain_check(zeta):
            raise DomainError(f"zeta={zeta} is outside the domain of {self.id}")
        val = float(self.func(zeta))
        if not 0 < val < 1:
            raise DomainError(f"{self.id}({zeta}) = {val} is not in (0, 1)")
        return val


def _punctured_disc(zeta):
    return 0 < abs(zeta[0]) < 1


def _punctured_disc_dist(zeta):
    r = abs(zeta[0])
    return min(r, 1 - r)


def radius_function(name: str, m: int = 1, a: float = 1.0) -> RadiusFunction:
    """Build a catalog radius function.

    ``abs``            |zeta| on the punctured disc (psh)
    ``abs-power``      |zeta|^a, a > 0, on the punctured disc (psh)
    ``sqnorm-affine``  0.1 + 0.5 |zeta|^2 on the unit ball of C^m (strictly psh)
    ``gauss-bump``     0.5 exp(-|zeta|^2) on the ball of radius 2 in C^m (not psh)
    """
    if name == "abs":
        _one(name, m)
        return RadiusFunction("abs", 1, lambda w: abs(w[0]), "psh",
                              _punctured_disc, _punctured_disc_dist)
    if name == "abs-power":
        _one(name, m)
        if not a > 0:
            raise ValueError("abs-power needs a > 0")
        return RadiusFunction(f"abs-power[{a:g}]", 1, lambda w: abs(w[0]) ** a, "psh",
                              _punctured_disc, _punctured_disc_dist)
    if name == "sqnorm-affine":
        return RadiusFunction(
            "sqnorm-affine", m, lambda w: 0.1 + 0.5 * float(np.sum(np.abs(w) ** 2)),
            "strictly-psh",
            lambda w: np.linalg.norm(w) < 1, lambda w: 1 - np.linalg.norm(w))
    if name == "gauss-bump":
        return RadiusFunction(
            "gauss-bump", m, lambda w: 0.5 * math.exp(-float(np.sum(np.abs(w) ** 2))),
            "not-psh",
            lambda w: np.linalg.norm(w) < 2, lambda w: 2 - np.linalg.norm(w))
    raise ValueError(f"unknown radius function {name!r}")


def _one(name, m):
    if m != 1:
        raise ValueError(f"{name} is defined for m = 1 only")


RADIUS_CATALOG = ("abs", "abs-power", "sqnorm-affine", "gauss-bump")


# -- kernels ----------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedKernel:
    value: float
    k: int
    tail_bound: float


def _check_z(basis, z):
    z = basis.point(z)
    g = basis.gauge(z)
    if not g < 1:
        raise DomainError(f"z={z} is not inside the {basis.kind} (gauge {g})")
    return z, g


def _denominators(rho: float, n: int, jmax: int) -> np.ndarray:
    j = np.arange(jmax + 1)
    return -np.expm1((2 * j + 2 * n) * math.log(rho))


def truncated_kernel(basis: CircularDomainBasis, rho: RadiusFunction, zeta, z,
                     eps: float = 1e-14) -> TruncatedKernel:
    """Degree-truncated kernel with ``tail_bound < eps``."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    r = rho(zeta)
    z, g = _check_z(basis, z)
    g = g * g
    k = 8
    while basis.tail_bound(g, k, r) >= eps:
        k *= 2
        if k > DEGREE_CAP:
            raise NonConvergence(f"degree cutoff above {DEGREE_CAP} for eps={eps!r}")
    # shrink back to the first admissible cutoff
    lo, hi = k // 2, k
    while lo < hi:
        mid = (lo + hi) // 2
        if basis.tail_bound(g, mid, r) < eps:
            hi = mid
        else:
            lo = mid + 1
    k = hi
    terms = basis.degree_sums(z, k) / _denominators(r, basis.n, k)
    return TruncatedKernel(math.fsum(terms), k, basis.tail_bound(g, k, r))


def kernel_general(basis: CircularDomainBasis, rho: RadiusFunction, zeta, z,
                   eps: float = 1e-14) -> KernelValue:
    return KernelValue(truncated_kernel(basis, rho, zeta, z, eps).value, "circular-series")


def log_kernel(basis: CircularDomainBasis, rho: RadiusFunction, zeta, z) -> float:
    """``log K_zeta(z)`` with truncation error far below double-precision noise."""
    eps = 1e-17 / basis.volume
    return math.log(truncated_kernel(basis, rho, zeta, z, eps).value)


def truncated_log_kernel(basis: CircularDomainBasis, rho: RadiusFunction, zeta, z,
                         k: int) -> float:
    """Logarithm of the partial sum over degrees ``0..k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    r = rho(zeta)
    z, _ = _check_z(basis, z)
    return math.log(math.fsum(basis.degree_sums(z, k) / _denominators(r, basis.n, k)))


def u0_eval(rho: RadiusFunction, zeta, n: int) -> float:
    """``-log(1 - rho^{2n})``, the log of the constant coefficient (up to the volume)."""
    return -math.log1p(-rho(zeta) ** (2 * n))
