"""Weierstrass functions on the rectangular lattice generated by 2*omega1 and 2*pi*i.

Evaluation goes through the logarithmic derivative of the Jacobi theta
function ``theta_1``::

    L(v) = theta_1'(v) / theta_1(v) = cot(v) + 4 sum_n q^{2n} / (1 - q^{2n}) sin(2 n v)

For a rectangular lattice with real half-period ``a`` and imaginary
half-period ``i b`` the nome is ``q = exp(-pi b / a)`` and, with
``v = pi w / (2 a)``::

    zeta(w)   = eta w / a + (pi / 2a) L(v)
    wp(w)     = -eta / a - (pi / 2a)^2 L'(v)
    wp'(w)    = -(pi / 2a)^3 L''(v)
    eta       = (pi^2 / 12a) (1 - 24 sum_n n q^{2n} / (1 - q^{2n}))

The lattice (2*omega1, 2*pi*i) has ``q = exp(-pi^2/omega1)``, which
approaches 1 as omega1 grows.  For omega1 > pi we rotate by ``-i`` and work
on the lattice (2*pi, 2*i*omega1) instead, using the homogeneity
``wp(u; L) = lam^2 wp(lam u; lam L)``.  The working nome is then at most
``exp(-pi)`` and a fixed number of terms reaches double precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, PoleProximity

POLE_GUARD = 1e-6
REAL_TOL = 1e-12
_NTERMS = 18  # q <= e^-pi: q^18 * 18^2 < 1e-22


@dataclass(frozen=True)
class RectLattice:
    """Period lattice with half-periods ``omega1`` (real) and ``pi*i``."""

    omega1: float

    def __post_init__(self):
        if not np.isfinite(self.omega1) or self.omega1 <= 0:
            raise DomainError(f"omega1 must be positive and finite, got {self.omega1!r}")

    @classmethod
    def from_zeta(cls, zeta: complex) -> "RectLattice":
        r = abs(zeta)
        if not 0 < r < 1:
            raise DomainError(f"need 0 < |zeta| < 1, got |zeta| = {r!r}")
        return cls(-np.log(r))

    @property
    def omega2(self) -> complex:
        return np.pi * 1j

    @cached_property
    def _frame(self):
        # (rotated?, a, b, coefficient table q^{2n}/(1-q^{2n}))
        swap = self.omega1 > np.pi
        a, b = (np.pi, self.omega1) if swap else (self.omega1, np.pi)
        q2 = np.exp(-2 * np.pi * b / a)
        n = np.arange(1, _NTERMS + 1)
        q2n = q2 ** n
        coef = q2n / (1.0 - q2n)
        eta_ab = np.pi ** 2 / (12 * a) * (1 - 24 * (n * coef).sum())
        return swap, a, b, n, coef, eta_ab

    @cached_property
    def eta(self) -> float:
        """zeta(omega1), the quasi-period constant of the real period."""
        swap, a, b, _, _, eta_ab = self._frame
        if not swap:
            return float(eta_ab)
        # Legendre relation on the rotated lattice gives its imaginary
        # quasi-period; rotating back yields zeta(omega1).
        return float((np.pi / 2 - eta_ab * b) / a)

    @cached_property
    def eta2(self) -> complex:
        """zeta(pi*i), from the Legendre relation eta*pi*i - eta2*omega1 = pi*i/2."""
        return 1j * (self.eta * np.pi - np.pi / 2) / self.omega1


@dataclass(frozen=True)
class EllipticValue:
    value: complex
    condition: float


@dataclass(frozen=True)
class QuasiPeriods:
    eta: float
    c: float


def _as_complex(u):
    arr = np.asarray(u, dtype=complex)
    return arr, arr.ndim == 0


def lattice_reduce(u, lat: RectLattice):
    """Reduce ``u`` into the cell [-omega1, omega1) x [-pi, pi).

    Returns ``(u_red, zeta_shift)`` with ``zeta(u) = zeta(u_red) + zeta_shift``.
    """
    arr, scalar = _as_complex(u)
    w1 = lat.omega1
    m = np.floor((arr.real + w1) / (2 * w1))
    n = np.floor((arr.imag + np.pi) / (2 * np.pi))
    u_red = arr - 2 * w1 * m - 2j * np.pi * n
    shift = 2 * m * lat.eta + 2 * n * lat.eta2
    if scalar:
        return complex(u_red), complex(shift)
    return u_red, shift


def pole_distance(u_red, lat: RectLattice):
    """Distance from a reduced argument to the nearest lattice point."""
    arr = np.asarray(u_red, dtype=complex)
    best = np.full(arr.shape, np.inf)
    for m in (-1, 0, 1):
        for n in (-1, 0, 1):
            best = np.minimum(best, np.abs(arr - 2 * m * lat.omega1 - 2j * n * np.pi))
    return best


def _check_poles(u_red, lat):
    d = pole_distance(u_red, lat)
    if np.any(d < POLE_GUARD):
        raise PoleProximity(
            f"argument within {float(np.min(d)):.3g} of a lattice point (guard {POLE_GUARD})"
        )
    return d


def _series(u_red, lat: RectLattice, order: int):
    """Evaluate zeta (order 0), wp (order 1) or wp' (order 2) at reduced points."""
    swap, a, b, n, coef, eta_ab = lat._frame
    w = -1j * u_red if swap else u_red
    v = np.pi * w / (2 * a)
    k = np.pi / (2 * a)
    # q^{2n} e^{+-2inv} is formed as a single exponential: |Im v| <= pi b / 2a
    # keeps the real part of the exponent at most n*log(q) < 0, while sin(2nv)
    # on its own overflows for small a/b.
    log_q2 = -2 * np.pi * b / a
    nn = np.multiply.outer(2j * v, n)
    ep = np.exp(n * log_q2 + nn)
    em = np.exp(n * log_q2 - nn)
    damp = 1.0 / (1.0 - np.exp(n * log_q2))
    cot = 1 / np.tan(v)
    csc2 = 1 + cot * cot
    if order == 0:
        # 4 sum coef sin(2nv)
        L = cot + 4 * (damp * (ep - em) / 2j).sum(axis=-1)
        out = eta_ab * w / a + k * L
        return -1j * out if swap else out
    if order == 1:
        dL = -csc2 + 8 * (n * damp * (ep + em) / 2).sum(axis=-1)
        out = -eta_ab / a - k ** 2 * dL
        return -out if swap else out
    d2L = 2 * cot * csc2 - 16 * (n ** 2 * damp * (ep - em) / 2j).sum(axis=-1)
    out = -(k ** 3) * d2L
    return 1j * out if swap else out


def _finish(val, arr, scalar):
    # real arguments give real values; drop the rounding residue
    real_in = arr.imag == 0
    if np.any(real_in):
        small = np.abs(val.imag) <= REAL_TOL * np.maximum(1.0, np.abs(val))
        val = np.where(real_in & small, val.real + 0j, val)
    return complex(val) if scalar else val


def wp(u, lat: RectLattice):
    """Weierstrass elliptic function with periods 2*omega1 and 2*pi*i."""
    arr, scalar = _as_complex(u)
    u_red, _ = lattice_reduce(arr, lat)
    _check_poles(u_red, lat)
    return _finish(_series(u_red, lat, 1), arr, scalar)


def wp_prime(u, lat: RectLattice):
    """Derivative of :func:`wp`."""
    arr, scalar = _as_complex(u)
    u_red, _ = lattice_reduce(arr, lat)
    _check_poles(u_red, lat)
    return _finish(_series(u_red, lat, 2), arr, scalar)


def wzeta(u, lat: RectLattice):
    """Weierstrass zeta function (zeta' = -wp), including quasi-period shifts."""
    arr, scalar = _as_complex(u)
    u_red, shift = lattice_reduce(arr, lat)
    _check_poles(u_red, lat)
    return _finish(_series(u_red, lat, 0) + shift, arr, scalar)


_KINDS = {"wp": wp, "wp_prime": wp_prime, "wzeta": wzeta}


def evaluate(kind: str, u: complex, lat: RectLattice) -> EllipticValue:
    """Scalar evaluation that also reports the distance to the nearest pole."""
    u_red, _ = lattice_reduce(complex(u), lat)
    return EllipticValue(_KINDS[kind](u, lat), float(pole_distance(u_red, lat)))


def quasi_periods(lat: RectLattice) -> QuasiPeriods:
    eta = complex(wzeta(lat.omega1, lat))
    if abs(eta.imag) > REAL_TOL * max(1.0, abs(eta)):
        raise ArithmeticError(f"zeta(omega1) not real: {eta!r}")
    return QuasiPeriods(eta=eta.real, c=eta.real / lat.omega1)
