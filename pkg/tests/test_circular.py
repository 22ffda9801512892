import math

import numpy as np
import pytest

from bergkern.annulus import AnnulusPoint, kernel_closed, laurent_terms
from bergkern.circular import (CircularDomainBasis, kernel_general, log_kernel, monomial_norm,
                               radius_function, truncated_kernel, truncated_log_kernel, u0_eval)
from bergkern.errors import DimensionMismatch, DomainError
from bergkern.levi import complex_hessian_fd, min_eigenvalue


# -- quadrature oracle ----------------------------------------------------------------

def _gl(n, a, b):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def disc_inner(a, b, radius=1.0, n_r=40, n_th=32):
    """int over |z| < radius of z^a conj(z)^b dA by Gauss-Legendre x trapezoid."""
    r, wr = _gl(n_r, 0.0, radius)
    th = 2 * np.pi * np.arange(n_th) / n_th
    f = r[:, None] ** (a + b + 1) * np.exp(1j * (a - b) * th)[None, :]
    return complex(np.sum(f * wr[:, None]) * 2 * np.pi / n_th)


def polydisc_inner(alpha, beta, radius=1.0):
    return np.prod([disc_inner(a, b, radius) for a, b in zip(alpha, beta)])


def ball2_inner(alpha, beta, radius=1.0, n=40, n_th=32):
    """int over the ball of radius ``radius`` in C^2 of z^alpha conj(z)^beta."""
    rho, wrho = _gl(n, 0.0, radius)
    t, wt = _gl(n, 0.0, np.pi / 2)
    th = 2 * np.pi * np.arange(n_th) / n_th
    (a1, a2), (b1, b2) = alpha, beta
    radial = np.sum(wrho * rho ** (sum(alpha) + sum(beta) + 3))
    angular = np.sum(wt * np.cos(t) ** (a1 + b1 + 1) * np.sin(t) ** (a2 + b2 + 1))
    ph1 = np.sum(np.exp(1j * (a1 - b1) * th)) * 2 * np.pi / n_th
    ph2 = np.sum(np.exp(1j * (a2 - b2) * th)) * 2 * np.pi / n_th
    return complex(radial * angular * ph1 * ph2)


# -- bases ---------------------------------------------------------------------------------

def test_norm_examples():
    assert monomial_norm(CircularDomainBasis("polydisc", 2), (0, 0)) == pytest.approx(math.pi ** 2)
    assert monomial_norm(CircularDomainBasis("ball", 1), (1,)) == pytest.approx(math.pi / 2)
    assert monomial_norm(CircularDomainBasis("ball", 2), (0, 0)) == pytest.approx(math.pi ** 2 / 2)
    assert CircularDomainBasis("ball", 3).volume == pytest.approx(math.pi ** 3 / 6)


def test_norm_examples_against_quadrature():
    assert disc_inner(1, 1).real == pytest.approx(math.pi / 2, rel=1e-12)
    assert polydisc_inner((0, 0), (0, 0)).real == pytest.approx(math.pi ** 2, rel=1e-12)
    assert ball2_inner((0, 0), (0, 0)).real == pytest.approx(math.pi ** 2 / 2, rel=1e-12)


@pytest.mark.parametrize("alpha", [(0, 0), (1, 0), (2, 1), (3, 3), (0, 5)])
def test_norms_against_quadrature(alpha):
    ball = CircularDomainBasis("ball", 2)
    poly = CircularDomainBasis("polydisc", 2)
    assert ball.norm(alpha) == pytest.approx(ball2_inner(alpha, alpha).real, rel=1e-10)
    assert poly.norm(alpha) == pytest.approx(polydisc_inner(alpha, alpha).real, rel=1e-10)


def test_orthogonality_by_quadrature():
    idx = [a for j in range(4) for a in CircularDomainBasis("ball", 2).multi_indices(j)]
    for a in idx:
        for b in idx:
            if a != b:
                assert abs(ball2_inner(a, b)) < 1e-6
                assert abs(polydisc_inner(a, b)) < 1e-6


@pytest.mark.parametrize("alpha", [(1, 0), (2, 2), (0, 3)])
def test_dilation_scaling(alpha):
    rho = 0.55
    j, n = sum(alpha), 2
    assert ball2_inner(alpha, alpha, rho).real == pytest.approx(
        rho ** (2 * j + 2 * n) * ball2_inner(alpha, alpha).real, rel=1e-10)
    assert polydisc_inner(alpha, alpha, rho).real == pytest.approx(
        rho ** (2 * j + 2 * n) * polydisc_inner(alpha, alpha).real, rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_degree_counts(n):
    b = CircularDomainBasis("ball", n)
    for j in range(7):
        idx = b.multi_indices(j)
        assert len(idx) == math.comb(j + n - 1, n - 1) == b.dimension(j)
        assert len(set(idx)) == len(idx)
        assert all(sum(a) == j for a in idx)


@pytest.mark.parametrize("kind", ["ball", "polydisc"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_degree_sums_match_enumeration(kind, n):
    b = CircularDomainBasis(kind, n)
    z = np.array([0.3 + 0.2j, 0.1 - 0.4j, 0.2][:n])
    S = b.degree_sums(z, 8)
    for j in range(9):
        ref = sum(abs(np.prod(z ** np.array(a))) ** 2 / b.norm(a) for a in b.multi_indices(j))
        assert S[j] == pytest.approx(ref, rel=1e-13)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        monomial_norm(CircularDomainBasis("ball", 2), (1,))
    with pytest.raises(DimensionMismatch):
        CircularDomainBasis("ball", 2).degree_sums([0.1, 0.2, 0.3], 3)


# -- radius catalog -----------------------------------------------------------------------

def test_radius_catalog_values_and_domains():
    assert radius_function("abs")(0.3 + 0.4j) == pytest.approx(0.5)
    assert radius_function("abs-power", a=2)(0.5) == pytest.approx(0.25)
    assert radius_function("sqnorm-affine", m=2)([0.5, 0.5j]) == pytest.approx(0.35)
    assert radius_function("gauss-bump")(0.0) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        radius_function("abs")(0.0)
    with pytest.raises(DomainError):
        radius_function("sqnorm-affine")(1.2)
    with pytest.raises(ValueError):
        radius_function("abs", m=2)
    with pytest.raises(ValueError):
        radius_function("nope")


@pytest.mark.parametrize("name,sign", [("abs", 1), ("abs-power", 1), ("sqnorm-affine", 1),
                                       ("gauss-bump", -1)])
def test_declared_psh_class_near_sample(name, sign):
    rho = radius_function(name)
    zeta = 0.05 if name == "gauss-bump" else 0.4
    e = min_eigenvalue(complex_hessian_fd(lambda w: rho(w), [zeta], 1e-4))
    assert np.sign(e) == sign
    assert (rho.psh_class == "not-psh") == (sign < 0)


# -- kernels -----------------------------------------------------------------------------

def test_kernel_at_origin():
    for kind in ("ball", "polydisc"):
        for n in (1, 2, 3):
            b = CircularDomainBasis(kind, n)
            rho = radius_function("sqnorm-affine")
            r = rho(0.3)
            val = kernel_general(b, rho, 0.3, np.zeros(n)).value
            assert val == pytest.approx(1 / (b.volume * (1 - r ** (2 * n))), rel=1e-14)


def test_kernel_increases_with_rho():
    b = CircularDomainBasis("ball", 2)
    rho = radius_function("abs")
    z = [0.3, 0.2j]
    vals = [kernel_general(b, rho, r, z).value for r in np.linspace(0.2, 0.8, 7)]
    assert all(y > x for x, y in zip(vals, vals[1:]))


def test_small_hole_approaches_full_domain_kernel():
    rho = radius_function("abs")
    z = np.array([0.4 + 0.1j, -0.3j])
    t = float(np.sum(np.abs(z) ** 2))
    ball = kernel_general(CircularDomainBasis("ball", 2), rho, 1e-3, z).value
    assert ball == pytest.approx(2 / math.pi ** 2 / (1 - t) ** 3, rel=1e-10)
    poly = kernel_general(CircularDomainBasis("polydisc", 2), rho, 1e-3, z).value
    assert poly == pytest.approx(np.prod(1 / (math.pi * (1 - np.abs(z) ** 2) ** 2)), rel=1e-10)


def test_n1_series_is_nonnegative_laurent_part():
    b = CircularDomainBasis("ball", 1)
    rho = radius_function("abs")
    for r, s in [(0.3, 0.6), (0.5, 0.9), (0.1, 0.15)]:
        tk = truncated_kernel(b, rho, r, s, 1e-15)
        ref = math.fsum(laurent_terms(r, s, tk.k, 0))
        assert tk.value == pytest.approx(ref, rel=1e-13)
        # the closed annulus kernel also carries the negative powers
        neg = math.fsum(laurent_terms(r, s, 0, 4000)[:-1])
        assert tk.value + neg == pytest.approx(kernel_closed(AnnulusPoint(r, s)).value, rel=1e-10)


@pytest.mark.parametrize("kind", ["ball", "polydisc"])
def test_tail_bound_holds(kind):
    b = CircularDomainBasis(kind, 2)
    rho = radius_function("abs")
    for z in ([0.5, 0.5j], [0.1, 0.05], [0.69, 0.0]):
        tk = truncated_kernel(b, rho, 0.6, z, 1e-9)
        assert tk.tail_bound < 1e-9
        big = truncated_kernel(b, rho, 0.6, z, 1e-16)
        S = b.degree_sums(np.asarray(z, complex), big.k + 400)
        j = np.arange(len(S))
        terms = S / (1 - 0.6 ** (2 * j + 4))
        assert math.fsum(terms[tk.k + 1:]) <= tk.tail_bound


def test_kernel_domain_errors():
    b = CircularDomainBasis("ball", 2)
    with pytest.raises(DomainError):
        kernel_general(b, radius_function("abs"), 0.3, [0.8, 0.7])
    with pytest.raises(DomainError):
        kernel_general(b, radius_function("abs"), 1.3, [0.1, 0.1])


def test_smooth_across_inner_boundary():
    b = CircularDomainBasis("ball", 2)
    rho = radius_function("abs")
    f = lambda x: log_kernel(b, rho, 0.5, [x, 0.0])  # noqa: E731

    def d2(x, h):
        return (f(x + h) - 2 * f(x) + f(x - h)) / h ** 2

    for x in (0.45, 0.5, 0.55):  # |z| = rho(zeta) = 0.5 in the middle
        a, c = d2(x, 2e-3), d2(x, 1e-3)
        assert np.isfinite(a)
        assert a == pytest.approx(c, rel=1e-4)


# -- partial sums and u0 ----------------------------------------------------------------

def test_truncated_log_kernel():
    b = CircularDomainBasis("ball", 2)
    rho = radius_function("abs")
    zeta = 0.6
    assert truncated_log_kernel(b, rho, zeta, [0, 0], 0) == pytest.approx(
        u0_eval(rho, zeta, 2) - math.log(b.volume), rel=1e-14)
    z = [0.5, 0.4j]
    l5 = truncated_log_kernel(b, rho, zeta, z, 5)
    l10 = truncated_log_kernel(b, rho, zeta, z, 10)
    full = log_kernel(b, rho, zeta, z)
    assert l5 <= l10 <= full
    assert truncated_log_kernel(b, rho, zeta, z, 400) == pytest.approx(full, abs=1e-14)


def test_u0_values():
    rho = radius_function("abs")
    assert u0_eval(rho, 0.5, 2) == pytest.approx(-math.log(0.9375), rel=1e-15)
    small = u0_eval(rho, 1e-4, 1)
    assert 0 < small < 1e-7


def test_u0_is_subharmonic_for_abs():
    rho = radius_function("abs")
    for r in np.linspace(0.1, 0.9, 9):
        H = complex_hessian_fd(lambda w: u0_eval(rho, w, 2), [r * np.exp(0.3j)], 1e-4)
        assert min_eigenvalue(H) >= -1e-8
