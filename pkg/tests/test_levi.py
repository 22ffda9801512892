import numpy as np
import pytest

from bergkern.errors import DomainError, StencilOutOfDomain
from bergkern.levi import (HermitianForm, ProductSampler, Shell, complex_hessian_fd,
                           min_eigenvalue, psh_scan, strict_psh_scan)


def test_hessian_of_squared_norm():
    H = complex_hessian_fd(lambda w: np.sum(np.abs(w) ** 2), [0.3 + 0.1j, -0.2j])
    np.testing.assert_allclose(H.entries, np.eye(2), atol=1e-8)


def test_hessian_of_pluriharmonic():
    H = complex_hessian_fd(lambda w: (w[0] ** 2).real, [0.3 + 0.1j, -0.2j])
    np.testing.assert_allclose(H.entries, 0, atol=1e-8)


def test_hessian_fubini_study_origin():
    H = complex_hessian_fd(lambda w: np.log(1 + np.sum(np.abs(w) ** 2)), [0.0])
    assert H.entries[0, 0].real == pytest.approx(1.0, abs=1e-6)


def test_min_eigenvalue_examples():
    assert min_eigenvalue(HermitianForm(np.eye(3, dtype=complex))) == pytest.approx(1.0)
    assert min_eigenvalue(HermitianForm(np.diag([2.0, -1.0]).astype(complex))) == pytest.approx(-1.0)
    H = complex_hessian_fd(lambda w: abs(w[0]) ** 2 + 3 * abs(w[1]) ** 2, [0.1, 0.2])
    assert min_eigenvalue(H) == pytest.approx(1.0, abs=1e-6)


def test_quadratic_forms_are_exact():
    rng = np.random.default_rng(11)
    for _ in range(5):
        M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        A = M + M.conj().T
        B = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))

        def f(w, A=A, B=B):
            # w* A w is real for Hermitian A; Re(w^T B w) is pluriharmonic
            return float(np.real(w.conj() @ A @ w) + np.real(w @ B @ w))

        w0 = rng.normal(size=3) + 1j * rng.normal(size=3)
        H = complex_hessian_fd(f, w0, 1e-3)
        # d^2/dw_a dwbar_b of sum conj(w_i) A_ij w_j is A_ba
        np.testing.assert_allclose(H.entries, A.T, atol=1e-8)
        assert H.hermitian_residual <= 1e-10 * np.max(np.abs(H.entries))


def _exact_mixed(w):
    w1, w2 = w
    x1 = w1.real
    return np.array([[np.exp(x1) / 4 + abs(w2) ** 2, np.conj(w1) * w2],
                     [w1 * np.conj(w2), abs(w1) ** 2]])


def test_second_order_convergence():
    f = lambda w: np.exp(w[0].real) + abs(w[0]) ** 2 * abs(w[1]) ** 2  # noqa: E731
    w = np.array([0.4 + 0.3j, -0.5 + 0.2j])
    exact = _exact_mixed(w)
    e1 = np.max(np.abs(complex_hessian_fd(f, w, 0.1).entries - exact))
    e2 = np.max(np.abs(complex_hessian_fd(f, w, 0.05).entries - exact))
    assert 3 <= e1 / e2 <= 5


def test_pluriharmonic_shift_invariance():
    f = lambda w: np.log(1 + np.sum(np.abs(w) ** 2)) + abs(w[0]) ** 4  # noqa: E731
    g = lambda w: f(w) + np.real(w[0] ** 3 + 2 * w[0] * w[1] - 1j * w[1] ** 2)  # noqa: E731
    w = [0.3 - 0.2j, 0.1 + 0.4j]
    a = np.linalg.eigvalsh(complex_hessian_fd(f, w).entries)
    b = np.linalg.eigvalsh(complex_hessian_fd(g, w).entries)
    np.testing.assert_allclose(a, b, atol=1e-6)


def test_levi_form_evaluation():
    H = complex_hessian_fd(lambda w: np.sum(np.abs(w) ** 2), [0.1, 0.2])
    assert H([1, 1j]) == pytest.approx(2.0, abs=1e-7)


def test_stencil_error_wrapped():
    def f(w):
        if abs(w[0]) > 0.5:
            raise DomainError("outside")
        return abs(w[0]) ** 2

    with pytest.raises(StencilOutOfDomain):
        complex_hessian_fd(f, [0.5], 1e-3)


# -- sampling and scans ---------------------------------------------------------------

def test_sampler_respects_shells_and_is_reproducible():
    s = ProductSampler((Shell(1, 0.1, 0.9), Shell(2, 0.0, 0.5, "ball"), Shell(2, 0.2, 0.6, "polydisc")))
    pts = s.sample(200, seed=3)
    assert pts.shape == (200, 5)
    r0 = np.abs(pts[:, 0])
    assert np.all((r0 >= 0.1) & (r0 <= 0.9))
    assert np.all(np.linalg.norm(pts[:, 1:3], axis=1) <= 0.5)
    g = np.max(np.abs(pts[:, 3:]), axis=1)
    assert np.all((g >= 0.2) & (g <= 0.6))
    np.testing.assert_array_equal(pts, s.sample(200, seed=3))
    assert not np.array_equal(pts, s.sample(200, seed=4))


def test_scan_pluriharmonic_field():
    f = lambda w: np.real(w[0] ** 2 + w[1] ** 2)  # noqa: E731
    rep = psh_scan(f, ProductSampler((Shell(2, 0, 1),)), seed=1, count=20, h=1e-3)
    assert np.all(np.abs(rep.min_eigs) <= 1e-8)
    assert rep.flagged == []


def test_strict_scan_flags_degenerate_point():
    f = lambda w: np.sum(np.abs(w) ** 2) ** 2  # noqa: E731
    rep = strict_psh_scan(f, np.array([[0.0, 0.0], [0.5, 0.1j]]), h=1e-3)
    assert abs(rep.min_eigs[0]) < 1e-5
    assert rep.flagged == [0]


def test_scan_records_stencil_failures():
    def f(w):
        if abs(w[0]) >= 0.5:
            raise DomainError("outside")
        return abs(w[0]) ** 2

    rep = psh_scan(f, np.array([[0.1], [0.5 - 1e-6], [0.2j]]), h=1e-3)
    assert [e["index"] for e in rep.errors] == [1]
    assert np.isnan(rep.min_eigs[1])
    assert rep.global_min == pytest.approx(1.0, abs=1e-6)


def test_scan_determinism_and_threads():
    f = lambda w: np.log(1 + np.sum(np.abs(w) ** 2))  # noqa: E731
    s = ProductSampler((Shell(2, 0, 0.9),))
    a = psh_scan(f, s, seed=5, count=30)
    b = psh_scan(f, s, seed=5, count=30, workers=4)
    assert a.to_csv() == b.to_csv()
    assert a.to_json() == b.to_json()
