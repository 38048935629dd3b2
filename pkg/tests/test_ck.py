import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsm_bargmann.ck import (
    CKControls,
    GeometryError,
    NonConvergenceError,
    RegionError,
    ck_hermite_gaussian,
    ck_hermite_gaussian_batch,
    ck_polynomial,
    delta_series,
    fueter_polynomial,
    fueter_variables,
    kernel_e,
    kernel_e_array,
    kernel_identity_suite,
    monogenicity_residual,
    sinhc,
    taylor_reconstruction,
)
from gsm_bargmann.clifford import Multivector, Signature, SplitPoint
from gsm_bargmann.functions import CliffordPolynomial, HermiteGaussian, MultiIndex, multi_indices
from gsm_bargmann.sampling import sample_split_points, sample_xi

S01 = Signature(0, 1)
S11 = Signature(1, 1)
S12 = Signature(1, 2)
S21 = Signature(2, 1)
CONFIGS = [Signature(0, 1), Signature(0, 2), Signature(1, 1), Signature(1, 2), Signature(2, 1)]


def points(sig, n, seed=0):
    x, y = sample_split_points(sig, n, np.random.default_rng(seed))
    return [SplitPoint(x[i], y[i]) for i in range(n)]


def rel(a: Multivector, b: Multivector) -> float:
    return (a - b).norm() / max(b.norm(), 1e-300)


# -- sinhc -------------------------------------------------------------------------


def test_sinhc_branches():
    t = np.array([0.0, 1e-9, 9.999e-5, 1.0001e-4, 0.5, 3.0])
    ref = np.array([1.0] + [math.sinh(v) / v for v in t[1:]])
    np.testing.assert_allclose(sinhc(t), ref, rtol=1e-15)
    assert sinhc(np.array(-2.0)) == pytest.approx(math.sinh(2) / 2)


# -- kernel ------------------------------------------------------------------------


def test_kernel_at_y_zero_and_xi_zero():
    bx = SplitPoint([0.3, -1.1], [0.0, 0.0])
    xi = np.array([1.2, 0.4])
    val = kernel_e(bx, xi)
    expect = Multivector.scalar(S12, np.exp(1j * (0.3 * 1.2 - 1.1 * 0.4)))
    assert val.allclose(expect, rtol=1e-15)
    assert kernel_e(SplitPoint([0.3, -1.1], [0.5, 2.0]), np.zeros(2)).allclose(Multivector.scalar(S12), rtol=1e-15)


def test_kernel_p0_closed_form_against_series_oracle():
    e1 = Multivector.generator(S01, 1)
    for x0, y, xi in [(0.3, 0.7, 1.1), (-1.0, 1.5, -0.6), (2.0, 0.2, 2.5)]:
        val = kernel_e(SplitPoint([x0], [y]), [xi])
        closed = (Multivector.scalar(S01, math.cosh(y * xi)) + e1 * (1j * math.sinh(y * xi))) * np.exp(1j * x0 * xi)
        assert val.allclose(closed, rtol=1e-14)
        # sum_m (y e1 d_0)^m e^{i x0 xi} / m! with d_0 -> i xi
        step = e1 * (1j * y * xi)
        term, total = Multivector.scalar(S01), Multivector.scalar(S01)
        for m in range(1, 41):
            term = term * step / m
            total = total + term
        assert val.allclose(total * np.exp(1j * x0 * xi), rtol=1e-10)


def _bicomplex(mv: Multivector) -> tuple[complex, complex]:
    """a + b e1 -> (a + i b, a - i b): the two characters e1 -> +-i of C_1."""
    a, b = mv.coeff
    return a + 1j * b, a - 1j * b


def test_kernel_p0_reduces_to_complex_exponentials(rng):
    for _ in range(10):
        x0, y, xi = rng.uniform(-2, 2, 3)
        plus, minus = _bicomplex(kernel_e(SplitPoint([x0], [y]), [xi]))
        assert plus == pytest.approx(np.exp(1j * x0 * xi - y * xi), rel=1e-13)
        assert minus == pytest.approx(np.exp(1j * x0 * xi + y * xi), rel=1e-13)
        # product law is the product of characters
        a = kernel_e(SplitPoint([x0], [0.0]), [xi])
        b = kernel_e(SplitPoint([0.0], [y]), [xi])
        pa, ma = _bicomplex(a)
        pb, mb = _bicomplex(b)
        assert plus == pytest.approx(pa * pb, rel=1e-13)
        assert minus == pytest.approx(ma * mb, rel=1e-13)


def test_kernel_array_broadcasting(rng):
    x, y = sample_split_points(S12, 7, rng)
    xi = sample_xi(S12, 7, rng)
    arr = kernel_e_array(x, y, xi, S12)
    for i in range(7):
        assert Multivector(S12, arr[i]).allclose(kernel_e(SplitPoint(x[i], y[i]), xi[i]), rtol=1e-15)


@pytest.mark.parametrize("sig", CONFIGS)
def test_kernel_identity_suite_random(sig, rng):
    x, y = sample_split_points(sig, 20, rng)
    xi = sample_xi(sig, 20, rng)
    for i in range(20):
        rep = kernel_identity_suite(SplitPoint(x[i], y[i]), xi[i], tol=1e-10)
        assert max(rep.values()) <= 1e-10


def test_kernel_identity_suite_y_zero(rng):
    for sig in CONFIGS:
        xi = sample_xi(sig, 1, rng)[0]
        rep = kernel_identity_suite(SplitPoint(rng.uniform(-1, 1, sig.p + 1), np.zeros(sig.q)), xi)
        assert max(rep.values()) <= 1e-12


def test_kernel_identity_suite_names_failing_identity():
    bx = SplitPoint([0.3, 0.1], [1.0, 0.5])
    with pytest.raises(AssertionError, match="kernel identity failed"):
        kernel_identity_suite(bx, [1.0, 1.0], tol=-1.0)


def test_kernel_xi_shape_error():
    with pytest.raises(ValueError):
        kernel_e(SplitPoint([0.0], [1.0]), [1.0, 2.0])


@pytest.mark.parametrize("sig", CONFIGS)
def test_kernel_monogenicity(sig, rng):
    xi = sample_xi(sig, 1, rng)[0]
    for bx in points(sig, 20, seed=3):
        f = lambda b: kernel_e(b, xi)  # noqa: E731
        assert monogenicity_residual(f, bx) <= 1e-6 * (1 + f(bx).norm())


def test_monogenicity_geometry_error():
    with pytest.raises(GeometryError):
        monogenicity_residual(lambda b: Multivector.scalar(S01), SplitPoint([0.0], [1e-5]))


def test_constant_is_monogenic():
    bx = SplitPoint([0.2, 0.4], [0.7])
    assert monogenicity_residual(lambda b: Multivector.scalar(S11, 3.0), bx) <= 1e-14


# -- polynomial CK ---------------------------------------------------------------------


def test_ck_of_coordinate_is_fueter_variable(rng):
    for sig in (S11, S12, S21):
        for bx in points(sig, 3):
            z = fueter_variables(bx.x, bx.r, bx.omega, sig)
            for l in range(sig.p + 1):
                assert ck_polynomial(CliffordPolynomial.coordinate(sig, l), bx).allclose(z[l], rtol=1e-14)


def test_ck_of_linear_form_power(rng):
    for sig in (S11, S12, S21):
        xi = sample_xi(sig, 1, rng)[0]
        lin = CliffordPolynomial.linear_form(sig, xi)
        for bx in points(sig, 3, seed=1):
            base = Multivector.scalar(sig, float(bx.x @ xi)) + bx.y_vector() * Multivector.paravector(sig, xi)
            for k in range(5):
                assert rel(ck_polynomial(lin.power(k), bx), base ** k) <= 1e-12


def test_ck_of_constant_and_restriction(rng):
    c = Multivector(S12, rng.standard_normal(8))
    bx = points(S12, 1)[0]
    assert ck_polynomial(CliffordPolynomial.constant(S12, c), bx).allclose(c)
    f0 = CliffordPolynomial(S12, {k: rng.standard_normal(8) for k in multi_indices(2, 4)})
    at0 = SplitPoint(bx.x, np.zeros(2))
    assert ck_polynomial(f0, at0).allclose(f0.at(bx.x), rtol=1e-14)


def test_ck_polynomial_signature_mismatch():
    with pytest.raises(ValueError):
        ck_polynomial(CliffordPolynomial.constant(S11), SplitPoint([0.0], [1.0]))


def test_ck_polynomial_is_monogenic(rng):
    for sig in (S11, S21):
        f0 = CliffordPolynomial(sig, {k: rng.standard_normal(sig.dim) for k in multi_indices(sig.p + 1, 4)})
        for bx in points(sig, 5):
            f = lambda b: ck_polynomial(f0, b)  # noqa: E731
            assert monogenicity_residual(f, bx) <= 1e-6 * (1 + f(bx).norm())


# -- Fueter polynomials -------------------------------------------------------------


def test_fueter_p0_closed_form():
    eta = np.array([0.6, 0.8])
    sig = Signature(0, 2)
    x0, r = 0.7, 1.3
    w = Multivector.scalar(sig, x0) + r * Multivector.paravector(sig, eta, first=1)
    for m in range(6):
        assert fueter_polynomial((m,), [x0], r, eta, sig).allclose(w ** m / math.factorial(m), rtol=1e-14)


def test_fueter_zero_index_and_unit_check():
    assert fueter_polynomial((0, 0), [1.0, 2.0], 0.5, [1.0], S11).allclose(Multivector.scalar(S11))
    with pytest.raises(ValueError):
        fueter_polynomial((1, 0), [1.0, 2.0], 0.5, [2.0], S11)


@pytest.mark.parametrize("sig", [S11, S12, S21])
def test_ck_of_monomial_equals_factorial_times_fueter(sig):
    for bx in points(sig, 4, seed=7):
        for k in multi_indices(sig.p + 1, 5):
            ck = ck_polynomial(CliffordPolynomial.monomial(sig, k), bx)
            fu = fueter_polynomial(k, bx.x, bx.r, bx.omega, sig) * k.factorial
            assert (ck - fu).norm() <= 1e-12 * max(1.0, ck.norm())


@pytest.mark.parametrize("sig", [S11, S12, S21])
def test_fueter_norm_identity_and_bound(sig):
    for bx in points(sig, 4, seed=9):
        z = fueter_variables(bx.x, bx.r, bx.omega, sig)
        for k in multi_indices(sig.p + 1, 4):
            pk = fueter_polynomial(k, bx.x, bx.r, bx.omega, sig)
            prod = pk * pk.bar()
            n2 = pk.norm() ** 2
            assert (prod - Multivector.scalar(sig, n2)).norm() <= 1e-12 * max(1.0, n2)
            bound = math.prod(z[l].norm() ** k[l] for l in range(sig.p + 1)) / k.factorial
            assert pk.norm() <= bound * (1 + 1e-12)


# -- Taylor reconstruction ------------------------------------------------------------


def test_taylor_examples(rng):
    for bx in points(S21, 3):
        f0 = CliffordPolynomial.monomial(S21, (1, 1, 0))
        pk = fueter_polynomial((1, 1, 0), bx.x, bx.r, bx.omega, S21)
        assert taylor_reconstruction(f0, bx).allclose(pk, rtol=1e-13)
        assert taylor_reconstruction(f0, bx).allclose(ck_polynomial(f0, bx), rtol=1e-12)
        c = CliffordPolynomial.constant(S21, 2.5)
        assert taylor_reconstruction(c, bx).allclose(Multivector.scalar(S21, 2.5))
        xi = sample_xi(S21, 1, rng)[0]
        lin2 = CliffordPolynomial.linear_form(S21, xi).power(2)
        base = Multivector.scalar(S21, float(bx.x @ xi)) + bx.y_vector() * Multivector.paravector(S21, xi)
        assert rel(taylor_reconstruction(lin2, bx), base * base) <= 1e-12


def test_taylor_at_y_zero_uses_default_direction(rng):
    f0 = CliffordPolynomial(S12, {k: rng.standard_normal(8) for k in multi_indices(2, 3)})
    bx = SplitPoint([0.4, -0.2], [0.0, 0.0])
    assert taylor_reconstruction(f0, bx).allclose(f0.at(bx.x), rtol=1e-13)


@st.composite
def poly_and_point(draw):
    sig = draw(st.sampled_from([S01, S11, S12, S21]))
    ks = multi_indices(sig.p + 1, 5)
    chosen = draw(st.lists(st.sampled_from(ks), min_size=1, max_size=5, unique=True))
    coeffs = {k: draw(st.floats(-2, 2, allow_nan=False)) for k in chosen}
    x = [draw(st.floats(-2, 2, allow_nan=False)) for _ in range(sig.p + 1)]
    y = [draw(st.floats(-2, 2, allow_nan=False)) for _ in range(sig.q)]
    return CliffordPolynomial(sig, coeffs), SplitPoint(x, y)


@given(poly_and_point())
def test_taylor_reconstruction_property(data):
    f0, bx = data
    a, b = taylor_reconstruction(f0, bx), ck_polynomial(f0, bx)
    assert (a - b).norm() <= 1e-12 * max(1.0, b.norm())


# -- Hermite-Gaussian CK routes ------------------------------------------------------


def test_ck_gaussian_restriction(rng):
    for sig in (S01, S11, S21):
        x, _ = sample_split_points(sig, 6, rng)
        y = np.zeros((6, sig.q))
        for k in multi_indices(sig.p + 1, 3):
            f0 = HermiteGaussian.monomial_gaussian(sig, k, Fraction(1, 4))
            ref = f0(x)
            for route in ("fourier", "delta_series"):
                got = ck_hermite_gaussian_batch(f0, x, y, route)
                assert np.max(np.abs(got - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


@pytest.mark.parametrize("sig", [S01, Signature(0, 2), S11, S12])
def test_ck_routes_agree(sig, rng):
    x, y = sample_split_points(sig, 8, rng)
    for k in multi_indices(sig.p + 1, 4):
        f0 = HermiteGaussian.monomial_gaussian(sig, k, Fraction(1, 4))
        a = ck_hermite_gaussian_batch(f0, x, y, "fourier")
        b = ck_hermite_gaussian_batch(f0, x, y, "delta_series")
        scale = np.max(np.linalg.norm(b, axis=1))
        assert np.max(np.linalg.norm(a - b, axis=1)) <= 1e-8 * scale


def test_ck_gaussian_p0_is_holomorphic_continuation(rng):
    f0 = HermiteGaussian.monomial_gaussian(S01, (0,), Fraction(1, 4))
    x0 = rng.uniform(-2, 2, 10)
    y = rng.uniform(-2, 2, 10)
    z = x0 + 1j * y
    oracle = np.exp(-z * z / 4)
    for route in ("fourier", "delta_series"):
        got = ck_hermite_gaussian_batch(f0, x0[:, None], y[:, None], route)
        # a + b e1 with e1 playing the imaginary unit
        np.testing.assert_allclose(got[:, 0] + 1j * got[:, 1], oracle, atol=1e-12)


def test_ck_gaussian_is_monogenic(rng):
    f0 = HermiteGaussian.monomial_gaussian(S11, (1, 1), Fraction(1, 4))
    f = lambda b: ck_hermite_gaussian(f0, b)  # noqa: E731
    for bx in points(S11, 5):
        assert monogenicity_residual(f, bx) <= 1e-6 * (1 + f(bx).norm())


def test_ck_gaussian_errors():
    f0 = HermiteGaussian.monomial_gaussian(S01, (1,), Fraction(1, 4))
    with pytest.raises(RegionError):
        ck_hermite_gaussian(f0, SplitPoint([0.0], [4.5]), route="fourier")
    # the series route has no validity radius
    assert np.isfinite(ck_hermite_gaussian(f0, SplitPoint([0.0], [4.5])).norm())
    with pytest.raises(NonConvergenceError):
        delta_series(f0, np.array([[0.0]]), np.array([[6.0]]), max_terms=8)
    with pytest.raises(ValueError):
        ck_hermite_gaussian(HermiteGaussian(CliffordPolynomial.constant(S01)), SplitPoint([0.0], [1.0]))
    with pytest.raises(ValueError):
        ck_hermite_gaussian(f0, SplitPoint([0.0], [1.0]), route="nope")
    with pytest.raises(ValueError):
        ck_hermite_gaussian_batch(f0, np.zeros((2, 2)), np.zeros((2, 1)))


def test_ck_controls_defaults():
    c = CKControls()
    assert (c.tol, c.max_terms, c.xi_order) == (1e-15, 200, 60)


def test_delta_series_right_linear(rng):
    c = Multivector(S11, rng.standard_normal(4) + 1j * rng.standard_normal(4))
    f0 = HermiteGaussian.monomial_gaussian(S11, (2, 1), Fraction(1, 4))
    x, y = sample_split_points(S11, 5, rng)
    from gsm_bargmann.clifford import gp

    lhs = ck_hermite_gaussian_batch(f0.right_mul(c), x, y)
    rhs = gp(ck_hermite_gaussian_batch(f0, x, y), c.coeff, S11.n)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_multi_index_type():
    assert MultiIndex((1, 2)).order == 3
