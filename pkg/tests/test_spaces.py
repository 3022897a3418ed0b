import math

import numpy as np
import pytest
from conftest import assert_qclose, random_quaternion

from rbffock import (FockCSpace, FockSliceSpace, GaussSeries, HandleFunction,
                     ImaginaryUnit, QPowerSeries, Quaternion, RBFCSpace,
                     RBFSliceSpace, SlicePoint, intrinsic_exp_sq, m_operator,
                     pointwise_bound_check, rbf_basis_series,
                     rbf_basis_series_d, rbf_kernel_qslice,
                     slice_independence_check, star_exp)
from rbffock.series import CPowerSeries, GaussCSeries

UNIT_I = ImaginaryUnit(1.0, 0.0, 0.0)
UNIT_TILTED = ImaginaryUnit.from_vector(1.0, 1.0, 0.0)


class TestFockSliceSpace:
    def test_monomial_norms(self):
        for nu in (0.5, 2.0):
            space = FockSliceSpace(nu, UNIT_TILTED, 60)
            for n in (0, 1, 4, 9):
                got = space.inner_product(QPowerSeries.monomial(n),
                                          QPowerSeries.monomial(n))
                want = math.factorial(n) / nu ** n
                assert_qclose(got, Quaternion.from_real(want), tol=1e-11)

    def test_parity_orthogonality(self):
        space = FockSliceSpace(1.0, UNIT_I, 40)
        got = space.inner_product(QPowerSeries.monomial(0),
                                  QPowerSeries.monomial(1))
        assert abs(got) <= 1e-14

    def test_reproduce_random_series(self):
        rng = np.random.default_rng(21)
        space = FockSliceSpace(2.0, UNIT_I, 80)
        for _ in range(5):
            f = QPowerSeries(tuple(random_quaternion(rng) for _ in range(5)))
            w = Quaternion(0.3, 0.0, 0.5, 0.0)
            expected = f.eval(w)
            got = space.reproduce(f, w)
            assert abs(got - expected) <= 1e-7 * (1 + abs(expected))

    def test_kernel_is_star_exponential(self):
        space = FockSliceSpace(1.5, UNIT_I)
        q = Quaternion(0.2, 0.4, 0, 0)
        p = Quaternion(0.1, 0, -0.3, 0)
        assert space.kernel(q, p) == star_exp(1.5, q, p)

    def test_handle_function_accepted(self):
        space = FockSliceSpace(1.0, UNIT_I, 40)
        h = HandleFunction(lambda sp: sp.to_quaternion(), poly_degree=1)
        got = space.inner_product(h, QPowerSeries.monomial(1))
        assert_qclose(got, Quaternion.from_real(1.0), tol=1e-12)

    def test_bare_callable_refused(self):
        space = FockSliceSpace(1.0, UNIT_I, 40)
        with pytest.raises(TypeError, match="certificate"):
            space.inner_product(lambda sp: Quaternion(1, 0, 0, 0),
                                QPowerSeries.monomial(0))

    def test_degree_exceeding_rule_refused(self):
        space = FockSliceSpace(1.0, UNIT_I, 8)
        f = QPowerSeries.monomial(9)
        with pytest.raises(ValueError, match="quad_order"):
            space.inner_product(f, f)


class TestRBFSliceSpace:
    def test_basis_orthonormality(self):
        space = RBFSliceSpace(1.0, UNIT_TILTED, 80)
        basis = [rbf_basis_series(1.0, n) for n in range(6)]
        gram = space.gram(basis)
        eye = np.zeros((6, 6, 4))
        eye[np.arange(6), np.arange(6), 0] = 1.0
        assert np.sqrt(np.sum((gram - eye) ** 2, axis=-1)).max() < 1e-10

    def test_reproduce_basis_element(self):
        space = RBFSliceSpace(1.0, UNIT_I, 80)
        f = rbf_basis_series(1.0, 3)
        w = Quaternion(0.4, 0.2, 0.0, 0.0)
        expected = f.eval(w)
        assert abs(space.reproduce(f, w) - expected) <= 1e-8 * (1 + abs(expected))

    def test_reproduce_off_slice_point(self):
        rng = np.random.default_rng(22)
        space = RBFSliceSpace(1.0, UNIT_I, 80)
        f = GaussSeries(1.0, QPowerSeries(
            tuple(random_quaternion(rng) for _ in range(5))))
        w = Quaternion(0.3, 0.0, 0.5, 0.0)  # on C_j, integration on C_i
        expected = f.eval(w)
        assert abs(space.reproduce(f, w) - expected) <= 1e-7 * (1 + abs(expected))

    def test_isometry_of_envelope_strip(self):
        rng = np.random.default_rng(23)
        space = RBFSliceSpace(1.3, UNIT_I, 80)
        for _ in range(10):
            f = GaussSeries(1.3, QPowerSeries(
                tuple(random_quaternion(rng) for _ in range(12))))
            fock_route = space.norm_sq(f)
            direct = space.inner_product_direct(f, f).w
            assert direct == pytest.approx(fock_route, rel=1e-10)

    def test_kernel_self_inner_product(self):
        # <K^q, K^p> = K(p, q): represent K^q by its Gaussian-enveloped
        # series, coefficients (nu^n/n!) conj(q)^n exp(-conj(q)^2/g^2)
        gamma = 1.0
        nu = 2.0
        space = RBFSliceSpace(gamma, UNIT_I, 80)
        rng = np.random.default_rng(24)

        def kernel_section(q):
            tail = intrinsic_exp_sq(gamma, q.conjugate(), -1)
            coeffs = []
            power = Quaternion.from_real(1.0)
            for n in range(64 + 1):
                coeffs.append((power * tail) * (nu ** n / math.factorial(n)))
                power = power * q.conjugate()
            return GaussSeries(gamma, QPowerSeries(tuple(coeffs)))

        for _ in range(3):
            q = random_quaternion(rng, 0.7)
            p = random_quaternion(rng, 0.7)
            ip = space.inner_product(kernel_section(q), kernel_section(p))
            want = rbf_kernel_qslice(gamma, p, q)
            assert abs(ip - want) <= 1e-8 * (1 + abs(want))

    def test_member_type_enforced(self):
        space = RBFSliceSpace(1.0, UNIT_I, 40)
        with pytest.raises(TypeError):
            space.inner_product(QPowerSeries.monomial(1),
                                rbf_basis_series(1.0, 1))
        with pytest.raises(ValueError, match="gamma"):
            space.inner_product(rbf_basis_series(2.0, 1),
                                rbf_basis_series(2.0, 1))


class TestMOperator:
    def test_strips_envelope_exactly(self):
        f = rbf_basis_series(1.5, 4)
        stripped = m_operator(1.5, 1, f)
        assert stripped is f.series

    def test_inverse_creates_gaussian_coefficients(self):
        out = m_operator(1.0, -1, QPowerSeries.monomial(0), out_degree=8)
        want = QPowerSeries.exp_sq(1.0, -1, 8)
        for a, b in zip(out.coeffs, want.coeffs):
            assert abs(a - b) <= 1e-15

    def test_round_trip(self):
        rng = np.random.default_rng(25)
        f = QPowerSeries(tuple(random_quaternion(rng) for _ in range(10)))
        back = m_operator(1.2, -1, m_operator(1.2, 1, f, out_degree=32),
                          out_degree=32)
        for n in range(10):
            assert abs(back.coeffs[n] - f.coeffs[n]) <= 1e-12

    def test_errors(self):
        with pytest.raises(ValueError):
            m_operator(1.0, -1, rbf_basis_series(1.0, 0))
        with pytest.raises(ValueError):
            m_operator(2.0, 1, rbf_basis_series(1.0, 0))
        with pytest.raises(ValueError):
            m_operator(1.0, 2, QPowerSeries.monomial(0))
        with pytest.raises(TypeError):
            m_operator(1.0, 1, lambda q: q)


class TestBoundAndSliceChecks:
    def test_gaussian_on_real_axis(self):
        f = rbf_basis_series(1.0, 0)
        points = [SlicePoint(x, 0.0, UNIT_I) for x in np.linspace(-2, 2, 9)]
        report = pointwise_bound_check(1.0, f, points, UNIT_I, 60)
        assert report.max_ratio <= 1.0 + 1e-12
        assert report.norm == pytest.approx(1.0, rel=1e-10)

    def test_random_series_respect_bound(self):
        rng = np.random.default_rng(26)
        points = [SlicePoint(x, y, UNIT_I)
                  for x in np.linspace(-2, 2, 7)
                  for y in np.linspace(-2, 2, 7)]
        for _ in range(5):
            f = GaussSeries(1.0, QPowerSeries(
                tuple(random_quaternion(rng) for _ in range(7))))
            report = pointwise_bound_check(1.0, f, points, UNIT_I, 80)
            assert report.max_ratio <= 1.0 + 1e-9

    def test_kernel_section_attains_bound(self):
        # f = K^p has norm sqrt(K(p,p)) and |f(p)| = K(p,p): the ratio at
        # q = p is exactly exp(4y^2/g^2) / exp(4y^2/g^2) = 1
        gamma = 1.0
        nu = 2.0
        p = SlicePoint(0.4, 0.8, UNIT_I).to_quaternion()
        tail = intrinsic_exp_sq(gamma, p.conjugate(), -1)
        coeffs = []
        power = Quaternion.from_real(1.0)
        for n in range(64 + 1):
            coeffs.append((power * tail) * (nu ** n / math.factorial(n)))
            power = power * p.conjugate()
        section = GaussSeries(gamma, QPowerSeries(tuple(coeffs)))
        report = pointwise_bound_check(gamma, section,
                                       [SlicePoint(0.4, 0.8, UNIT_I)],
                                       UNIT_I, 80)
        assert report.max_ratio == pytest.approx(1.0, rel=1e-8)

    def test_slice_independence(self):
        rng = np.random.default_rng(27)
        basis_norms = slice_independence_check(
            1.0, rbf_basis_series(1.0, 4),
            UNIT_I, ImaginaryUnit(0.0, 0.0, 1.0), 80)
        assert basis_norms.norm_sq_a == pytest.approx(1.0, rel=1e-10)
        assert basis_norms.norm_sq_b == pytest.approx(1.0, rel=1e-10)
        for _ in range(5):
            f = GaussSeries(1.0, QPowerSeries(
                tuple(random_quaternion(rng) for _ in range(12))))
            report = slice_independence_check(1.0, f, UNIT_I, UNIT_TILTED, 80)
            assert report.rel_diff <= 1e-10


class TestComplexSpaces:
    def test_fock_monomial_norms(self):
        space = FockCSpace(2.0, 2, 16)
        for index in [(0, 0), (1, 0), (2, 3)]:
            f = CPowerSeries(2, ((index, 1.0),))
            got = space.inner_product(f, f)
            want = (math.factorial(index[0]) * math.factorial(index[1])
                    / 2.0 ** sum(index))
            assert got.real == pytest.approx(want, rel=1e-12)
            assert got.imag == pytest.approx(0.0, abs=1e-14)

    def test_fock_reproduce_constant(self):
        space = FockCSpace(1.0, 2, 24)
        c = CPowerSeries(2, (((0, 0), 2.5 - 1.0j),))
        got = space.reproduce(c, (0.4 + 0.1j, -0.2 + 0.3j))
        assert got == pytest.approx(2.5 - 1.0j, rel=1e-12)

    def test_rbf_basis_orthonormal(self):
        space = RBFCSpace(1.0, 2, 16)
        basis = [rbf_basis_series_d(1.0, idx)
                 for idx in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]]
        gram = space.gram(basis)
        assert np.abs(gram - np.eye(5)).max() < 1e-12

    def test_rbf_reproduce(self):
        rng = np.random.default_rng(28)
        space = RBFCSpace(1.0, 2, 32)
        from rbffock import multi_indices
        series = CPowerSeries(2, tuple(
            (idx, complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
            for idx in multi_indices(2, 3)))
        f = GaussCSeries(1.0, series)
        w = (0.3 - 0.2j, 0.1 + 0.4j)
        expected = f.eval(w)
        assert abs(space.reproduce(f, w) - expected) <= 1e-7 * (1 + abs(expected))

    def test_member_type_enforced(self):
        space = RBFCSpace(1.0, 2, 16)
        with pytest.raises(TypeError):
            space.inner_product(CPowerSeries(2, (((0, 0), 1.0),)),
                                rbf_basis_series_d(1.0, (0, 0)))
