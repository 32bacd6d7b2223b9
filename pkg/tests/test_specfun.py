"""Tests for the special-function module."""
import cmath
import math

import numpy as np
import pytest

from hypermorse.errors import (
    IntegerTwoMuUnsupported,
    OutsideConvergenceRegion,
    ParameterPole,
    PoleAtNonPositiveInteger,
    SeriesNonConvergence,
)
from hypermorse.specfun import (
    bessel,
    chebyshev_t,
    gamma,
    gauss_2f1,
    humbert_phi1,
    kummer_1f1,
    log_gamma,
    pochhammer,
    whittaker,
)


def relerr(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestLogGamma:
    def test_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)

    def test_five(self):
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    def test_one_plus_i_frozen(self):
        # 30-digit reference computed with an independent arbitrary-precision tool
        ref = complex(-0.650923199301856338885216857886,
                      -0.301640320467533197887531623147)
        assert relerr(log_gamma(1 + 1j), ref) < 1e-12

    def test_pole(self):
        with pytest.raises(PoleAtNonPositiveInteger):
            log_gamma(-3.0)

    def test_recurrence_on_complex_grid(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            z = complex(rng.uniform(-3, 6), rng.uniform(-4, 4))
            if abs(z.imag) < 0.1 and z.real < 0.6:
                continue  # keep away from the pole line
            lhs = cmath.exp(log_gamma(z + 1) - log_gamma(z))
            assert relerr(lhs, z) < 1e-12

    def test_reflection_region_value(self):
        # Gamma recovered by exponentiation across the reflection boundary
        z = complex(-1.5, 0.4)
        prod = gamma(z) * gamma(1 - z)
        assert relerr(prod, math.pi / cmath.sin(math.pi * z)) < 1e-12


class TestPochhammer:
    def test_basic(self):
        assert pochhammer(1.6, 5) == pytest.approx(1.6 * 2.6 * 3.6 * 4.6 * 5.6)

    def test_zero_terms(self):
        assert pochhammer(2.3, 0) == 1.0

    def test_negative_integer_truncates(self):
        assert pochhammer(-2.0, 3) == 0.0


class TestGauss2F1:
    def test_at_zero(self):
        assert gauss_2f1(0.3, 1.7, 2.2, 0.0) == 1.0

    def test_chebyshev_identity_point(self):
        # F(-2, 2, 1/2, x) = T_2(1 - 2x) at x = 0.25
        assert gauss_2f1(-2, 2, 0.5, 0.25) == pytest.approx(-0.5, abs=1e-14)

    def test_log_closed_form(self):
        # F(1,1,2,z) = -ln(1-z)/z
        assert gauss_2f1(1, 1, 2, 0.5) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-13)

    def test_pfaff_consistency(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            a, b, c = rng.uniform(0.2, 2.5, size=3)
            z = rng.uniform(-0.7, 0.7)
            direct = gauss_2f1(a, b, c, z)
            pfaff = (1 - z) ** (-a) * gauss_2f1(a, c - b, c, z / (z - 1))
            assert relerr(direct, pfaff) < 1e-10

    def test_large_negative_argument(self):
        # F(1/2, -1/2, 1/2, z) = (1 - z)^(1/2) exactly
        z = -24.0
        assert gauss_2f1(0.5, -0.5, 0.5, z) == pytest.approx(math.sqrt(1 - z), rel=1e-12)

    def test_c_pole_raises(self):
        with pytest.raises(ParameterPole):
            gauss_2f1(0.4, 0.9, -2.0, 0.3)

    def test_terminating_beats_c_pole(self):
        # a = -1 terminates before (c)_n vanishes
        val = gauss_2f1(-1, 2.0, -3.0, 0.5)
        assert val == pytest.approx(1 + (-1) * 2.0 / (-3.0) * 0.5)

    def test_unreliable_region_raises(self):
        with pytest.raises(SeriesNonConvergence):
            gauss_2f1(0.4, 0.9, 1.7, 0.995)


class TestKummer1F1:
    def test_at_zero(self):
        assert kummer_1f1(1.1, 2.2, 0.0) == 1.0

    def test_e_minus_one(self):
        assert kummer_1f1(1, 2, 1) == pytest.approx(math.e - 1, rel=1e-13)

    def test_collapses_to_exponential(self):
        assert kummer_1f1(1.7, 1.7, 0.9) == pytest.approx(math.exp(0.9), rel=1e-13)

    def test_cutoff_enforced(self):
        with pytest.raises(SeriesNonConvergence):
            kummer_1f1(1.0, 2.0, 50.0)

    def test_c_pole(self):
        with pytest.raises(ParameterPole):
            kummer_1f1(0.4, -1.0, 0.3)


class TestHumbertPhi1:
    def test_at_origin(self):
        assert humbert_phi1(1.2, 0.4, 2.0, 0.0, 0.0) == 1.0

    def test_x_zero_collapses_to_2f1(self):
        a, b, c, y = 1.2, 0.7, 2.3, 0.4
        assert relerr(humbert_phi1(a, b, c, 0.0, y), gauss_2f1(a, b, c, y)) < 1e-12

    def test_b_zero_collapses_to_1f1(self):
        # Phi1(1, 0, 2, 1, 0.3) = 1F1(1, 2, 1) = e - 1
        assert humbert_phi1(1, 0, 2, 1, 0.3) == pytest.approx(math.e - 1, rel=1e-12)

    def test_degeneracies_on_random_grid(self):
        rng = np.random.default_rng(23)
        for _ in range(15):
            a, c = rng.uniform(0.3, 2.5, size=2)
            c += a  # keep c comfortably positive
            x = rng.uniform(-2, 2)
            y = rng.uniform(-0.8, 0.8)
            assert relerr(humbert_phi1(a, 0.0, c, x, y), kummer_1f1(a, c, x)) < 1e-10
            b = rng.uniform(0.2, 1.5)
            assert relerr(humbert_phi1(a, b, c, 0.0, y), gauss_2f1(a, b, c, y)) < 1e-10

    def test_outside_disc_raises(self):
        with pytest.raises(OutsideConvergenceRegion):
            humbert_phi1(1.1, 0.5, 2.0, 0.3, 1.2)

    def test_terminating_b_allows_outside_disc(self):
        val = humbert_phi1(1.5, -2.0, 2.2, 0.8, 1.5)
        assert np.isfinite(val.real)

    def test_complex_arguments(self):
        v = humbert_phi1(2.5, 1.0, 5.0, 2j, 0.3 + 0.2j)
        assert np.isfinite(v.real) and np.isfinite(v.imag)


class TestChebyshev:
    def test_t0(self):
        assert chebyshev_t(0, 0.3) == 1.0

    def test_t2(self):
        assert chebyshev_t(2, 0.5) == pytest.approx(-0.5)

    def test_t3_beyond_unit(self):
        assert chebyshev_t(3, 2.0) == pytest.approx(26.0)

    def test_cosh_identity_beyond_unit(self):
        x = 1.9
        for n in range(1, 7):
            assert chebyshev_t(n, x) == pytest.approx(math.cosh(n * math.acosh(x)), rel=1e-12)

    def test_hypergeometric_identity(self):
        # T_n(1 - 2x) = F(-n, n, 1/2, x): exact finite sums, but the 2F1 side
        # cancels terms of size ~1e5 x^n by n = 8, so the double-precision
        # floor grows with n (1e-13 holds through n = 5, ~1e-10 at n = 8).
        rng = np.random.default_rng(3)
        for n in range(0, 9):
            tol = 1e-13 * 4 ** max(0, n - 3)
            for x in rng.uniform(0, 1, size=4):
                lhs = chebyshev_t(n, 1 - 2 * x)
                rhs = gauss_2f1(-n, n, 0.5, x).real
                assert abs(lhs - rhs) < tol * max(1.0, abs(lhs))

    def test_array_input(self):
        x = np.array([0.1, 0.5, 2.0])
        np.testing.assert_allclose(chebyshev_t(2, x), 2 * x * x - 1, rtol=1e-14)


class TestBessel:
    def test_j0_small(self):
        assert bessel("J", 0, 1e-8) == pytest.approx(1.0, abs=1e-8)

    def test_k_half_closed_form(self):
        x = 1.3
        expect = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        assert bessel("K", 0.5, x) == pytest.approx(expect, rel=1e-12)

    def test_i_k_wronskian(self):
        # I_nu(x) K_{nu+1}(x) + I_{nu+1}(x) K_nu(x) = 1/x
        for nu in [0.3, 0.7]:
            for x in [0.8, 2.1]:
                val = bessel("I", nu, x) * bessel("K", nu + 1, x) + \
                    bessel("I", nu + 1, x) * bessel("K", nu, x)
                assert val == pytest.approx(1.0 / x, rel=1e-10)

    def test_cutoff(self):
        with pytest.raises(SeriesNonConvergence):
            bessel("J", 0, 31.0)

    def test_domain(self):
        with pytest.raises(ValueError):
            bessel("J", 0, -1.0)
        with pytest.raises(ValueError):
            bessel("J", -0.5, 1.0)

    def test_bessel_product_truncated_oracle(self):
        # I_1(2) K_1(3) vs (1/2) int e^{-b} J0(sqrt(12 cosh b - 13)) db from b0,
        # truncated where the J series is reliable; the omitted tail is bounded
        # by the J0 envelope, which caps the achievable agreement at ~1e-2.
        u, v, alpha = 2.0, 3.0, 1.0
        b0 = math.acosh((u * u + v * v) / (2 * u * v))
        bmax = math.acosh((30.0 ** 2 + u * u + v * v) / (2 * u * v))
        nodes, weights = np.polynomial.legendre.leggauss(40)
        total = 0.0
        edges = np.linspace(b0, bmax, 41)
        for lo, hi in zip(edges[:-1], edges[1:]):
            xs = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            vals = [math.exp(-alpha * b) * bessel("J", 0, math.sqrt(2 * u * v * math.cosh(b) - u * u - v * v))
                    if 2 * u * v * math.cosh(b) - u * u - v * v > 1e-20 else math.exp(-alpha * b)
                    for b in xs]
            total += 0.5 * (hi - lo) * float(np.dot(weights, vals))
        oracle = 0.5 * total
        product = bessel("I", 1, u) * bessel("K", 1, v)
        tail_bound = 0.5 * math.sqrt(2 / math.pi) * 6 ** -0.25 * math.exp(-1.25 * bmax) / 1.25
        assert abs(product - oracle) < tail_bound + 2e-3 * product


class TestWhittaker:
    def test_m_reduces_to_bessel_i(self):
        # M_{0,a}(z) = 2^{2a} Gamma(a+1) sqrt(z) I_a(z/2)
        a, z = 0.3, 1.1
        lhs = whittaker("M", 0.0, a, z)
        rhs = 2 ** (2 * a) * gamma(a + 1).real * math.sqrt(z) * bessel("I", a, z / 2)
        assert relerr(lhs, rhs) < 1e-12

    def test_w_reduces_to_bessel_k(self):
        # W_{0,a}(z) = sqrt(z/pi) K_a(z/2)
        a, z = 0.3, 1.1
        lhs = whittaker("W", 0.0, a, z)
        rhs = math.sqrt(z / math.pi) * bessel("K", a, z / 2)
        assert relerr(lhs, rhs) < 1e-10

    def test_m_leading_order(self):
        # M e^{z/2} z^{-mu-1/2} -> 1 as z -> 0+
        k, mu, z = 0.5, 0.8, 1e-6
        val = whittaker("M", k, mu, z) * math.exp(z / 2) * z ** (-mu - 0.5)
        assert val.real == pytest.approx(1.0, abs=1e-5)

    def test_integer_two_mu_rejected(self):
        with pytest.raises(IntegerTwoMuUnsupported):
            whittaker("W", 0.3, 1.0, 2.0)

    def test_wronskian_against_gamma_expression(self):
        # d/dz的 numeric Wronskian W{W, M} = Gamma(1+2mu)/Gamma(1/2+mu-k)
        from hypermorse.quad import nth_derivative
        for (k, mu, z) in [(0.5, 0.7, 1.4), (0.0, 0.3, 2.0)]:
            m = lambda zz: whittaker("M", k, mu, zz)
            w = lambda zz: whittaker("W", k, mu, zz)
            wr = w(z) * nth_derivative(m, z, 1) - nth_derivative(w, z, 1) * m(z)
            expect = cmath.exp(log_gamma(1 + 2 * mu) - log_gamma(0.5 + mu - k))
            assert relerr(wr, expect) < 1e-8


class TestOracleTable:
    def test_table_is_committed_and_large_enough(self):
        from tests_oracle_support import load_oracle_rows
        rows = load_oracle_rows()
        assert len(rows) >= 40

    def test_all_reference_values_reproduced(self):
        from tests_oracle_support import evaluate_row, load_oracle_rows
        for row in load_oracle_rows():
            got, ref, tol = evaluate_row(row)
            assert relerr(got, ref) < tol, f"{row['function']}({row['params']})"
