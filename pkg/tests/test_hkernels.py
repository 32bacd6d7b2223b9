"""Tests for the hyperbolic-plane kernel module."""
import cmath
import math

import numpy as np
import pytest

from hypermorse import quad, specfun
from hypermorse.errors import (
    ConvergenceViolated,
    DiagonalSingularity,
    GammaPole,
    OutsideSupport,
    UnsupportedK,
)
from hypermorse.geometry import DiscPoint, HalfPlanePoint, cayley, cayley_gauge_phase, \
    dist_halfplane, magnetic_phase_halfplane
from hypermorse.hkernels import (
    SpectralParam,
    WAVE_FORMS,
    heat_kernel,
    resolvent_closed,
    resolvent_disc_closed,
    resolvent_integral,
    wave_kernel,
    wave_kernel_radial,
)


def relerr(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


Z1 = HalfPlanePoint(0.0, 1.0)
Z2 = HalfPlanePoint(0.5, 2.0)


class TestSpectralParam:
    def test_mappings(self):
        mu = -0.8j
        assert SpectralParam(mu, "A").s == pytest.approx((1 - 1j * mu) / 2)
        assert SpectralParam(mu, "B").s == pytest.approx(0.5 - 1j * mu)
        assert SpectralParam(mu, "C").s == pytest.approx(0.5 + 1j * mu)

    def test_from_s_round_trip(self):
        for mapping in ("A", "B", "C"):
            sp = SpectralParam.from_s(1.3 + 0.2j, mapping)
            assert sp.s == pytest.approx(1.3 + 0.2j)

    def test_unknown_mapping(self):
        with pytest.raises(ValueError):
            SpectralParam(-1j, "D")


class TestWaveKernel:
    def test_zero_below_support(self):
        assert wave_kernel("baseline", 1.0, 0.1, Z1, Z2) == 0.0

    def test_raises_on_support_edge(self):
        rho = dist_halfplane(Z1, Z2)
        with pytest.raises(OutsideSupport):
            wave_kernel("baseline", 1.0, rho, Z1, Z2)

    def test_k0_closed_form(self):
        # k=0: W = (1/2pi) (cosh^2 b/2 - cosh^2 rho/2)^(-1/2)
        rho = dist_halfplane(Z1, Z2)
        b = rho + 1.3
        expect = 1.0 / (2 * math.pi * math.sqrt(math.cosh(b / 2) ** 2 - math.cosh(rho / 2) ** 2))
        assert wave_kernel("baseline", 0.0, b, Z1, Z2) == pytest.approx(expect, rel=1e-12)

    def test_half_k_chebyshev_value(self):
        # k=1/2, points on the y axis (phase = 1), rho = 1, b = 2:
        # W = (1/2pi) (cosh^2 1 - cosh^2 0.5)^(-1/2) * cosh(1)/cosh(0.5)
        z, zp = HalfPlanePoint(0.0, 1.0), HalfPlanePoint(0.0, math.e)
        assert dist_halfplane(z, zp) == pytest.approx(1.0, rel=1e-14)
        val = wave_kernel("iii", 0.5, 2.0, z, zp)
        expect = (math.cosh(1.0) / math.cosh(0.5)) / (
            2 * math.pi * math.sqrt(math.cosh(1.0) ** 2 - math.cosh(0.5) ** 2))
        assert val.real == pytest.approx(expect, rel=1e-12)
        assert abs(val.imag) < 1e-15

    def test_forms_agree_at_spec_point(self):
        # k=1, b=2.5, rho=0.8: all five representations agree
        z, zp = HalfPlanePoint(0.0, 1.0), HalfPlanePoint(0.0, math.exp(0.8))
        vals = [wave_kernel(f, 1.0, 2.5, z, zp) for f in WAVE_FORMS]
        for v in vals[1:]:
            assert relerr(v, vals[0]) < 1e-11

    def test_forms_agree_generic_phase(self):
        vals = [wave_kernel(f, 1.5, 2.2, Z1, Z2) for f in WAVE_FORMS]
        for v in vals[1:]:
            assert relerr(v, vals[0]) < 1e-10

    def test_discrete_forms_rejected_for_generic_k(self):
        with pytest.raises(UnsupportedK):
            wave_kernel("iii", 0.3, 2.0, Z1, Z2)

    def test_phase_conjugation(self):
        b = 2.4
        for k in [0.5, 1.0]:
            assert wave_kernel("auto", -k, b, Z1, Z2) == pytest.approx(
                wave_kernel("auto", k, b, Z1, Z2).conjugate(), rel=1e-12)

    def test_radial_vectorized_matches_scalar(self):
        rho = 0.9
        bs = np.array([1.2, 2.0, 3.5])
        vec = wave_kernel_radial(1.0, bs, rho)
        for b, v in zip(bs, vec):
            assert relerr(v, wave_kernel_radial(1.0, float(b), rho)) < 1e-14


class TestResolventClosed:
    def test_k0_free_kernel_self_consistency(self):
        # k -> 0 reduces to the free kernel formula evaluated directly
        sp = SpectralParam.from_s(1.3)
        z, zp = HalfPlanePoint(0.0, 1.0), HalfPlanePoint(1.0, 2.0)
        got = resolvent_closed(sp, 0.0, z, zp)
        c2 = ((0 - 1) ** 2 + (1 + 2) ** 2) / (4 * 1 * 2)
        s = 1.3
        pref = cmath.exp(2 * specfun.log_gamma(s) - specfun.log_gamma(2 * s)) / (4 * math.pi)
        expect = pref * c2 ** (-s) * specfun.gauss_2f1(s, s, 2 * s, 1 / c2)
        assert relerr(got, expect) < 1e-13

    def test_hermitian_symmetry_real_s(self):
        sp = SpectralParam.from_s(1.4)
        a = resolvent_closed(sp, 1.0, Z1, Z2)
        b = resolvent_closed(sp, 1.0, Z2, Z1)
        assert relerr(a, b.conjugate()) < 1e-12

    def test_diagonal_raises(self):
        with pytest.raises(DiagonalSingularity):
            resolvent_closed(SpectralParam.from_s(1.2), 0.5, Z1, Z1)

    def test_gamma_pole_raises(self):
        # s - k = 0 is a Landau-level pole
        sp = SpectralParam.from_s(1.0)
        with pytest.raises(GammaPole):
            resolvent_closed(sp, 1.0, Z1, Z2)

    def test_gamma_prefactor_even_in_k(self):
        sp = SpectralParam.from_s(1.45)
        a = resolvent_closed(sp, 0.75, Z1, Z2)
        b = resolvent_closed(sp, -0.75, Z1, Z2)
        assert relerr(a, b.conjugate()) < 1e-12


class TestResolventDisc:
    def test_k0_matches_halfplane_at_mapped_points(self):
        sp = SpectralParam.from_s(1.25)
        a = resolvent_disc_closed(sp, 0.0, cayley(Z1), cayley(Z2))
        b = resolvent_closed(sp, 0.0, Z1, Z2)
        assert relerr(a, b) < 1e-12

    def test_direct_formula_at_origin(self):
        # w' = 0: phase collapses to 1 and the formula is pure arithmetic
        sp = SpectralParam.from_s(1.2)
        w = DiscPoint(0.35 + 0.1j)
        wp = DiscPoint(0j)
        got = resolvent_disc_closed(sp, 0.5, w, wp)
        c2 = 1.0 / (1.0 - abs(w.w) ** 2)
        s = 1.2
        pref = cmath.exp(specfun.log_gamma(s - 0.5) + specfun.log_gamma(s + 0.5)
                         - specfun.log_gamma(2 * s)) / (4 * math.pi)
        expect = pref * c2 ** (-s) * specfun.gauss_2f1(s - 0.5, s + 0.5, 2 * s, 1 / c2)
        assert relerr(got, expect) < 1e-13

    def test_cayley_transport(self):
        # half-plane kernel = disc kernel * phase_half^{2k} * gauge(z')/gauge(z)
        for k in [0.5, 1.0, -1.0]:
            for s in [1.35, 1.8]:
                sp = SpectralParam.from_s(s)
                gh = resolvent_closed(sp, k, Z1, Z2)
                gd = resolvent_disc_closed(sp, k, cayley(Z1), cayley(Z2))
                transport = magnetic_phase_halfplane(2 * k, Z1, Z2) \
                    * cayley_gauge_phase(k, Z2) / cayley_gauge_phase(k, Z1)
                assert relerr(gh, gd * transport) < 1e-12


class TestResolventIntegral:
    def test_k0_matches_closed(self):
        sp = SpectralParam(-0.8j)
        got = resolvent_integral(sp, 0.0, Z1, Z2)
        expect = resolvent_closed(sp, 0.0, Z1, Z2)
        assert got.converged
        assert relerr(got.value, expect) < 1e-8

    def test_k1_matches_closed(self):
        sp = SpectralParam(-1.5j)
        got = resolvent_integral(sp, 1.0, Z1, Z2)
        expect = resolvent_closed(sp, 1.0, Z1, Z2)
        assert relerr(got.value, expect) < 1e-6

    def test_decay_precondition_enforced(self):
        with pytest.raises(ConvergenceViolated):
            resolvent_integral(SpectralParam(-0.3j), 1.0, Z1, Z2)  # needs Im mu < -0.5
        with pytest.raises(ConvergenceViolated):
            resolvent_integral(SpectralParam(0.5 + 0.1j), 0.0, Z1, Z2)

    def test_linear_in_prefactor(self):
        # the transmutation value is linear in its constant prefactor: the
        # same integral assembled with a quarter prefactor is half the value
        mu = -0.9j
        rho = dist_halfplane(Z1, Z2)

        def assemble(prefactor):
            def g(b):
                b = np.atleast_1d(b)
                return wave_kernel_radial(0.5, b, rho) * np.sqrt(
                    np.sinh((b + rho) / 2) * np.sinh((b - rho) / 2)) * np.exp(-1j * mu * b)

            def dm(u):
                return np.sinh((2 * rho + u * u) / 2) * np.sinh(u * u / 2)

            res = quad.integrate_sqrt_endpoint(g, rho, dm=dm)
            return prefactor * res.value

        assert relerr(assemble(0.25), 0.5 * assemble(0.5)) < 1e-13

    def test_support_insensitivity(self):
        # extending the lower limit below rho adds nothing: the kernel is zero
        # there, so integrating from rho (as the op does) matches a manual
        # sweep that starts lower and skips the dead zone
        sp = SpectralParam(-1.0j)
        res = resolvent_integral(sp, 0.0, Z1, Z2)
        rho = dist_halfplane(Z1, Z2)

        def integrand(b):
            b = np.atleast_1d(b)
            out = np.zeros(len(b), dtype=complex)
            alive = b > rho + 1e-12
            if alive.any():
                out[alive] = wave_kernel_radial(0.0, b[alive], rho) * np.exp(-1j * (-1.0j) * b[alive])
            return out

        # clipped manual value over [0, rho+10] with graded panels near rho
        manual = 0.0 + 0.0j
        edges = [rho + 1e-12 * 10 ** j for j in range(13)] + [rho + 1.0, rho + 14.0]
        nodes, weights = np.polynomial.legendre.leggauss(30)
        for lo, hi in zip(edges[:-1], edges[1:]):
            x = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            manual += 0.5 * (hi - lo) * np.sum(weights * integrand(x))
        manual *= 0.5  # calibrated prefactor
        assert relerr(res.value, manual) < 1e-5


class TestHeatKernel:
    def test_positive_at_k0(self):
        for t in [0.3, 0.8]:
            for zp in [Z2, HalfPlanePoint(1.5, 0.7)]:
                res = heat_kernel(t, 0.0, Z1, zp)
                assert res.value.real > 0
                assert abs(res.value.imag) < 1e-12 * res.value.real

    def test_clipped_oracle_k0(self):
        t, rho = 0.5, 1.0
        z, zp = HalfPlanePoint(0.0, 1.0), HalfPlanePoint(0.0, math.e)
        res = heat_kernel(t, 0.0, z, zp)

        def full(b):
            S = np.cosh(b / 2) ** 2 - math.cosh(rho / 2) ** 2
            return np.exp(-b * b / (4 * t)) / (4 * math.pi * t) ** 1.5 \
                / (2 * math.pi * np.sqrt(S)) * b

        nodes, weights = np.polynomial.legendre.leggauss(40)
        manual = 0.0
        edges = [rho + 1e-13 * 10 ** j for j in range(14)] + [rho + 2.0, rho + 12.0]
        for lo, hi in zip(edges[:-1], edges[1:]):
            x = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            manual += 0.5 * (hi - lo) * np.sum(weights * full(x))
        assert relerr(res.value, manual) < 1e-6

    def test_symmetry_conjugation(self):
        t = 0.6
        for k in [0.5, 1.0]:
            a = heat_kernel(t, k, Z1, Z2).value
            b = heat_kernel(t, k, Z2, Z1).value
            assert relerr(a, b.conjugate()) < 1e-10

    def test_sign_flip_conjugates(self):
        t = 0.6
        a = heat_kernel(t, 1.0, Z1, Z2).value
        b = heat_kernel(t, -1.0, Z1, Z2).value
        assert relerr(a, b.conjugate()) < 1e-10

    def test_algebraic_rewrite_invariance(self):
        # cosh^2(b/2) - cosh^2(rho/2) = (cosh b - cosh rho)/2: identical
        # pointwise where both forms are stable, and the integral built on
        # the rewritten form reproduces the kernel value
        t, rho = 0.5, 0.8
        bs = np.linspace(rho + 0.05, rho + 6.0, 40)
        s1 = np.cosh(bs / 2) ** 2 - math.cosh(rho / 2) ** 2
        s2 = (np.cosh(bs) - math.cosh(rho)) / 2.0
        np.testing.assert_allclose(s1, s2, rtol=1e-12)

        z, zp = HalfPlanePoint(0.0, 1.0), HalfPlanePoint(0.0, math.exp(rho))
        res = heat_kernel(t, 0.0, z, zp)

        def rewritten(b):
            S = (np.cosh(b) - math.cosh(rho)) / 2.0
            return np.exp(-b * b / (4 * t)) / (4 * math.pi * t) ** 1.5 \
                / (2 * math.pi * np.sqrt(S)) * b

        nodes, weights = np.polynomial.legendre.leggauss(40)
        manual = 0.0
        edges = [rho + 1e-13 * 10 ** j for j in range(14)] + [rho + 2.0, rho + 12.0]
        for lo, hi in zip(edges[:-1], edges[1:]):
            x = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            manual += 0.5 * (hi - lo) * np.sum(weights * rewritten(x))
        assert relerr(res.value, manual) < 1e-6

    def test_requires_positive_time(self):
        with pytest.raises(ValueError):
            heat_kernel(0.0, 0.0, Z1, Z2)
