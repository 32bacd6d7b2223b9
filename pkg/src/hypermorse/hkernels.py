"""Kernels of the magnetic Schrodinger operator on the hyperbolic half-plane.

The wave-transmutation kernel in five equivalent representations, the closed
and integral forms of the resolvent, the disc-model resolvent, and the heat
kernel.

Conventions fixed by calibration (see the harness module):

* spectral mapping: s = 1/2 + i mu ("C"); with it the closed resolvent
  equals (1/2) * integral_rho^inf W(b) e^{-i mu b} db exactly.  The mapping
  and the constant prefactor 1/2 are verified, not assumed.
* with the phase convention ((z' - conj z)/(z - conj z'))^k used here, the
  generator whose heat equation the kernel solves is
  y^2 (d_xx + d_yy) - 2 i k y d_x + 1/4.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import quad, specfun
from .errors import (
    ConvergenceViolated,
    DiagonalSingularity,
    GammaPole,
    OutsideSupport,
    UnsupportedK,
)
from .geometry import (
    DiscPoint,
    HalfPlanePoint,
    MagneticK,
    as_magnetic,
    cosh2_half_dist,
    dist_disc,
    dist_halfplane,
    magnetic_phase_disc,
    magnetic_phase_halfplane,
)

__all__ = [
    "SpectralParam",
    "WAVE_FORMS",
    "CALIBRATED_MAPPING",
    "SPECTRAL_MAPPINGS",
    "wave_kernel",
    "wave_kernel_radial",
    "resolvent_closed",
    "resolvent_disc_closed",
    "resolvent_integral",
    "heat_kernel",
]

SPECTRAL_MAPPINGS = ("A", "B", "C")
CALIBRATED_MAPPING = "C"
WAVE_FORMS = ("baseline", "i", "ii", "iii", "iv")

_DIAG_TOL = 1e-14


@dataclass(frozen=True)
class SpectralParam:
    """Complex spectral variable mu and the exponent s derived from it.

    s is always recomputed from mu through the selected mapping; candidate
    mappings are A: s = (1 - i mu)/2, B: s = 1/2 - i mu, C: s = 1/2 + i mu.
    The shipped default is the calibration winner C.
    """

    mu: complex
    mapping_id: str = CALIBRATED_MAPPING

    def __post_init__(self):
        if self.mapping_id not in SPECTRAL_MAPPINGS:
            raise ValueError(f"unknown mapping {self.mapping_id!r}")

    @property
    def s(self) -> complex:
        mu = complex(self.mu)
        if self.mapping_id == "A":
            return (1.0 - 1j * mu) / 2.0
        if self.mapping_id == "B":
            return 0.5 - 1j * mu
        return 0.5 + 1j * mu

    @classmethod
    def from_s(cls, s: complex, mapping_id: str = CALIBRATED_MAPPING) -> "SpectralParam":
        s = complex(s)
        if mapping_id == "A":
            mu = (1.0 - 2.0 * s) / 1j
        elif mapping_id == "B":
            mu = (0.5 - s) / 1j
        elif mapping_id == "C":
            mu = (s - 0.5) / 1j
        else:
            raise ValueError(f"unknown mapping {mapping_id!r}")
        return cls(mu, mapping_id)


def _cosh2_ratio(b, rho: float):
    """C = cosh(b/2)/cosh(rho/2) and S = cosh^2(b/2) - cosh^2(rho/2), the
    latter in the cancellation-free product form."""
    b = np.asarray(b, dtype=float)
    C = np.cosh(b / 2.0) / math.cosh(rho / 2.0)
    S = np.sinh((b + rho) / 2.0) * np.sinh((b - rho) / 2.0)
    return C, S


def wave_kernel_radial(k: Union[float, MagneticK], b, rho: float, form: str = "auto",
                       cfg: specfun.SeriesConfig = specfun.DEFAULT_SERIES):
    """Radial part of the wave kernel: the full kernel without its
    magnetic phase.  Vectorized over b (all entries must satisfy b > rho).

    form "auto" selects the Chebyshev representation when 2k is an integer
    (no hypergeometric summation) and the baseline representation otherwise.
    """
    mk = as_magnetic(k)
    ak = mk.abs_k
    b_arr = np.asarray(b, dtype=float)
    scalar = b_arr.ndim == 0
    b_arr = np.atleast_1d(b_arr)
    if np.any(b_arr <= rho):
        raise OutsideSupport(f"radial wave kernel needs b > rho={rho}")
    C, S = _cosh2_ratio(b_arr, rho)
    inv_sqrt_s = 1.0 / (2.0 * math.pi * np.sqrt(S))

    if form == "auto":
        form = "iii" if mk.is_discrete else "baseline"
    if form in ("iii", "iv") and not mk.is_discrete:
        raise UnsupportedK(f"form {form} needs 2k integer, got k={mk.k}")

    if form == "iii":
        vals = inv_sqrt_s * specfun.chebyshev_t(mk.two_k_int, C)
    elif form == "iv":
        n_top = int(math.floor(ak + 1e-12))
        acc = np.zeros_like(b_arr)
        coeff = 1.0
        for n in range(n_top + 1):
            acc += coeff * np.cosh(b_arr / 2.0) ** (2 * ak - 2 * n) * S ** n
            coeff *= (-ak + n) * (0.5 - ak + n) / ((0.5 + n) * (n + 1))
        vals = math.cosh(rho / 2.0) ** (-2 * ak) * acc / (2.0 * math.pi * np.sqrt(S))
    elif form == "baseline":
        f = np.array([specfun.gauss_2f1(ak, -ak, 0.5, zz, cfg).real
                      for zz in (1.0 - C * C)])
        vals = inv_sqrt_s * f
    elif form == "i":
        f = np.array([specfun.gauss_2f1(2 * ak, -2 * ak, 0.5, zz, cfg).real
                      for zz in ((1.0 - C) / 2.0)])
        vals = inv_sqrt_s * f
    elif form == "ii":
        f = np.array([specfun.gauss_2f1(-ak, 0.5 - ak, 0.5, zz, cfg).real
                      for zz in (1.0 - 1.0 / (C * C))])
        vals = inv_sqrt_s * C ** (2 * ak) * f
    else:
        raise ValueError(f"unknown wave-kernel form {form!r}")
    return complex(vals[0]) if scalar else vals.astype(complex)


def wave_kernel(form: str, k: Union[float, MagneticK], b: float,
                z: HalfPlanePoint, zp: HalfPlanePoint,
                cfg: specfun.SeriesConfig = specfun.DEFAULT_SERIES) -> complex:
    """Wave-transmutation kernel at time-like variable b, support b > rho.

    Returns a hard zero for b < rho; exactly at b = rho the kernel carries
    its integrable inverse-square-root singularity and the call raises.
    """
    rho = dist_halfplane(z, zp)
    if b < rho:
        return 0.0 + 0.0j
    if b == rho:
        raise OutsideSupport(f"wave kernel singular at b = rho = {rho}")
    phase = magnetic_phase_halfplane(k, z, zp)
    return phase * wave_kernel_radial(k, b, rho, form=form, cfg=cfg)


def _gamma_prefactor(s: complex, k: Union[float, MagneticK]) -> complex:
    """Gamma(s-k) Gamma(s+k) / (4 pi Gamma(2s)); even in the sign of k."""
    mk = as_magnetic(k)
    for arg in (s - mk.k, s + mk.k):
        if abs(complex(arg).imag) < 1e-12 and complex(arg).real < 0.5 \
                and abs(complex(arg).real - round(complex(arg).real)) < 1e-10:
            raise GammaPole(f"resolvent pole: s -+ k = {arg} is a non-positive integer")
    try:
        lg = specfun.log_gamma(s - mk.k) + specfun.log_gamma(s + mk.k) - specfun.log_gamma(2 * s)
    except specfun.PoleAtNonPositiveInteger as exc:  # 2s pole
        raise GammaPole(str(exc)) from exc
    return cmath.exp(lg) / (4.0 * math.pi)


def _resolvent_radial(s: complex, k: Union[float, MagneticK], c2: float,
                      cfg: specfun.SeriesConfig) -> complex:
    ak = as_magnetic(k).abs_k
    F = specfun.gauss_2f1(s - ak, s + ak, 2 * s, 1.0 / c2, cfg)
    return _gamma_prefactor(s, k) * c2 ** (-s) * F


def resolvent_closed(sp: SpectralParam, k: Union[float, MagneticK],
                     z: HalfPlanePoint, zp: HalfPlanePoint,
                     cfg: specfun.SeriesConfig = specfun.DEFAULT_SERIES) -> complex:
    """Closed-form resolvent kernel on the half-plane.

    Gamma(s-k)Gamma(s+k)/(4 pi Gamma(2s)) * phase^k * cosh^(-2s)(rho/2)
      * F(s-|k|, s+|k|; 2s; sech^2(rho/2)).
    """
    c2 = cosh2_half_dist(z, zp)
    if c2 - 1.0 < _DIAG_TOL:
        raise DiagonalSingularity("resolvent kernel diverges on the diagonal z = z'")
    phase = magnetic_phase_halfplane(k, z, zp)
    return phase * _resolvent_radial(sp.s, k, c2, cfg)


def resolvent_disc_closed(sp: SpectralParam, k: Union[float, MagneticK],
                          w: DiscPoint, wp: DiscPoint,
                          cfg: specfun.SeriesConfig = specfun.DEFAULT_SERIES) -> complex:
    """Disc-model resolvent, disc phase oriented as (1 - w conj w')^k over
    (1 - conj(w) w')^k.

    The Cayley transport back to the half-plane kernel needs, besides the two
    gauge factors, the square of the half-plane phase: this disc phase
    winds opposite to the half-plane one (see the harness transport check).
    """
    d = dist_disc(w, wp)
    c2 = math.cosh(d / 2.0) ** 2
    if c2 - 1.0 < _DIAG_TOL:
        raise DiagonalSingularity("resolvent kernel diverges on the diagonal w = w'")
    phase = magnetic_phase_disc(k, w, wp)
    return phase * _resolvent_radial(sp.s, k, c2, cfg)


def _check_decay(mu: complex, k: Union[float, MagneticK]):
    need = max(0.0, as_magnetic(k).abs_k - 0.5)
    if not complex(mu).imag < -need:
        raise ConvergenceViolated(
            f"resolvent integral needs Im mu < {-need:.3g} (kernel grows like "
            f"e^((|k|-1/2) b)); got mu={mu}")


def resolvent_integral(sp: SpectralParam, k: Union[float, MagneticK],
                       z: HalfPlanePoint, zp: HalfPlanePoint,
                       cfg: quad.QuadConfig = quad.DEFAULT_CONFIG) -> quad.QuadratureResult:
    """Resolvent as the transmutation integral
    (1/2) * integral_rho^inf W(b, rho) e^{-i mu b} db.

    The 1/2 is the calibrated constant under which the integral reproduces
    the closed form at s = 1/2 + i mu; a spectral-parameter-dependent
    prefactor is ruled out by the same calibration.  Requires strict decay:
    Im mu < -max(0, |k| - 1/2).
    """
    mu = complex(sp.mu)
    _check_decay(mu, k)
    rho = dist_halfplane(z, zp)
    if rho < 1e-7:
        raise DiagonalSingularity("transmutation integral needs z != z'")
    phase = magnetic_phase_halfplane(k, z, zp)
    mk = as_magnetic(k)
    ak = mk.abs_k

    ch_r2 = math.cosh(rho / 2.0) ** 2

    def g(b):
        b = np.atleast_1d(np.asarray(b, dtype=float))
        C = np.cosh(b / 2.0) / math.cosh(rho / 2.0)
        if mk.is_discrete:
            fvals = specfun.chebyshev_t(mk.two_k_int, C)
        else:
            fvals = np.array([specfun.gauss_2f1(ak, -ak, 0.5, zz).real
                              for zz in (1.0 - C * C)])
        return fvals / (2.0 * math.pi) * np.exp(-1j * mu * b)

    def dm(u):
        # cosh^2(b/2) - cosh^2(rho/2) = sinh((b+rho)/2) sinh((b-rho)/2), b = rho + u^2
        u = np.asarray(u, dtype=float)
        return np.sinh((2.0 * rho + u * u) / 2.0) * np.sinh(u * u / 2.0)

    res = quad.integrate_sqrt_endpoint(g, rho, cfg, m=lambda b: np.cosh(b / 2.0) ** 2, dm=dm)
    return quad.QuadratureResult(0.5 * phase * res.value, 0.5 * res.err_estimate,
                                 res.n_evals, res.converged)


def heat_kernel(t: float, k: Union[float, MagneticK], z: HalfPlanePoint, zp: HalfPlanePoint,
                cfg: quad.QuadConfig = quad.DEFAULT_CONFIG) -> quad.QuadratureResult:
    """Heat kernel as the subordination integral
    integral_rho^inf e^{-b^2/4t} / (4 pi t)^{3/2} * W(b, z, z') * b db."""
    if not t > 0:
        raise ValueError("heat kernel needs t > 0")
    rho = dist_halfplane(z, zp)
    phase = magnetic_phase_halfplane(k, z, zp)
    mk = as_magnetic(k)
    ak = mk.abs_k
    norm = (4.0 * math.pi * t) ** 1.5

    def g(b):
        b = np.atleast_1d(np.asarray(b, dtype=float))
        C = np.cosh(b / 2.0) / math.cosh(rho / 2.0)
        if mk.is_discrete:
            fvals = specfun.chebyshev_t(mk.two_k_int, C)
        else:
            fvals = np.array([specfun.gauss_2f1(ak, -ak, 0.5, zz).real
                              for zz in (1.0 - C * C)])
        return np.exp(-b * b / (4.0 * t)) / norm * fvals / (2.0 * math.pi) * b

    def dm(u):
        u = np.asarray(u, dtype=float)
        return np.sinh((2.0 * rho + u * u) / 2.0) * np.sinh(u * u / 2.0)

    if rho == 0.0:
        # coincident points: the singular factor is 1/sqrt(cosh^2(b/2)-1) = 1/sinh(b/2)
        def g0(b):
            b = np.atleast_1d(np.asarray(b, dtype=float))
            C = np.cosh(b / 2.0)
            if mk.is_discrete:
                fvals = specfun.chebyshev_t(mk.two_k_int, C)
            else:
                fvals = np.array([specfun.gauss_2f1(ak, -ak, 0.5, zz).real
                                  for zz in (1.0 - C * C)])
            return np.exp(-b * b / (4.0 * t)) / norm * fvals / (2.0 * math.pi) * b / np.sinh(b / 2.0)

        res = quad.integrate_semiinfinite(g0, 0.0, cfg)
        return quad.QuadratureResult(phase * res.value, res.err_estimate, res.n_evals,
                                     res.converged)

    res = quad.integrate_sqrt_endpoint(g, rho, cfg, m=lambda b: np.cosh(b / 2.0) ** 2, dm=dm)
    return quad.QuadratureResult(phase * res.value, res.err_estimate, res.n_evals, res.converged)
