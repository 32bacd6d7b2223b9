"""Self-contained special functions used by the kernel formulas.

Complex log-gamma (Lanczos), Pochhammer symbols, the Gauss and Kummer
hypergeometric series, the two-variable confluent series Phi1, Chebyshev
polynomials of the first kind, Bessel J/I/K, and Whittaker M/W.

Everything is evaluated at desk scale: series arguments are kept inside
documented cutoffs (|x| <= 30 for the Bessel series, |z| <= 40 for the
confluent series) and requests beyond them raise instead of silently
degrading.  Asymptotic expansions for large arguments are out of scope.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    IntegerTwoMuUnsupported,
    OutsideConvergenceRegion,
    ParameterPole,
    PoleAtNonPositiveInteger,
    SeriesNonConvergence,
)

__all__ = [
    "SeriesConfig",
    "log_gamma",
    "gamma",
    "pochhammer",
    "gauss_2f1",
    "kummer_1f1",
    "humbert_phi1",
    "chebyshev_t",
    "bessel",
    "whittaker",
]

BESSEL_X_MAX = 30.0
KUMMER_Z_MAX = 40.0
_INT_TOL = 1e-12


@dataclass(frozen=True)
class SeriesConfig:
    max_terms: int = 5000
    term_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_SERIES = SeriesConfig()

# Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.91893853320467274178


def _nonpositive_int(z: complex) -> bool:
    z = complex(z)
    return (abs(z.imag) < _INT_TOL and z.real < 0.5
            and abs(z.real - round(z.real)) < _INT_TOL)


def _as_int_if_close(x: float) -> Union[int, None]:
    r = round(x)
    return int(r) if abs(x - r) < _INT_TOL else None


def _log_sin_pi(z: complex) -> complex:
    """log sin(pi z) on the branch that keeps log_gamma's reflection formula
    continuous off the negative real axis (standard loggamma convention)."""
    if z.imag < 0:
        return _log_sin_pi(z.conjugate()).conjugate()
    # sin(pi z) = -e^{-i pi z} (1 - e^{2 pi i z}) / (2i); |e^{2 pi i z}| <= 1
    return (-1j * math.pi * z + (1j * math.pi / 2 - math.log(2.0))
            + cmath.log(1.0 - cmath.exp(2j * math.pi * z)))


def log_gamma(z: complex) -> complex:
    """Log-gamma on the standard analytic branch (real on the positive axis,
    continuous off the negative real axis).

    Lanczos sum for Re z >= 0.5, branch-tracked reflection otherwise.
    """
    z = complex(z)
    if _nonpositive_int(z):
        raise PoleAtNonPositiveInteger(f"log_gamma pole at z={z}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.log(math.pi) - _log_sin_pi(z) - log_gamma(1.0 - z)
    zz = z - 1.0
    acc = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return (zz + 0.5) * cmath.log(t) - t + _LOG_SQRT_2PI + cmath.log(acc)


def gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z))


def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); exact for small n."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = 1.0 + 0.0j
    for i in range(n):
        out *= a + i
    return out


def _terminating_index(a: complex, b: complex = None) -> Union[int, None]:
    """Smallest N such that (a)_{N+1} = 0 or (b)_{N+1} = 0, if any."""
    best = None
    for p in (a, b):
        if p is None:
            continue
        if _nonpositive_int(p):
            n = int(round(-complex(p).real))
            best = n if best is None else min(best, n)
    return best


def _hyp_series(ratio, n_terms_cap: int, cfg: SeriesConfig, terminating: Union[int, None]):
    """Sum 1 + sum t_n with t_{n+1} = t_n * ratio(n); 3 quiet terms to stop."""
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    quiet = 0
    for n in range(n_terms_cap):
        term = term * ratio(n)
        total += term
        if terminating is not None and n + 1 >= terminating:
            return total
        if abs(term) < cfg.term_tol * max(1.0, abs(total)):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    if terminating is not None:
        return total
    raise SeriesNonConvergence(f"series did not converge in {n_terms_cap} terms")


def gauss_2f1(a: complex, b: complex, c: complex, z: complex,
              cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Gauss hypergeometric F(a, b; c; z).

    Direct series inside |z| <= 0.7; outside, the Pfaff transformation
    F(a,b,c,z) = (1-z)^(-a) F(a, c-b, c, z/(z-1)) is applied when it maps the
    argument into the convergent region (it always does for z < 0, the case
    the wave-kernel forms produce).  Terminating series (a or b a
    non-positive integer) are summed exactly with no tolerance test.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    term_n = _terminating_index(a, b)
    if _nonpositive_int(c):
        c_pole = int(round(-c.real))
        if term_n is None or term_n > c_pole:
            raise ParameterPole(f"2F1 lower parameter c={c} at a non-positive integer")
    if z == 0:
        return 1.0 + 0.0j

    def ratio(n):
        return (a + n) * (b + n) / ((c + n) * (n + 1)) * z

    if term_n is not None:
        return _hyp_series(ratio, cfg.max_terms, cfg, term_n)
    if abs(z) <= 0.7:
        return _hyp_series(ratio, cfg.max_terms, cfg, None)
    w = z / (z - 1.0)
    if abs(w) < min(0.98, abs(z)):
        pref = (1.0 - z) ** (-a)
        return pref * gauss_2f1(a, c - b, c, w, cfg)
    if abs(z) < 0.98:
        return _hyp_series(ratio, cfg.max_terms, cfg, None)
    raise SeriesNonConvergence(f"2F1 argument z={z} outside the reliable region")


def kummer_1f1(a: complex, c: complex, x: complex,
               cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Confluent hypergeometric 1F1(a; c; x) by direct series, |x| <= 40."""
    a, c, x = complex(a), complex(c), complex(x)
    term_n = _terminating_index(a)
    if _nonpositive_int(c):
        c_pole = int(round(-c.real))
        if term_n is None or term_n > c_pole:
            raise ParameterPole(f"1F1 lower parameter c={c} at a non-positive integer")
    if abs(x) > KUMMER_Z_MAX:
        raise SeriesNonConvergence(
            f"1F1 argument |x|={abs(x):.3g} beyond the desk-scale cutoff {KUMMER_Z_MAX}")
    if x == 0:
        return 1.0 + 0.0j

    def ratio(n):
        return (a + n) / ((c + n) * (n + 1)) * x

    return _hyp_series(ratio, cfg.max_terms, cfg, term_n)


def humbert_phi1(a: complex, b: complex, c: complex, x: complex, y: complex,
                 cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Two-variable confluent series
    Phi1(a,b,c,x,y) = sum_{m,n} (a)_{m+n} (b)_n / ((c)_{m+n} m! n!) x^m y^n.

    Convergent for |y| < 1 (any x inside the confluent cutoff); the analytic
    continuation past |y| = 1 is not implemented and such calls raise, except
    when b is a non-positive integer, which terminates the y-series exactly.
    Summed as sum_n [(a)_n (b)_n / ((c)_n n!)] y^n * 1F1(a+n, c+n, x).
    """
    a, b, c, x, y = complex(a), complex(b), complex(c), complex(x), complex(y)
    n_max = _terminating_index(b)
    if _terminating_index(a) is not None:
        n_max = _terminating_index(a) if n_max is None else min(n_max, _terminating_index(a))
    if _nonpositive_int(c):
        raise ParameterPole(f"Phi1 lower parameter c={c} at a non-positive integer")
    if n_max is None and abs(y) >= 1.0:
        raise OutsideConvergenceRegion(
            f"Phi1 second argument |y|={abs(y):.6g} >= 1; continuation not implemented")

    total = 0.0 + 0.0j
    coeff = 1.0 + 0.0j
    quiet = 0
    for n in range(cfg.max_terms):
        term = coeff * kummer_1f1(a + n, c + n, x, cfg)
        total += term
        if n_max is not None and n >= n_max:
            return total
        if abs(term) < cfg.term_tol * max(1.0, abs(total)):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
        coeff *= (a + n) * (b + n) / ((c + n) * (n + 1)) * y
    raise SeriesNonConvergence("Phi1 outer series did not converge")


def chebyshev_t(n: int, x):
    """Chebyshev polynomial T_n(x) by the three-term recurrence.

    Valid for all real x, including x > 1 where T_n(x) = cosh(n arccosh x).
    Accepts scalars or ndarrays.
    """
    if n < 0:
        raise ValueError("chebyshev_t needs n >= 0")
    x = np.asarray(x, dtype=float)
    t_prev = np.ones_like(x)
    if n == 0:
        return t_prev if t_prev.ndim else float(t_prev)
    t_cur = x.copy()
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
    return t_cur if t_cur.ndim else float(t_cur)


def _recip_gamma_real(w: float) -> float:
    """1/Gamma(w) for real w, safe arbitrarily close to the poles.

    Pulls w up past 1.5 with the exact recurrence 1/Gamma(w) = w/Gamma(w+1)
    before invoking Lanczos; the pulled-up factors are formed in plain
    arithmetic, so no precision is lost when w sits within 1e-6 of a pole.
    """
    prod = 1.0
    guard = 0
    while w < 1.5:
        prod *= w
        w += 1.0
        guard += 1
        if guard > 400:
            raise ValueError("argument too negative for the gamma recurrence")
    return prod * math.exp(-log_gamma(w).real)


def _sin_pi(x: float) -> float:
    """sin(pi x) with exact argument reduction to |r| <= 1/2."""
    m = round(x)
    r = x - m
    s = math.sin(math.pi * r)
    return -s if (m % 2) else s


def _bessel_i_series(nu: float, x: float, cfg: SeriesConfig, signed: bool = False) -> float:
    """Ascending series for J (signed=True) or I (signed=False), order nu.

    Handles negative non-integer nu through the reciprocal-gamma factor in
    the leading term; the series itself never crosses a pole for non-integer
    nu.
    """
    lead = (x / 2.0) ** nu * _recip_gamma_real(nu + 1.0)
    q = -(x * x / 4.0) if signed else (x * x / 4.0)
    total = lead
    term = lead
    for m in range(1, cfg.max_terms):
        term *= q / (m * (m + nu))
        total += term
        if abs(term) < cfg.term_tol * max(abs(total), abs(lead)):
            return total
    raise SeriesNonConvergence("Bessel series did not converge")


def _bessel_k_noninteger(nu: float, x: float, cfg: SeriesConfig) -> float:
    return (math.pi / 2.0) * (_bessel_i_series(-nu, x, cfg) - _bessel_i_series(nu, x, cfg)) \
        / _sin_pi(nu)


def bessel(kind: str, nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Bessel functions J_nu, I_nu, K_nu for x in (0, 30], nu >= 0.

    J and I use the ascending series; full precision holds for x up to ~8,
    after which the alternating J series cancels (about 1e-9 relative by
    x = 19) until the hard cutoff.  K uses the reflection combination of
    I_{+-nu} for non-integer order; for integer order it averages over
    nu +- eps and Richardson-extrapolates the even eps^2 error.  eps is the
    binary-exact 2^-20 rather than 1e-6: the pole-adjacent series terms
    divide by (m + nu), and any representation error of eps there is
    amplified by the I_{-nu} - I_nu cancellation.
    """
    if x <= 0:
        raise ValueError("bessel requires x > 0")
    if x > BESSEL_X_MAX:
        raise SeriesNonConvergence(
            f"Bessel series cutoff exceeded: x={x:.3g} > {BESSEL_X_MAX}")
    if nu < 0:
        raise ValueError("bessel requires nu >= 0 (reflection handled internally)")
    if kind == "J":
        return _bessel_i_series(nu, x, cfg, signed=True)
    if kind == "I":
        return _bessel_i_series(nu, x, cfg, signed=False)
    if kind != "K":
        raise ValueError("kind must be one of 'J', 'I', 'K'")
    n_int = _as_int_if_close(nu)
    if n_int is None:
        return _bessel_k_noninteger(nu, x, cfg)
    eps = 2.0 ** -20  # binary-exact, so n +- eps and the series pole gaps are exact
    if n_int == 0:
        # K is even in its order, so K_eps itself has only eps^2 error terms
        a1 = _bessel_k_noninteger(eps, x, cfg)
        a2 = _bessel_k_noninteger(eps / 2.0, x, cfg)
    else:
        a1 = 0.5 * (_bessel_k_noninteger(n_int - eps, x, cfg)
                    + _bessel_k_noninteger(n_int + eps, x, cfg))
        a2 = 0.5 * (_bessel_k_noninteger(n_int - eps / 2.0, x, cfg)
                    + _bessel_k_noninteger(n_int + eps / 2.0, x, cfg))
    return (4.0 * a2 - a1) / 3.0


def whittaker(kind: str, k: float, mu: complex, z: float,
              cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Whittaker functions M_{k,mu}(z) and W_{k,mu}(z) for real z > 0.

    M_{k,mu}(z) = z^(mu+1/2) e^(-z/2) 1F1(mu - k + 1/2, 1 + 2 mu, z).
    W is the standard gamma-weighted combination of M_{k,+-mu}, valid only
    for non-integer 2 mu; integer 2 mu raises.
    """
    if z <= 0:
        raise ValueError("whittaker requires z > 0")
    mu = complex(mu)
    if kind == "M":
        if _nonpositive_int(1.0 + 2.0 * mu):
            raise ParameterPole(f"Whittaker M parameter 1+2mu={1 + 2 * mu} non-positive integer")
        pref = cmath.exp((mu + 0.5) * math.log(z) - z / 2.0)
        return pref * kummer_1f1(mu - k + 0.5, 1.0 + 2.0 * mu, z, cfg)
    if kind != "W":
        raise ValueError("kind must be 'M' or 'W'")
    two_mu = 2.0 * mu
    if abs(two_mu.imag) < 1e-9 and abs(two_mu.real - round(two_mu.real)) < 1e-9:
        raise IntegerTwoMuUnsupported(f"Whittaker W with 2mu={two_mu} an integer is unsupported")
    c1 = cmath.exp(log_gamma(-two_mu) - log_gamma(0.5 - mu - k))
    c2 = cmath.exp(log_gamma(two_mu) - log_gamma(0.5 + mu - k))
    return c1 * whittaker("M", k, mu, z, cfg) + c2 * whittaker("M", k, -mu, z, cfg)
