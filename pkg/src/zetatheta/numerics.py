"""Complex-plane special-function backbone.

Gamma and log-gamma (Lanczos), Hurwitz zeta (Euler-Maclaurin), Dirichlet L,
Dedekind zeta, Bessel K, vertical-line quadrature and contour-based Laurent
coefficient extraction.  Everything downstream (kernels, theta sums, zero
scans) is built on the operations in this module.

All functions are pure; vectorized variants take numpy arrays and are safe to
call concurrently.
"""

from dataclasses import dataclass
from functools import lru_cache
import cmath
import math

import numpy as np
import scipy.special as _sp

from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    SingularityOnCircleError,
    UnsupportedFieldError,
    ValidationError,
)

EULER_GAMMA = 0.5772156649015328606

# Lanczos rational approximation, g = 7 with 9 coefficients: ~13 significant
# digits in double precision over the right half-plane.
_LANCZOS_G = 7.0
_LANCZOS_C = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# B_2 .. B_24, the Euler-Maclaurin depth used by hurwitz_zeta.
_BERNOULLI = np.array([
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
])


def loggamma(z):
    """log Gamma(z) for Re(z) >= 0.5, scalar or array.

    The branch is whatever the principal logs of the Lanczos factors give;
    it may differ from the continuous log-gamma by multiples of 2*pi*i, which
    is harmless for the integer gamma powers this package exponentiates.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.real < 0.5 - 1e-12):
        raise DomainError("loggamma requires Re(z) >= 0.5; use complex_gamma instead")
    w = z - 1.0
    acc = np.full_like(z, _LANCZOS_C[0])
    for i in range(1, len(_LANCZOS_C)):
        acc = acc + _LANCZOS_C[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    out = _HALF_LOG_TWO_PI + (w + 0.5) * np.log(t) - t + np.log(acc)
    return out if out.ndim else complex(out)


def complex_gamma(s):
    """Gamma(s) anywhere off the non-positive integers.

    Reflection formula for Re(s) < 0.5, Lanczos otherwise.
    """
    s = complex(s)
    if s.real < 0.5:
        if abs(s.imag) < 1e-12 and abs(s.real - round(s.real)) < 1e-12 and round(s.real) <= 0:
            raise PoleError(f"gamma pole at s = {round(s.real)}")
        return math.pi / (cmath.sin(math.pi * s) * complex_gamma(1.0 - s))
    return cmath.exp(loggamma(s))


def gamma_many(s):
    """Vectorized Gamma over an array with no entries at poles."""
    s = np.asarray(s, dtype=complex)
    out = np.empty_like(s)
    right = s.real >= 0.5
    if np.any(right):
        out[right] = np.exp(loggamma(s[right]))
    left = ~right
    if np.any(left):
        sl = s[left]
        out[left] = math.pi / (np.sin(math.pi * sl) * np.exp(loggamma(1.0 - sl)))
    return out


def digamma_real(x):
    """psi(x) for real x > 0 (used by L(1, chi))."""
    if x <= 0:
        raise DomainError("digamma_real requires x > 0")
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
    return acc + math.log(x) - 0.5 / x - tail


def _hurwitz_core(s_arr, a, shift, depth):
    """Euler-Maclaurin evaluation of zeta_H(s, a) for an array of s sharing one shift."""
    n = np.arange(shift, dtype=float)[:, None] + a
    terms = n ** (-s_arr[None, :])
    head = terms.sum(axis=0)
    base = float(shift) + a
    bs = base ** (-s_arr)
    total = head + base * bs / (s_arr - 1.0) + 0.5 * bs
    # correction: sum_j B_2j/(2j)! (s)_{2j-1} base^{-s-2j+1}
    poch = s_arr.copy()
    fac = 2.0
    power = bs / base
    for j, b2j in enumerate(_BERNOULLI[:depth], start=1):
        total = total + (b2j / fac) * poch * power
        # update for next order: multiply pochhammer by (s+2j-1)(s+2j), factorial by (2j+1)(2j+2)
        poch = poch * (s_arr + (2 * j - 1)) * (s_arr + 2 * j)
        fac *= (2 * j + 1) * (2 * j + 2)
        power = power / (base * base)
    return total


def hurwitz_zeta_many(s, a, depth=12):
    """Vectorized Hurwitz zeta over an array of s, scalar a in (0, 1]."""
    s = np.asarray(s, dtype=complex)
    if not (0.0 < a <= 1.0):
        raise DomainError("hurwitz_zeta requires a in (0, 1]")
    if not 1 <= depth <= len(_BERNOULLI):
        raise DomainError(f"Bernoulli depth must be in 1..{len(_BERNOULLI)}")
    if np.any(np.abs(s - 1.0) < 1e-12):
        raise PoleError("hurwitz zeta pole at s = 1")
    im_max = float(np.max(np.abs(s.imag))) if s.size else 0.0
    re_min = float(np.min(s.real)) if s.size else 0.0
    # balance the Euler-Maclaurin remainder (grows with |Im s|) against the
    # cancellation of the head sum for Re(s) < 0 (grows with the shift)
    shift = int(max(16.0, math.ceil(0.62 * im_max + 8.0 + 2.0 * max(0.0, -re_min))))
    return _hurwitz_core(s.ravel(), a, shift, depth).reshape(s.shape)


def hurwitz_zeta(s, a=1.0, depth=12):
    """zeta_H(s, a) = sum_{n>=0} (n+a)^(-s), continued to all s != 1.

    Euler-Maclaurin with configurable Bernoulli depth (default 12); the
    summation shift grows with |Im s| so accuracy holds uniformly on
    desk-scale strips (|Im s| <~ 100).
    """
    return complex(hurwitz_zeta_many(np.array([complex(s)]), a, depth=depth)[0])


def riemann_zeta(s):
    """zeta(s) = zeta_H(s, 1)."""
    return hurwitz_zeta(s, 1.0)


def dirichlet_l(s, chi):
    """L(s, chi) via Hurwitz zeta: q^(-s) * sum_a chi(a) zeta_H(s, a/q).

    At s = 1 a non-principal character is evaluated with the digamma closed
    form; the principal character raises PoleError there.
    """
    s = complex(s)
    q = chi.modulus
    at_one = abs(s - 1.0) < 1e-12
    if chi.is_principal and at_one:
        raise PoleError("L(s, principal) has a pole at s = 1")
    if at_one:
        return -sum(chi.value(a) * digamma_real(a / q) for a in range(1, q + 1)) / q
    total = 0.0 + 0.0j
    for a in range(1, q + 1):
        v = chi.value(a)
        if v != 0:
            total += v * hurwitz_zeta(s, a / q)
    return q ** (-s) * total


def dirichlet_l_many(s, chi):
    """Vectorized L(s, chi) over an array of s staying away from s = 1."""
    s = np.asarray(s, dtype=complex)
    q = chi.modulus
    total = np.zeros_like(s)
    for a in range(1, q + 1):
        v = chi.value(a)
        if v != 0:
            total = total + v * hurwitz_zeta_many(s, a / q)
    return q ** (-s) * total


def dedekind_zeta(s, field):
    """zeta_F(s) for an abelian field as the product of its Dirichlet L-factors.

    File-backed fields only support Re(s) > 1.5 through their coefficient
    table; anything further left raises UnsupportedFieldError.
    """
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleError("Dedekind zeta pole at s = 1")
    if field.is_abelian:
        out = 1.0 + 0.0j
        for chi in field.characters:
            out *= dirichlet_l(s, chi)
        return out
    if s.real <= 1.5:
        raise UnsupportedFieldError(
            "coefficient-file field: Dedekind zeta only available for Re(s) > 1.5")
    coeffs = field.coefficients
    n = np.arange(1, len(coeffs), dtype=float)
    return complex(np.sum(coeffs[1:] * n ** (-s)))


def dedekind_zeta_many(s, field):
    """Vectorized abelian Dedekind zeta."""
    s = np.asarray(s, dtype=complex)
    if not field.is_abelian:
        raise UnsupportedFieldError("vectorized Dedekind zeta needs an abelian field")
    out = np.ones_like(s)
    for chi in field.characters:
        out = out * dirichlet_l_many(s, chi)
    return out


def bessel_k(nu, z):
    """Modified Bessel K_nu(z) for real order and complex z off (-inf, 0]."""
    z = complex(z)
    if z == 0:
        raise DomainError("bessel_k undefined at z = 0")
    if z.real <= 0 and z.imag == 0:
        raise DomainError("bessel_k requires |Arg z| < pi")
    out = complex(_sp.kv(nu, z))
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise ConvergenceError(f"bessel_k({nu}, {z}) did not evaluate finitely")
    return out


# ---------------------------------------------------------------------------
# vertical-line quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Vertical contour Re(s) = abscissa, |Im s| <= half_height, composite Gauss-Legendre."""
    abscissa: float
    half_height: float
    panel_count: int = 16
    nodes_per_panel: int = 24

    def __post_init__(self):
        if not self.half_height > 0:
            raise ValidationError("half_height must be positive")
        if self.panel_count < 1:
            raise ValidationError("panel_count must be >= 1")
        if self.nodes_per_panel < 4:
            raise ValidationError("nodes_per_panel must be >= 4")


@dataclass(frozen=True)
class LineIntegralResult:
    value: complex
    doubling_delta: float
    converged: bool

    def require(self, context=""):
        if not self.converged:
            raise ConvergenceError(f"line integral did not converge {context}".strip())
        return self.value


@lru_cache(maxsize=64)
def _gauss_legendre(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_nodes(t_lo, t_hi, panel_count, nodes_per_panel):
    edges = np.linspace(t_lo, t_hi, panel_count + 1)
    x, w = _gauss_legendre(nodes_per_panel)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _line_sum(f, c, t_lo, t_hi, panel_count, nodes_per_panel):
    t, w = _panel_nodes(t_lo, t_hi, panel_count, nodes_per_panel)
    vals = f(c + 1j * t)
    vals = np.asarray(vals, dtype=complex)
    if np.any(~np.isfinite(vals)):
        raise DomainError("integrand returned a non-finite value on the contour")
    return complex(np.sum(vals * w)) / (2.0 * math.pi)


def line_integral(f, spec):
    """(1/2 pi i) * integral of f over the vertical segment of `spec`.

    `f` must accept a numpy array of complex points.  The result carries a
    node-doubling delta; `converged` means the doubling changed the value by
    less than 1e-11 relative.
    """
    c, T = spec.abscissa, spec.half_height
    v1 = _line_sum(f, c, -T, T, spec.panel_count, spec.nodes_per_panel)
    v2 = _line_sum(f, c, -T, T, spec.panel_count, 2 * spec.nodes_per_panel)
    delta = abs(v2 - v1)
    scale = max(abs(v2), 1e-250)
    return LineIntegralResult(value=v2, doubling_delta=delta, converged=delta <= 1e-11 * scale)


# ---------------------------------------------------------------------------
# contour-based Laurent coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentResult:
    lowest: int
    coeffs: np.ndarray          # coeffs[i] multiplies (s - s0)**(lowest + i)
    converged: bool

    def coefficient(self, power):
        return complex(self.coeffs[power - self.lowest])

    @property
    def residue(self):
        return self.coefficient(-1)


def _laurent_pass(f, s0, radius, powers, n_samples):
    theta = 2.0 * math.pi * (np.arange(n_samples) + 0.5) / n_samples
    ring = radius * np.exp(1j * theta)
    vals = np.asarray(f(s0 + ring), dtype=complex)
    if np.any(~np.isfinite(vals)):
        raise SingularityOnCircleError("non-finite sample on extraction circle")
    if np.max(np.abs(vals)) > 1e250:
        raise SingularityOnCircleError("samples exceed overflow threshold; singularity on circle?")
    out = np.empty(len(powers), dtype=complex)
    for i, m in enumerate(powers):
        out[i] = np.mean(vals * ring ** (-m))
    return out


def laurent_coefficients(f, s0, radius, count, lowest=None):
    """Laurent coefficients of f about s0 by trapezoidal contour quadrature.

    Returns coefficients of (s-s0)**m for m = lowest .. lowest+count-1
    (default: the principal part c_{-count} .. c_{-1}).  Spectral accuracy is
    certified by doubling the sample count from 64 to 128.
    """
    if count < 1:
        raise ValidationError("count must be >= 1")
    if lowest is None:
        lowest = -count
    powers = list(range(lowest, lowest + count))
    a = _laurent_pass(f, s0, radius, powers, 64)
    b = _laurent_pass(f, s0, radius, powers, 128)
    delta = float(np.max(np.abs(a - b)))
    scale = max(float(np.max(np.abs(b))), 1.0)
    return LaurentResult(lowest=lowest, coeffs=b, converged=delta <= 1e-11 * scale)


def zeta_derivative(s, order=1):
    """zeta'(s) or zeta''(s) by Taylor-coefficient extraction on a radius-0.05 circle."""
    s = complex(s)
    if order not in (1, 2):
        raise ValidationError("order must be 1 or 2")
    if abs(s - 1.0) < 0.1:
        raise PoleError("zeta_derivative too close to the pole at s = 1")
    res = laurent_coefficients(lambda z: hurwitz_zeta_many(z, 1.0), s, 0.05,
                               count=1, lowest=order)
    if not res.converged:
        raise ConvergenceError("zeta_derivative contour did not converge")
    return res.coefficient(order) * math.factorial(order)


# ---------------------------------------------------------------------------
# residue terms as polynomials in log x
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogPolynomial:
    """Polynomial in log(x); coeffs[j] multiplies (log x)**j."""
    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def eval_log(self, logx):
        acc = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * logx + c
        return acc

    def __call__(self, x):
        return self.eval_log(cmath.log(complex(x)))


def residue_log_polynomial(principal, scale):
    """Residue of f(s) * exp(-scale*(s-s0)*log x) as a LogPolynomial in log x.

    `principal` lists the principal-part coefficients [c_{-1}, c_{-2}, ...]
    of f at s0.  The residue is sum_m c_{-m} (-scale*log x)^{m-1}/(m-1)!.
    """
    coeffs = []
    for j in range(len(principal)):
        coeffs.append(principal[j] * (-scale) ** j / math.factorial(j))
    return LogPolynomial(coeffs=tuple(coeffs))
