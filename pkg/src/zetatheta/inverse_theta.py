"""Inverse theta side: mu-weighted kernel sums and the zero-residue series.

U(x) collects the Moebius-weighted shifted kernels, the residue of the
inverse completed zeta at s = 0, and half the sum of residues at the
non-trivial zeros; U(1/x) = sqrt(x) U(x) is equivalent to the functional
equation of 1/zeta_F^k.  The classical Hardy-Littlewood-Ramanujan identity
and the Dixit-Gupta-Vatwani identity are the F = Q and quadratic-field
specializations, each checked through its own independent formulas.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import fields, numerics, steen
from .errors import (
    ConvergenceError,
    DomainError,
    ParseError,
    SectorError,
    ValidationError,
    ZeroNotSimpleError,
)


# ---------------------------------------------------------------------------
# zero lists
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroList:
    """Ascending positive imaginary parts of critical-line zeros."""
    gammas: tuple
    source: str = "unknown"
    field_label: str = ""

    def __post_init__(self):
        g = self.gammas
        if any(v <= 0 for v in g):
            raise ValidationError("zero ordinates must be positive")
        for i in range(1, len(g)):
            if g[i] - g[i - 1] <= 1e-6:
                raise ValidationError(
                    f"zeros must be ascending and separated by > 1e-6 "
                    f"(entries {i - 1}, {i}: {g[i - 1]}, {g[i]})")

    def __len__(self):
        return len(self.gammas)

    def head(self, count):
        return ZeroList(gammas=self.gammas[:count], source=self.source,
                        field_label=self.field_label)


def load_zeros(path, field_label=""):
    """Read a zeros file: one ascending positive decimal per line, `#` comments."""
    gammas = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                val = float(line)
            except ValueError:
                raise ParseError(f"not a decimal: {line!r}", line=lineno) from None
            if gammas and val <= gammas[-1]:
                raise ParseError(f"zeros not ascending at {val}", line=lineno)
            if val <= 0:
                raise ParseError(f"zero ordinate must be positive: {val}", line=lineno)
            gammas.append(val)
    return ZeroList(gammas=tuple(gammas), source=str(path), field_label=field_label)


def write_zeros(path, zeros):
    """Write gammas in the zeros-file format (ASCII decimals, LF, round-trip safe)."""
    gammas = zeros.gammas if isinstance(zeros, ZeroList) else tuple(zeros)
    with open(path, "w") as fh:
        for g in gammas:
            fh.write(f"{g:.12f}\n".rstrip("\n") + "\n")
    return path


# ---------------------------------------------------------------------------
# the L series (mu-weighted shifted kernels)
# ---------------------------------------------------------------------------

def _divisor_tail(m, kappa, n_from):
    """Safe upper bound for sum_{n > N} d_m(n) / n^kappa, kappa >= 1.5."""
    if n_from < 16:
        n_from = 16
    log_n = math.log(n_from)
    density = log_n ** (m - 1) / math.factorial(m - 1)
    return 4.0 * density * n_from ** (1.0 - kappa) / (kappa - 1.0)


def _small_z_shape(kr1, kr2):
    """Majorant data: |Z(y)| <= K * |y|^m0 * (1 + |log y|^p) for |y| <= 1/2.

    m0 is the leading left-pole location, p the log degree of its residue
    polynomial; K folds the residue coefficients plus headroom for the
    higher-order poles.
    """
    m0 = 1 if kr2 >= 1 else 2
    lead = steen._left_pole_polynomial(kr1, kr2, m0)
    p = lead.degree
    k_const = 3.0 * (1.0 + sum(abs(c) for c in lead.coeffs))
    return m0, p, k_const


def l_series(field, k, x, tol=1e-7, n_max=10_000_000, _details=False):
    """L_{F,-k}(x) = sum_n (mu_{F,k}(n)/n) Z_{k r1, k r2}(scale * sqrt(x) / n).

    The kernel argument decreases in n, so the tail is controlled through the
    ascending expansion of Z near 0 and the divisor-function majorant of
    |mu_{F,k}|; if the certified remainder cannot reach `tol` by `n_max`
    (leading kernel exponent 1, i.e. fields with complex embeddings) a
    ConvergenceError carries the slow-convergence diagnosis.
    """
    x = complex(x)
    if x == 0:
        raise DomainError("l_series undefined at x = 0")
    d = field.degree
    if abs(cmath.phase(x)) >= math.pi * d / 2.0 - 0.2:
        raise SectorError("x outside the theta sector")
    kr1, kr2 = k * field.r1, k * field.r2
    scale = 2.0 ** kr2 * math.pi ** (k * d / 2.0) / field.disc ** (k / 2.0)
    alpha = scale * cmath.sqrt(x)
    a_abs = abs(alpha)
    m_div = d * k

    # choose N so the certified absolute tail is below tol/2
    m0, p_log, k_const = _small_z_shape(kr1, kr2)
    bound_const = k_const * max(a_abs, 1e-30) ** m0
    kappa = 1.0 + m0 - (0.1 if p_log else 0.0)
    n_trunc = max(int(2 * a_abs) + 16, 64)
    while True:
        # log growth of |Z| along the tail: |log y| at the truncation point,
        # plus log(n/N)^p <= 4^p (n/N)^0.1 charged to the exponent discount
        log_factor = 1.0 + abs(math.log(a_abs / n_trunc)) ** p_log + \
            (4.0 ** p_log if p_log else 0.0)
        tail = bound_const * log_factor * _divisor_tail(m_div, kappa, n_trunc)
        if tail < tol / 2.0:
            break
        if n_trunc >= n_max:
            raise ConvergenceError(
                f"l_series slow convergence: certified remainder {tail:.2e} > {tol / 2:g} "
                f"at N = {n_max} (leading kernel exponent {m0})")
        n_trunc = min(2 * n_trunc, n_max)

    table = fields.moebius_coeffs(field, k, n_trunc)
    mu = table.values
    total = 0.0 + 0.0j
    # large kernel arguments one by one through the quadrature route
    n_quad = min(int(a_abs / 0.5) + 1, n_trunc)
    for n in range(1, n_quad + 1):
        if mu[n]:
            total += (mu[n] / n) * steen.z_shifted(kr1, kr2, alpha / n, route="subtract",
                                                   tol=1e-13)
    # the rest via the vectorized ascending expansion, blocked by magnitude
    if n_quad < n_trunc:
        ns = np.nonzero(mu[n_quad + 1:n_trunc + 1])[0] + n_quad + 1
        if len(ns):
            ys = alpha / ns
            big = np.abs(ys) > 0.05
            for mask in (big, ~big):
                if np.any(mask):
                    zs = steen.z_small_series_many(kr1, kr2, ys[mask], tol=1e-15)
                    total += complex(np.sum(mu[ns[mask]] / ns[mask] * zs))
    if _details:
        return total, n_trunc, tail
    return total


# ---------------------------------------------------------------------------
# residues of Lambda^k at s = 0, s = 1 and at the zeros
# ---------------------------------------------------------------------------

_r0_inv_cache = {}


def r0_inverse_polynomial(field, k):
    """LogPolynomial P with Res_{s=0}[Lambda_F^k(s) x^{-s/2}] = P(log x); zero when r = 0."""
    key = (field.cache_key, k)
    if key not in _r0_inv_cache:
        kr = k * field.unit_rank
        if kr == 0:
            poly = numerics.LogPolynomial(coeffs=(0.0 + 0.0j,))
        else:
            res = numerics.laurent_coefficients(
                lambda s: fields.lambda_many(field, s, k), 0.0, 0.25, count=kr)
            if not res.converged:
                raise ConvergenceError("inverse R_0 contour did not converge")
            principal = [res.coefficient(-m) for m in range(1, kr + 1)]
            poly = numerics.residue_log_polynomial(principal, scale=0.5)
        _r0_inv_cache[key] = poly
    return _r0_inv_cache[key]


def r0_inverse(field, k, x):
    """Residue at s = 0 of Lambda_F^k(s) x^{-s/2} (absent for unit rank 0, e.g. F = Q)."""
    x = complex(x)
    if x == 0:
        raise DomainError("r0_inverse undefined at x = 0")
    return r0_inverse_polynomial(field, k)(x)


def r1_inverse(field, k, x):
    """Residue at s = 1 of Lambda_F^k(s) x^{-s/2}, by an independent contour at s = 1."""
    x = complex(x)
    kr = k * field.unit_rank
    if kr == 0:
        return 0.0 + 0.0j
    res = numerics.laurent_coefficients(
        lambda s: fields.lambda_many(field, s, k), 1.0, 0.25, count=kr)
    if not res.converged:
        raise ConvergenceError("inverse R_1 contour did not converge")
    principal = [res.coefficient(-m) for m in range(1, kr + 1)]
    poly = numerics.residue_log_polynomial(principal, scale=0.5)
    return poly(x) / cmath.sqrt(x)


_rho_cache = {}


def _lambda_principal_at_zero(field, k, gamma, radius=0.05):
    """Principal part of Lambda_F^k at rho = 1/2 + i gamma, with simplicity diagnostic."""
    key = (field.cache_key, k, round(float(gamma), 9))
    if key in _rho_cache:
        return _rho_cache[key]
    rho = 0.5 + 1j * float(gamma)
    res = numerics.laurent_coefficients(
        lambda s: fields.lambda_many(field, s, k), rho, radius, count=k + 1)
    if not res.converged:
        raise ConvergenceError(f"residue contour at gamma = {gamma} did not converge")
    deepest = abs(res.coefficient(-(k + 1))) * radius
    lead = abs(res.coefficient(-k))
    if lead < 1e-12 and deepest > 1e-12:
        raise ZeroNotSimpleError(
            f"extraction at gamma = {gamma} looks like a pole of order > {k}")
    if deepest > 1e-6 * max(lead, 1e-30):
        raise ZeroNotSimpleError(
            f"zero at gamma = {gamma} fails the simplicity diagnostic "
            f"(|c_-(k+1)| * r / |c_-k| = {deepest / max(lead, 1e-300):.2e})")
    principal = [res.coefficient(-m) for m in range(1, k + 1)]
    poly = numerics.residue_log_polynomial(principal, scale=0.5)
    _rho_cache[key] = (rho, poly)
    return _rho_cache[key]


def r_rho(field, k, x, gamma):
    """Conjugate-pair residue contribution at rho = 1/2 + i gamma and its mirror.

    Returns R_rho(x) + R_conj(rho)(x); real for real positive x.
    """
    x = complex(x)
    if x == 0:
        raise DomainError("r_rho undefined at x = 0")
    rho, poly = _lambda_principal_at_zero(field, k, gamma)
    logx = cmath.log(x)
    term = cmath.exp(-rho * logx / 2.0) * poly.eval_log(logx)
    # Lambda(conj s) = conj(Lambda(s)), so the principal part at the conjugate
    # zero has conjugated coefficients; for real x > 0 the pair sum is 2 Re.
    conj_poly = numerics.LogPolynomial(tuple(complex(c).conjugate() for c in poly.coeffs))
    partner = cmath.exp(-rho.conjugate() * logx / 2.0) * conj_poly.eval_log(logx)
    return term + partner


def zero_sum(field, k, x, zeros):
    """Sum of conjugate-pair residues over the listed zeros, ascending gamma.

    Returns (sum, tail_estimate) with the tail estimated by the magnitude of
    the last included pair.
    """
    if len(zeros) == 0:
        raise ValidationError("zero_sum needs a nonempty zero list")
    total = 0.0 + 0.0j
    last = 0.0
    for g in zeros.gammas:
        pair = r_rho(field, k, x, g)
        total += pair
        last = abs(pair)
    return total, last


def u_inverse(field, k, x, zeros, tol=1e-7):
    """U_{F,-k}(x) = L_{F,-k}(x) + R_0(x) + (1/2) sum_rho R_rho(x)."""
    zsum, _ = zero_sum(field, k, x, zeros)
    return l_series(field, k, x, tol=tol) + r0_inverse(field, k, x) + 0.5 * zsum


@dataclass(frozen=True)
class InverseReport:
    x: complex
    lhs: complex
    rhs: complex
    rel_error: float
    zeros_used: int
    zero_tail_estimate: float

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)


def check_inverse_theta(field, k, x, zeros, tol=1e-6):
    """Verify U(1/x) = sqrt(x) U(x) for 1/zeta_F^k."""
    x = complex(x)
    inner = min(tol * 0.25, 1e-7)
    z_x, tail_x = zero_sum(field, k, x, zeros)
    z_inv, tail_inv = zero_sum(field, k, 1.0 / x, zeros)
    u_x = l_series(field, k, x, tol=inner) + r0_inverse(field, k, x) + 0.5 * z_x
    u_inv = l_series(field, k, 1.0 / x, tol=inner) + r0_inverse(field, k, 1.0 / x) + 0.5 * z_inv
    rhs = cmath.sqrt(x) * u_x
    rel = abs(u_inv - rhs) / max(abs(u_inv), abs(rhs), 1e-30)
    return InverseReport(x=x, lhs=u_inv, rhs=rhs, rel_error=rel,
                         zeros_used=len(zeros),
                         zero_tail_estimate=max(tail_x, tail_inv))


# ---------------------------------------------------------------------------
# Hardy-Littlewood-Ramanujan identity (F = Q, k = 1 in its classical variables)
# ---------------------------------------------------------------------------

def _smooth_weight(u):
    """C^2 bump: 1 on [0, 1/2], quintic smoothstep down to 0 at 1."""
    v = np.clip((np.asarray(u, dtype=float) - 0.5) * 2.0, 0.0, 1.0)
    return 1.0 - v ** 3 * (10.0 - 15.0 * v + 6.0 * v * v)


def smoothed_mu_exp_sum(x, n_smooth=1_000_000):
    """sum mu(n)/n * exp(-x/n^2), Abel-stabilized with a smooth cutoff at n_smooth."""
    if x <= 0:
        raise DomainError("needs x > 0")
    mu = fields.moebius_coeffs(fields.builtin_field("Q"), 1, n_smooth).values
    n = np.arange(1, n_smooth + 1, dtype=float)
    w = _smooth_weight(n / n_smooth)
    return float(np.sum(mu[1:] / n * np.exp(-x / (n * n)) * w))


_zeta_prime_cache = {}


def _zeta_prime_at_zero(gamma):
    key = round(float(gamma), 9)
    if key not in _zeta_prime_cache:
        _zeta_prime_cache[key] = numerics.zeta_derivative(0.5 + 1j * float(gamma), 1)
    return _zeta_prime_cache[key]


def hlr_zero_term(x, zeros):
    """(1/(2 sqrt(pi))) sum over zero pairs of (pi/sqrt(x))^rho Gamma((1-rho)/2)/zeta'(rho)."""
    base = math.pi / math.sqrt(x)
    total = 0.0
    for g in zeros.gammas:
        rho = 0.5 + 1j * g
        term = base ** rho * numerics.complex_gamma((1.0 - rho) / 2.0) / _zeta_prime_at_zero(g)
        total += 2.0 * term.real
    return total / (2.0 * math.sqrt(math.pi))


def hlr_check(x, zeros, tol=1e-4, n_smooth=1_000_000):
    """Check Eq-style identity: sum mu(n)/n e^{-x/n^2} against its reflected form.

    lhs is the smoothed exponential Moebius sum; rhs is sqrt(pi/x) times the
    reflected sum minus the zero term.  At the symmetric point x = pi the two
    exponential sums cancel termwise and the residual reduces to the zero
    term's own numerics.
    """
    if x <= 0:
        raise DomainError("hlr_check needs x > 0")
    lhs = smoothed_mu_exp_sum(x, n_smooth)
    reflected = smoothed_mu_exp_sum(math.pi ** 2 / x, n_smooth)
    zterm = hlr_zero_term(x, zeros)
    rhs = math.sqrt(math.pi / x) * reflected - zterm
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)
    return InverseReport(x=complex(x), lhs=complex(lhs), rhs=complex(rhs),
                         rel_error=rel, zeros_used=len(zeros),
                         zero_tail_estimate=0.0)


# ---------------------------------------------------------------------------
# Dixit-Gupta-Vatwani identity (quadratic fields and Q)
# ---------------------------------------------------------------------------

_dgv_r0_cache = {}


def _dgv_r0_polynomial(field):
    """LogPolynomial P with R_0(alpha) = P(log alpha) in the DGV normalization."""
    key = field.cache_key
    if key not in _dgv_r0_cache:
        r = field.unit_rank
        if r == 0:
            poly = numerics.LogPolynomial(coeffs=(0.0 + 0.0j,))
        else:
            def h(s):
                out = np.ones_like(s)
                if field.r1:
                    out = out * numerics.gamma_many((1.0 - s) / 2.0) ** field.r1
                if field.r2:
                    out = out * numerics.gamma_many(1.0 - s) ** field.r2
                return out / numerics.dedekind_zeta_many(s, field)

            res = numerics.laurent_coefficients(h, 0.0, 0.25, count=r)
            if not res.converged:
                raise ConvergenceError("DGV R_0 contour did not converge")
            principal = [res.coefficient(-m) for m in range(1, r + 1)]
            poly = numerics.residue_log_polynomial(principal, scale=-1.0)
        _dgv_r0_cache[key] = poly
    return _dgv_r0_cache[key]


_field_zeta_prime_cache = {}


def dedekind_zeta_prime(field, gamma):
    """zeta_F'(1/2 + i gamma) by Taylor-coefficient extraction on a small circle."""
    key = (field.cache_key, round(float(gamma), 9))
    if key not in _field_zeta_prime_cache:
        res = numerics.laurent_coefficients(
            lambda s: numerics.dedekind_zeta_many(s, field),
            0.5 + 1j * float(gamma), 0.05, count=1, lowest=1)
        if not res.converged:
            raise ConvergenceError("zeta_F' contour did not converge")
        _field_zeta_prime_cache[key] = res.coefficient(1)
    return _field_zeta_prime_cache[key]


def _dgv_zero_sum(field, alpha, zeros):
    """sum over pairs of R_rho(alpha) = alpha^rho Gamma-form / zeta_F'(rho)."""
    total = 0.0
    for g in zeros.gammas:
        rho = 0.5 + 1j * g
        gam = 1.0 + 0.0j
        if field.r1:
            gam *= numerics.complex_gamma((1.0 - rho) / 2.0) ** field.r1
        if field.r2:
            gam *= numerics.complex_gamma(1.0 - rho) ** field.r2
        term = alpha ** rho * gam / dedekind_zeta_prime(field, g)
        total += 2.0 * term.real
    return total


def dgv_check(field, x, zeros, tol=1e-5):
    """Check the alpha/beta form of the inverse identity for Q or a quadratic field.

    The left side reuses the kernel machinery (l_series); the right side is
    built from the DGV residue formulas with zeta_F' extracted independently,
    so the comparison crosses two genuinely different evaluation routes.
    """
    if field.degree > 2:
        raise DomainError("dgv_check covers Q and quadratic fields")
    x = float(x)
    if x <= 0:
        raise DomainError("dgv_check needs x > 0")
    d = field.degree
    scale = 2.0 ** field.r2 * math.pi ** (d / 2.0) / math.sqrt(field.disc)
    alpha = scale * math.sqrt(x)
    beta = scale / math.sqrt(x)
    inner = min(tol * 0.25, 1e-7)
    lhs = math.sqrt(alpha) * l_series(field, 1, x, tol=inner) \
        - math.sqrt(beta) * l_series(field, 1, 1.0 / x, tol=inner)
    r0p = _dgv_r0_polynomial(field)
    rhs = r0p(alpha) / math.sqrt(alpha) - r0p(beta) / math.sqrt(beta) \
        + 0.5 * (_dgv_zero_sum(field, alpha, zeros) / math.sqrt(alpha)
                 - _dgv_zero_sum(field, beta, zeros) / math.sqrt(beta))
    rhs = complex(rhs)
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)
    return InverseReport(x=complex(x), lhs=complex(lhs), rhs=rhs, rel_error=rel,
                         zeros_used=len(zeros), zero_tail_estimate=0.0)
