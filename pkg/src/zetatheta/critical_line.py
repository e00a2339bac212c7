"""Completed zeta, the real even Xi function, and critical-line zero scanning.

Xi_F(t) = xi_F(1/2 + it) is real and even, so its sign changes locate the
non-trivial zeros of zeta_F on the critical line.  The scanner works on an
exponentially rescaled copy of Xi (a positive factor, so the sign pattern is
untouched) to keep magnitudes in a sane range, brackets every sign change on
a grid, and refines each bracket by bisection.  The Phi integral ties the
Xi profile back to the forward theta function, crossing the whole stack.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import fields, theta
from .errors import (
    ConvergenceError,
    LostBracketError,
    RealityViolationError,
    SectorError,
    ValidationError,
)


def xi_completed(field, s):
    """xi_F(s) = (1/2) s (s-1) Omega_F(s); entire, symmetric under s -> 1-s."""
    s = complex(s)
    return 0.5 * s * (s - 1.0) * fields.omega(field, s)


def _xi_rescaled_many(field, ts):
    """exp(pi d t / 4) * Xi_F(t) on an array of real t, with reality check."""
    ts = np.asarray(ts, dtype=float)
    s = 0.5 + 1j * ts
    vals = 0.5 * s * (s - 1.0) * fields.omega_many(field, s)
    scale = np.exp(math.pi * field.degree * ts / 4.0)
    vals = vals * scale
    bad = np.abs(vals.imag) > 1e-9 * (1.0 + np.abs(vals.real))
    if np.any(bad):
        i = int(np.argmax(np.abs(vals.imag) / (1.0 + np.abs(vals.real))))
        raise RealityViolationError(
            f"Xi_F(t) imaginary part too large at t = {ts.flat[i]}: {vals.flat[i]}")
    return vals.real


def big_xi(field, t):
    """Xi_F(t) = xi_F(1/2 + it); the imaginary part is checked and discarded."""
    t = float(t)
    v = xi_completed(field, 0.5 + 1j * t)
    if abs(v.imag) > 1e-9 * (1.0 + abs(v.real)):
        raise RealityViolationError(f"Xi_F({t}) came out non-real: {v}")
    return v.real


@dataclass(frozen=True)
class ScanResult:
    brackets: tuple          # (t_lo, t_hi) sign-change intervals
    refined: tuple           # zero ordinates, one per bracket
    residuals: tuple         # |rescaled Xi| at each refined ordinate
    grid_step: float
    range: tuple


def refine_zero(field, bracket, tol=1e-9):
    """Bisect a sign-change bracket of the rescaled Xi down to width `tol`."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not hi > lo:
        raise ValidationError("bracket must satisfy t_lo < t_hi")
    f_lo = float(_xi_rescaled_many(field, [lo])[0])
    f_hi = float(_xi_rescaled_many(field, [hi])[0])
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise LostBracketError(f"no sign change across [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = float(_xi_rescaled_many(field, [mid])[0])
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def scan_zeros(field, t_min, t_max, step):
    """Bracket and refine every sign change of Xi_F on [t_min, t_max]."""
    if not (0 <= t_min < t_max):
        raise ValidationError("need 0 <= t_min < t_max")
    if step <= 0:
        raise ValidationError("step must be positive")
    n_pts = int(math.ceil((t_max - t_min) / step)) + 1
    ts = np.linspace(t_min, t_max, n_pts)
    vals = _xi_rescaled_many(field, ts)
    signs = np.sign(vals)
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    brackets = [(float(ts[i]), float(ts[i + 1])) for i in flips]
    refined, residuals = [], []
    for br in brackets:
        g = refine_zero(field, br)
        refined.append(g)
        residuals.append(abs(float(_xi_rescaled_many(field, [g])[0])))
    for a, b in zip(refined, refined[1:]):
        if b - a < 2.0 * step:
            warnings.warn(f"zeros at {a:.6f} and {b:.6f} closer than twice the "
                          f"scan step {step}; consider a finer grid", stacklevel=2)
    return ScanResult(brackets=tuple(brackets), refined=tuple(refined),
                      residuals=tuple(residuals), grid_step=float(step),
                      range=(float(t_min), float(t_max)))


@dataclass(frozen=True)
class PhiReport:
    z: complex
    integral: complex        # int_0^T Xi(t)/(t^2+1/4) cos(zt) dt
    theta_side: complex      # -(pi/2)[e^{-z/2} W(e^{-2z}) + 2^r1 C_F (e^{-z/2}+e^{z/2})]
    residual: float
    height: float


def phi_identity_check(field, z, T=None, tol=1e-6):
    """Check the Phi integral identity tying Xi_F to the forward theta function.

    Both sides are independently computable: the left by quadrature of
    Xi_F(t)/(t^2 + 1/4) cos(zt), the right through the theta machinery.
    """
    z = complex(z)
    d = field.degree
    rate = math.pi * d / 4.0 - abs(z.imag)
    if rate < 0.2:
        raise SectorError(f"|Im z| must stay below pi*{d}/4 - 0.2")
    if T is None:
        T = (math.log(1.0 / tol) + 25.0) / rate

    def lhs_sum(nodes_per_panel):
        panels = max(10, int(T / 1.5))
        edges = np.linspace(0.0, T, panels + 1)
        xg, wg = np.polynomial.legendre.leggauss(nodes_per_panel)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        t = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        w = (half[:, None] * wg[None, :]).ravel()
        s = 0.5 + 1j * t
        xi = 0.5 * s * (s - 1.0) * fields.omega_many(field, s)
        integrand = xi / (t * t + 0.25) * np.cos(z * t)
        return complex(np.sum(integrand * w))

    v1 = lhs_sum(16)
    v2 = lhs_sum(32)
    if abs(v2 - v1) > max(tol * 0.1, 1e-12):
        raise ConvergenceError(f"Phi integral did not settle: delta {abs(v2 - v1):.2e}")
    x_theta = cmath.exp(-2.0 * z)
    w_val = theta.w_theta(field, 1, x_theta, tol=min(tol * 1e-2, 1e-9))
    c_term = 2.0 ** field.r1 * fields.laurent_constant(field) * \
        (cmath.exp(-z / 2.0) + cmath.exp(z / 2.0))
    rhs = -(math.pi / 2.0) * (cmath.exp(-z / 2.0) * w_val + c_term)
    return PhiReport(z=z, integral=v2, theta_side=rhs, residual=abs(v2 - rhs),
                     height=float(T))
