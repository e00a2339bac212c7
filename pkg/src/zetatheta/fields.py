"""Number fields as character lists, plus the arithmetic built on them.

A field enters either as the list of Dirichlet characters whose L-functions
multiply to its zeta function (abelian mode, full analytic continuation) or
as a plain coefficient file (file mode, right half-plane only).  This module
owns character arithmetic, the coefficient tables a(n) / a_k(n) / mu_k(n),
the residue constant at s=1 and the leading Laurent constant at s=0, and the
completed-zeta prefactors used by every contour in the package.
"""

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import (
    ParseError,
    RoundingDriftError,
    SignCheckError,
    ValidationError,
)


def kronecker(a, n):
    """Kronecker symbol (a/n) by quadratic-reciprocity recursion, exact."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    t = 1
    if n < 0:
        n = -n
        if a < 0:
            t = -t
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            if a % 8 in (3, 5):
                t = -t
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod q encoded by root-of-unity exponents.

    exponents[a] = e means chi(a) = exp(2 pi i e / order) for the residue a,
    and e = -1 marks chi(a) = 0 (gcd(a, q) > 1).
    """
    modulus: int
    order: int
    exponents: tuple

    def __post_init__(self):
        q, m = self.modulus, self.order
        if q < 1 or m < 1:
            raise ValidationError("modulus and order must be positive")
        if len(self.exponents) != q:
            raise ValidationError("exponent table must have length q")
        for a, e in enumerate(self.exponents):
            coprime = math.gcd(a, q) == 1
            if coprime and not (0 <= e < m):
                raise ValidationError(f"exponent out of range at residue {a}")
            if not coprime and e != -1:
                raise ValidationError(f"residue {a} shares a factor with q but is not zeroed")
        if self.exponents[1 % q] != 0:
            raise ValidationError("chi(1) must be 1")

    def _root_of_unity(self, e):
        if e < 0:
            return 0j
        if e == 0:
            return 1 + 0j
        if 2 * e == self.order:
            return -1 + 0j
        return cmath.exp(2j * math.pi * e / self.order)

    def value(self, n):
        return self._root_of_unity(self.exponents[n % self.modulus])

    def values_upto(self, n_max):
        """chi(1..n_max) as a complex array (index 0 unused)."""
        base = np.array([self._root_of_unity(e) for e in self.exponents])
        idx = np.arange(n_max + 1) % self.modulus
        out = base[idx]
        out[0] = 0
        return out

    @property
    def is_principal(self):
        return all(e <= 0 for e in self.exponents)

    @property
    def is_odd(self):
        e = self.exponents[(self.modulus - 1) % self.modulus]
        return e >= 0 and 2 * e == self.order

    def conjugate(self):
        m = self.order
        exps = tuple(e if e <= 0 else m - e for e in self.exponents)
        return DirichletCharacter(self.modulus, m, exps)

    @property
    def conductor(self):
        q = self.modulus
        for f in sorted(_divisors(q)):
            ok = True
            for a in range(1, q + 1):
                if a % f == 1 % f and math.gcd(a, q) == 1 and self.exponents[a % q] != 0:
                    ok = False
                    break
            if ok:
                return f
        return q

    def primitive(self):
        """The primitive character mod conductor inducing this one."""
        f = self.conductor
        q = self.modulus
        if f == q:
            return self._reduced()
        exps = [-1] * f
        for a in range(f):
            if math.gcd(a, f) != 1:
                continue
            b = a
            while math.gcd(b, q) != 1:
                b += f
            exps[a] = self.exponents[b % q]
        return DirichletCharacter(f, self.order, tuple(exps))._reduced()

    def _reduced(self):
        g = self.order
        for e in self.exponents:
            if e > 0:
                g = math.gcd(g, e)
        if g == self.order:
            # principal: order collapses to 1
            return DirichletCharacter(self.modulus, 1,
                                      tuple(0 if e == 0 else e for e in self.exponents)) \
                if all(e <= 0 for e in self.exponents) else self
        if g == 1:
            return self
        exps = tuple(e if e <= 0 else e // g for e in self.exponents)
        return DirichletCharacter(self.modulus, self.order // g, exps)

    @property
    def key(self):
        return (self.modulus, self.order, self.exponents)


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def principal_character(q=1):
    exps = tuple(0 if math.gcd(a, q) == 1 else -1 for a in range(q))
    return DirichletCharacter(q, 1, exps)


def kronecker_character(D):
    """Quadratic character n -> (D/n) as a character mod |D|."""
    q = abs(D)
    exps = []
    for a in range(q):
        v = kronecker(D, a)
        exps.append(-1 if v == 0 else (0 if v == 1 else 1))
    return DirichletCharacter(q, 2, tuple(exps))


def character_from_exponents(q, m, exps_1_to_q):
    """Build from the file convention: exponents listed for a = 1..q."""
    exps = [0] * q
    for a1, e in enumerate(exps_1_to_q, start=1):
        exps[a1 % q] = e
    return DirichletCharacter(q, m, tuple(exps))


def parse_character_file(path):
    """Parse `char <q> <m> <e_1>,...,<e_q>` lines; `#` starts a comment."""
    chars = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] != "char" or len(parts) != 4:
                raise ParseError("expected `char <q> <m> <e_1>,...,<e_q>`", line=lineno)
            try:
                q, m = int(parts[1]), int(parts[2])
                exps = [int(tok) for tok in parts[3].split(",")]
            except ValueError as exc:
                raise ParseError(f"bad integer: {exc}", line=lineno) from None
            if len(exps) != q:
                raise ParseError(f"expected {q} exponents, got {len(exps)}", line=lineno)
            try:
                chars.append(character_from_exponents(q, m, exps))
            except ValidationError as exc:
                raise ParseError(str(exc), line=lineno) from None
    if not chars:
        raise ParseError("no characters in file")
    return chars


@dataclass(frozen=True, eq=False)
class FieldDescriptor:
    """Signature, discriminant and analytic data of a number field."""
    r1: int
    r2: int
    degree: int
    disc: int
    characters: tuple = None          # abelian mode
    coeff_path: str = None            # file mode
    coefficients: np.ndarray = None   # file mode: a(0..N), a(0) unused
    label: str = ""

    @property
    def is_abelian(self):
        return self.characters is not None

    @property
    def unit_rank(self):
        return self.r1 + self.r2 - 1

    @property
    def cache_key(self):
        if self.is_abelian:
            return (self.r1, self.r2, self.disc, tuple(c.key for c in self.characters))
        return (self.r1, self.r2, self.disc, self.coeff_path)

    def __repr__(self):
        kind = "abelian" if self.is_abelian else "file"
        return (f"FieldDescriptor({self.label or '?'}: d={self.degree}, "
                f"r1={self.r1}, r2={self.r2}, D={self.disc}, {kind})")


def make_field_abelian(characters, label=""):
    """Assemble a field from its character list.

    Degree is the list length; the number of odd characters gives r2 and the
    conductor product gives |disc|.  The list must contain exactly one
    principal character, be closed under conjugation, and describe a field
    that is totally real or totally imaginary (any other odd-character count
    is inconsistent for an abelian field).
    """
    chars = tuple(c.primitive() for c in characters)
    if not chars:
        raise ValidationError("character list is empty")
    n_principal = sum(1 for c in chars if c.is_principal)
    if n_principal != 1:
        raise ValidationError(f"need exactly one principal character, got {n_principal}")
    keys = sorted(c.key for c in chars)
    conj_keys = sorted(c.conjugate().key for c in chars)
    if keys != conj_keys:
        raise ValidationError("character list is not closed under conjugation")
    d = len(chars)
    n_odd = sum(1 for c in chars if c.is_odd)
    if n_odd != 0 and 2 * n_odd != d:
        raise ValidationError(
            f"odd-character count {n_odd} is inconsistent: an abelian field is "
            f"totally real (0 odd) or totally imaginary (d/2 odd)")
    r2 = n_odd
    r1 = d - 2 * r2
    disc = 1
    for c in chars:
        disc *= c.conductor
    return FieldDescriptor(r1=r1, r2=r2, degree=d, disc=disc,
                           characters=chars, label=label)


def make_field_from_coeffs(path, r1, r2, disc, label=""):
    """Field backed by a `<n> <a_n>` coefficient file (strictly increasing n from 1)."""
    values = [0]
    expected = 1
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected `<n> <a_n>`", line=lineno)
            try:
                n, a_n = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("non-integer entry", line=lineno) from None
            if n != expected:
                raise ParseError(f"expected n = {expected}, got {n}", line=lineno)
            values.append(a_n)
            expected += 1
    if len(values) < 2:
        raise ParseError("coefficient file has no entries")
    if values[1] != 1:
        raise ValidationError("a(1) must be 1")
    return FieldDescriptor(r1=r1, r2=r2, degree=r1 + 2 * r2, disc=disc,
                           coeff_path=os.fspath(path),
                           coefficients=np.array(values, dtype=np.int64),
                           label=label)


def _cubic7_characters():
    # (Z/7)* = <3>; the two order-3 characters are even.
    chi = character_from_exponents(7, 3, [0, 2, 1, 1, 2, 0, -1])
    return (principal_character(), chi, chi.conjugate())


def _zeta5_characters():
    # (Z/5)* = <2>; chi(2) = i gives the full dual group of Q(zeta_5).
    chi = character_from_exponents(5, 4, [0, 1, 3, 2, -1])
    return (principal_character(), chi, chi.conjugate(),
            character_from_exponents(5, 2, [0, 1, 1, 0, -1]))


_BUILTIN_FIELDS = {
    "Q": lambda: make_field_abelian([principal_character()], label="Q"),
    "sqrt5": lambda: make_field_abelian(
        [principal_character(), kronecker_character(5)], label="Q(sqrt5)"),
    "cubic7": lambda: make_field_abelian(_cubic7_characters(), label="cubic7"),
    "zeta5": lambda: make_field_abelian(_zeta5_characters(), label="Q(zeta5)"),
    "gauss": lambda: make_field_abelian(
        [principal_character(), kronecker_character(-4)], label="Q(i)"),
}

_field_instances = {}


def builtin_field(name):
    """Named test fields: Q, sqrt5, cubic7, zeta5, gauss."""
    if name not in _BUILTIN_FIELDS:
        raise ValidationError(f"unknown builtin field {name!r}; "
                              f"choices: {sorted(_BUILTIN_FIELDS)}")
    if name not in _field_instances:
        _field_instances[name] = _BUILTIN_FIELDS[name]()
    return _field_instances[name]


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """values[n] for 1 <= n <= bound; kind 'forward' (a_k) or 'inverse' (mu_k)."""
    bound: int
    values: np.ndarray
    k: int
    kind: str

    def __getitem__(self, n):
        return int(self.values[n])


def dirichlet_convolve(f, g):
    """(f*g)(n) = sum_{d|n} f(d) g(n/d) on arrays indexed 1..N.

    Divisor pairs split into a strided-slice regime (small f-index, one slice
    per divisor) and a grouped regime (large f-index, one slice per multiple
    count), keeping the Python-level call count near N^(2/3) while the
    element work stays O(N log N).
    """
    n_max = len(f) - 1
    out = np.zeros_like(f)
    q0 = max(1, int(round((2.0 * n_max) ** (1.0 / 3.0))))
    d_cut = min(n_max, n_max // q0 + 1)
    for d in range(1, d_cut + 1):
        fd = f[d]
        if fd != 0:
            out[d::d] += fd * g[1:n_max // d + 1]
    for j in range(1, q0 + 1):
        lo, hi = d_cut + 1, n_max // j
        if hi >= lo and g[j] != 0:
            out[j * lo:j * hi + 1:j] += g[j] * f[lo:hi + 1]
    return out


def dirichlet_inverse(a):
    """Dirichlet inverse of a with a(1) = 1, exact in int64.

    Doubling blocks keep the recursion order (every inv[m] a block reads is
    final before the block starts, since m <= n/2) with both index regimes
    vectorized as in dirichlet_convolve.
    """
    n_max = len(a) - 1
    inv = np.zeros_like(a)
    inv[1] = 1
    done = 1
    while done < n_max:
        hi = min(2 * done, n_max)
        m_cut = max(1, math.isqrt(hi))
        for m in range(1, m_cut + 1):
            if inv[m] != 0:
                d_lo = max(2, done // m + 1)
                d_hi = hi // m
                if d_hi >= d_lo:
                    inv[m * d_lo:m * d_hi + 1:m] -= inv[m] * a[d_lo:d_hi + 1]
        for d in range(2, hi // (m_cut + 1) + 1):
            if a[d] != 0:
                m_lo = max(m_cut + 1, done // d + 1)
                m_hi = hi // d
                if m_hi >= m_lo:
                    inv[d * m_lo:d * m_hi + 1:d] -= a[d] * inv[m_lo:m_hi + 1]
        done = hi
    return inv


_coeff_cache = {}


def ideal_coeffs(field, n_max):
    """a_F(n) for n <= n_max: the number of integral ideals of norm n.

    For abelian fields this is the Dirichlet convolution of the character
    value sequences; imaginary parts must cancel and real parts must land on
    integers (drift beyond 1e-6 raises RoundingDriftError).
    """
    key = (field.cache_key, "a", 1, n_max)
    if key in _coeff_cache:
        return _coeff_cache[key]
    if not field.is_abelian:
        if n_max >= len(field.coefficients):
            raise ValidationError("coefficient file shorter than requested bound")
        vals = field.coefficients[:n_max + 1].copy()
    else:
        acc = field.characters[0].values_upto(n_max)
        for chi in field.characters[1:]:
            acc = dirichlet_convolve(acc, chi.values_upto(n_max))
        drift = max(float(np.max(np.abs(acc[1:].imag))),
                    float(np.max(np.abs(acc[1:].real - np.round(acc[1:].real)))))
        if drift > 1e-6:
            raise RoundingDriftError(f"ideal counts drifted {drift:.2e} from integers")
        vals = np.round(acc.real).astype(np.int64)
        vals[0] = 0
        if np.any(vals[1:] < 0):
            raise RoundingDriftError("negative ideal count")
    if vals[1] != 1:
        raise ValidationError("a(1) != 1")
    table = CoefficientTable(bound=n_max, values=vals, k=1, kind="forward")
    _coeff_cache[key] = table
    return table


def power_coeffs(field, k, n_max):
    """a_{F,k}(n): k-fold Dirichlet self-convolution of a_F."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    key = (field.cache_key, "a", k, n_max)
    if key in _coeff_cache:
        return _coeff_cache[key]
    base = ideal_coeffs(field, n_max).values
    vals = base.copy()
    for _ in range(k - 1):
        vals = dirichlet_convolve(vals, base)
    table = CoefficientTable(bound=n_max, values=vals, k=k, kind="forward")
    _coeff_cache[key] = table
    return table


def moebius_coeffs(field, k, n_max):
    """mu_{F,k}(n): the Dirichlet inverse of a_{F,k}, i.e. coefficients of 1/zeta_F^k."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    key = (field.cache_key, "mu", k, n_max)
    if key in _coeff_cache:
        return _coeff_cache[key]
    vals = dirichlet_inverse(power_coeffs(field, k, n_max).values)
    table = CoefficientTable(bound=n_max, values=vals, k=k, kind="inverse")
    _coeff_cache[key] = table
    return table


# ---------------------------------------------------------------------------
# field constants and completed-zeta prefactors
# ---------------------------------------------------------------------------

_constant_cache = {}


def residue_constant(field):
    """H_F = lim_{s->1} (s-1) zeta_F(s) = prod over non-principal chi of L(1, chi)."""
    key = (field.cache_key, "H")
    if key in _constant_cache:
        return _constant_cache[key]
    if not field.is_abelian:
        raise ValidationError("residue_constant needs an abelian field")
    h = 1 + 0j
    for chi in field.characters:
        if not chi.is_principal:
            h *= numerics.dirichlet_l(1.0, chi)
    if abs(h.imag) > 1e-9 * abs(h.real):
        raise RoundingDriftError(f"H_F came out non-real: {h}")
    h = float(h.real)
    if h <= 0:
        raise SignCheckError(f"H_F must be positive, got {h}")
    _constant_cache[key] = h
    return h


def laurent_constant(field):
    """C_F = lim_{s->0} zeta_F(s)/s^r, extracted on a radius-0.25 contour; negative."""
    key = (field.cache_key, "C")
    if key in _constant_cache:
        return _constant_cache[key]
    if not field.is_abelian:
        raise ValidationError("laurent_constant needs an abelian field")
    r = field.unit_rank

    def f(s):
        return numerics.dedekind_zeta_many(s, field) / s ** r

    res = numerics.laurent_coefficients(f, 0.0, 0.25, count=1, lowest=0)
    c = res.coefficient(0)
    if abs(c.imag) > 1e-9 * max(abs(c.real), 1e-30):
        raise RoundingDriftError(f"C_F came out non-real: {c}")
    c = float(c.real)
    if c >= 0:
        raise SignCheckError(f"C_F must be negative, got {c}")
    _constant_cache[key] = c
    return c


def gamma_prefactor_many(field, s, k=1):
    """[ (D/(4^r2 pi^d))^{s/2} Gamma^{r1}(s/2) Gamma^{r2}(s) ]^k, vectorized."""
    s = np.asarray(s, dtype=complex)
    d = field.degree
    q = field.disc / (4.0 ** field.r2 * math.pi ** d)
    out = np.exp(0.5 * s * math.log(q))
    if field.r1:
        out = out * numerics.gamma_many(s / 2.0) ** field.r1
    if field.r2:
        out = out * numerics.gamma_many(s) ** field.r2
    return out ** k if k != 1 else out


def omega_many(field, s, k=1):
    """Omega_F(s)^k = [prefactor * zeta_F(s)]^k, vectorized off the poles."""
    s = np.asarray(s, dtype=complex)
    return gamma_prefactor_many(field, s, k) * numerics.dedekind_zeta_many(s, field) ** k


def omega(field, s, k=1):
    return complex(omega_many(field, np.array([complex(s)]), k)[0])


def lambda_many(field, s, k=1):
    """Lambda_F(s)^k = [prefactor / zeta_F(1-s)]^k, vectorized."""
    s = np.asarray(s, dtype=complex)
    return gamma_prefactor_many(field, s, k) / numerics.dedekind_zeta_many(1.0 - s, field) ** k


def lambda_completed(field, s, k=1):
    return complex(lambda_many(field, np.array([complex(s)]), k)[0])
