"""Exact arithmetic in the five supported coefficient domains.

Supported domains: Q, F_p, F_p(t), Z_(p) (rationals with p-free
denominator) and Z[t]_(p) (fractions of integer polynomials in t whose
denominator does not vanish mod p).  The last two are discrete valuation
rings with uniformizer p; they carry a p-adic valuation, a Frobenius lift
and the induced p-derivation.

Univariate polynomials in the parameter t are stored as tuples of integer
coefficients in ascending order with no trailing zeros; () is the zero
polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    DivisionByZero,
    DomainMismatch,
    InvalidLift,
    NonUnitDivisor,
    NotDVRDomain,
)


class DomainKind(Enum):
    RATIONALS_Q = "Q"
    PRIME_FIELD_FP = "Fp"
    RATIONAL_FUNCTIONS_FP_T = "Fp(t)"
    P_LOCAL_INTEGERS_ZP = "Z_(p)"
    P_LOCAL_POLY_FRAC_ZTP = "Z[t]_(p)"


_FIELD_KINDS = frozenset(
    {DomainKind.RATIONALS_Q, DomainKind.PRIME_FIELD_FP, DomainKind.RATIONAL_FUNCTIONS_FP_T}
)
_DVR_KINDS = frozenset(
    {DomainKind.P_LOCAL_INTEGERS_ZP, DomainKind.P_LOCAL_POLY_FRAC_ZTP}
)
_T_KINDS = frozenset(
    {DomainKind.RATIONAL_FUNCTIONS_FP_T, DomainKind.P_LOCAL_POLY_FRAC_ZTP}
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# univariate polynomial helpers (integer coefficients, ascending order)

def _trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def upoly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def upoly_neg(a):
    return tuple(-c for c in a)


def upoly_sub(a, b):
    return upoly_add(a, upoly_neg(b))


def upoly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def upoly_scale(a, k):
    if k == 0:
        return ()
    return tuple(c * k for c in a)


def upoly_mod_p(a, p):
    return _trim([c % p for c in a])


def upoly_content(a) -> int:
    """Non-negative gcd of the coefficients; 0 for the zero polynomial."""
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def upoly_hasse(a, k):
    """Divided-power derivative: t^m -> binomial(m, k) t^(m-k)."""
    if k == 0:
        return a
    return _trim([math.comb(m, k) * a[m] for m in range(k, len(a))])


def upoly_divmod_fp(a, b, p):
    """Quotient and remainder in F_p[t]; inputs and outputs reduced mod p."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        coef = rem[i + len(b) - 1] * inv % p
        if coef:
            q[i] = coef
            for j, bj in enumerate(b):
                rem[i + j] = (rem[i + j] - coef * bj) % p
    return _trim(q), _trim(rem)


def upoly_gcd_fp(a, b, p):
    """Monic gcd in F_p[t]."""
    a, b = upoly_mod_p(a, p), upoly_mod_p(b, p)
    while b:
        a, b = b, upoly_divmod_fp(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _upoly_primitive(a):
    c = upoly_content(a)
    if c == 0:
        return 0, ()
    if a[-1] < 0:
        c = -c
    return c, tuple(x // c for x in a)


def upoly_gcd_z(a, b):
    """Gcd in Z[t] via Gauss: content gcd times primitive-part gcd.

    The primitive gcd uses pseudo-remainders, keeping everything integral.
    Result has positive leading coefficient.
    """
    if not a:
        return _abs_poly(b)
    if not b:
        return _abs_poly(a)
    ca, pa = _upoly_primitive(a)
    cb, pb = _upoly_primitive(b)
    cg = math.gcd(abs(ca), abs(cb))
    while pb:
        # pseudo-remainder: lc(pb)^(deg difference + 1) * pa mod pb
        d = len(pa) - len(pb)
        if d < 0:
            pa, pb = pb, pa
            continue
        lead = pb[-1]
        rem = list(upoly_scale(pa, lead ** (d + 1)))
        for i in range(d, -1, -1):
            if len(rem) >= i + len(pb) and rem[i + len(pb) - 1]:
                coef = rem[i + len(pb) - 1] // lead
                for j, bj in enumerate(pb):
                    rem[i + j] -= coef * bj
        rem = _trim(rem)
        pa, pb = pb, _upoly_primitive(rem)[1]
    g = upoly_scale(pa, cg)
    return _abs_poly(g)


def _abs_poly(a):
    if a and a[-1] < 0:
        return upoly_neg(a)
    return a


def upoly_divexact_z(a, b):
    """Exact division in Z[t]; raises if the division is not exact."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if not a:
        return ()
    rem = [Fraction(c) for c in a]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        coef = rem[i + len(b) - 1] / b[-1]
        q[i] = coef
        for j, bj in enumerate(b):
            rem[i + j] -= coef * bj
    if any(rem) or any(c.denominator != 1 for c in q):
        raise NonUnitDivisor("inexact polynomial division")
    return _trim([int(c) for c in q])


def upoly_str(a, p=None) -> str:
    """Render a t-polynomial; reparseable by the expression grammar."""
    if not a:
        return "0"
    parts = []
    for m in range(len(a) - 1, -1, -1):
        c = a[m]
        if c == 0:
            continue
        if m == 0:
            body = str(c)
        else:
            mono = "t" if m == 1 else f"t^{m}"
            if c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}"
        if parts and not body.startswith("-"):
            parts.append("+" + body)
        else:
            parts.append(body)
    return "".join(parts)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainSpec:
    """One of the five coefficient domains, with its prime where needed."""

    kind: DomainKind
    p: int | None = None

    def __post_init__(self):
        if self.kind is DomainKind.RATIONALS_Q:
            if self.p is not None:
                raise ValueError("Q takes no prime")
        else:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"{self.kind.value} needs a prime p, got {self.p!r}")

    # -- structure queries ---------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind in _FIELD_KINDS

    @property
    def is_dvr(self) -> bool:
        return self.kind in _DVR_KINDS

    @property
    def has_t(self) -> bool:
        return self.kind in _T_KINDS

    def __str__(self):
        if self.kind is DomainKind.RATIONALS_Q:
            return "Q"
        return {
            DomainKind.PRIME_FIELD_FP: f"F_{self.p}",
            DomainKind.RATIONAL_FUNCTIONS_FP_T: f"F_{self.p}(t)",
            DomainKind.P_LOCAL_INTEGERS_ZP: f"Z_({self.p})",
            DomainKind.P_LOCAL_POLY_FRAC_ZTP: f"Z[t]_({self.p})",
        }[self.kind]

    # -- scalar constructors --------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction or Scalar into this domain."""
        if isinstance(value, Scalar):
            if value.domain != self:
                raise DomainMismatch(f"scalar from {value.domain} used in {self}")
            return value
        if isinstance(value, Fraction):
            return self.from_fraction(value.numerator, value.denominator)
        if isinstance(value, int):
            return self.from_int(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_int(self, n: int) -> "Scalar":
        k = self.kind
        if k is DomainKind.RATIONALS_Q or k is DomainKind.P_LOCAL_INTEGERS_ZP:
            return Scalar(self, Fraction(n))
        if k is DomainKind.PRIME_FIELD_FP:
            return Scalar(self, n % self.p)
        # t-domains store (numerator, denominator) tuples
        if k is DomainKind.RATIONAL_FUNCTIONS_FP_T:
            return Scalar(self, (_trim([n % self.p]), (1,)))
        return Scalar(self, (_trim([n]), (1,)))

    def from_fraction(self, num: int, den: int) -> "Scalar":
        if den == 0:
            raise DivisionByZero("zero denominator")
        k = self.kind
        if k is DomainKind.RATIONALS_Q:
            return Scalar(self, Fraction(num, den))
        if k is DomainKind.P_LOCAL_INTEGERS_ZP:
            q = Fraction(num, den)
            if q.denominator % self.p == 0:
                raise NonUnitDivisor(f"{q} is not p-integral for p={self.p}")
            return Scalar(self, q)
        if k is DomainKind.PRIME_FIELD_FP:
            if den % self.p == 0:
                raise NonUnitDivisor(f"denominator {den} vanishes mod {self.p}")
            return Scalar(self, num * pow(den, -1, self.p) % self.p)
        return self.from_t_fraction((num,), (den,))

    def from_t_poly(self, coeffs) -> "Scalar":
        """Scalar from an integer t-polynomial given in ascending order."""
        return self.from_t_fraction(coeffs, (1,))

    def from_t_fraction(self, num, den) -> "Scalar":
        if not self.has_t:
            raise NotDVRDomain(f"{self} has no parameter t")
        return Scalar(self, _normalize_t_fraction(self, tuple(num), tuple(den)))

    @property
    def zero(self) -> "Scalar":
        return self.from_int(0)

    @property
    def one(self) -> "Scalar":
        return self.from_int(1)

    @property
    def t(self) -> "Scalar":
        return self.from_t_poly((0, 1))

    def default_t_image(self) -> "Scalar":
        """Image of t under the default Frobenius lift: t^p."""
        if not self.has_t:
            raise NotDVRDomain(f"{self} has no parameter t")
        return self.from_t_poly((0,) * self.p + (1,))


def rationals() -> DomainSpec:
    return DomainSpec(DomainKind.RATIONALS_Q)


def prime_field(p: int) -> DomainSpec:
    return DomainSpec(DomainKind.PRIME_FIELD_FP, p)


def rational_functions(p: int) -> DomainSpec:
    return DomainSpec(DomainKind.RATIONAL_FUNCTIONS_FP_T, p)


def p_local_integers(p: int) -> DomainSpec:
    return DomainSpec(DomainKind.P_LOCAL_INTEGERS_ZP, p)


def p_local_poly_fractions(p: int) -> DomainSpec:
    return DomainSpec(DomainKind.P_LOCAL_POLY_FRAC_ZTP, p)


def _normalize_t_fraction(domain, num, den):
    """Canonical (num, den) pair for the two t-domains.

    F_p(t): reduce mod p, cancel the gcd, make the denominator monic.
    Z[t]_(p): cancel the integer-polynomial gcd, make the denominator's
    leading coefficient positive, require den != 0 mod p afterwards.
    """
    p = domain.p
    if domain.kind is DomainKind.RATIONAL_FUNCTIONS_FP_T:
        num, den = upoly_mod_p(num, p), upoly_mod_p(den, p)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return ((), (1,))
        g = upoly_gcd_fp(num, den, p)
        if len(g) > 1:
            num = upoly_divmod_fp(num, g, p)[0]
            den = upoly_divmod_fp(den, g, p)[0]
        inv = pow(den[-1], -1, p)
        num = tuple(c * inv % p for c in num)
        den = tuple(c * inv % p for c in den)
        return (num, den)
    num, den = _trim(num), _trim(den)
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return ((), (1,))
    g = upoly_gcd_z(num, den)
    if g != (1,):
        num = upoly_divexact_z(num, g)
        den = upoly_divexact_z(den, g)
    if den[-1] < 0:
        num, den = upoly_neg(num), upoly_neg(den)
    if not upoly_mod_p(den, p):
        raise NonUnitDivisor(f"denominator {upoly_str(den)} vanishes mod {p}")
    return (num, den)


class Scalar:
    """Immutable exact value in one coefficient domain.

    Internal value per kind: Fraction for Q and Z_(p); a residue int for
    F_p; a reduced (num, den) pair of coefficient tuples for F_p(t) and
    Z[t]_(p).
    """

    __slots__ = ("domain", "value")

    def __init__(self, domain: DomainSpec, value):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    def canonicalized(self) -> "Scalar":
        """Re-run normalization; the identity on canonical scalars."""
        d = self.domain
        if d.kind is DomainKind.RATIONALS_Q or d.kind is DomainKind.P_LOCAL_INTEGERS_ZP:
            return Scalar(d, Fraction(self.value.numerator, self.value.denominator))
        if d.kind is DomainKind.PRIME_FIELD_FP:
            return Scalar(d, self.value % d.p)
        num, den = self.value
        return Scalar(d, _normalize_t_fraction(d, num, den))

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        d = self.domain.kind
        if d is DomainKind.PRIME_FIELD_FP:
            return self.value == 0
        if d is DomainKind.RATIONALS_Q or d is DomainKind.P_LOCAL_INTEGERS_ZP:
            return self.value == 0
        return not self.value[0]

    def is_one(self) -> bool:
        return self == self.domain.one

    def is_unit(self) -> bool:
        if self.is_zero():
            return False
        if self.domain.is_field:
            return True
        return self.valuation() == 0

    # -- arithmetic -------------------------------------------------------

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return self.domain.scalar(other)
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")
        return other

    def __add__(self, other):
        other = self._check(other)
        d = self.domain
        k = d.kind
        if k is DomainKind.PRIME_FIELD_FP:
            return Scalar(d, (self.value + other.value) % d.p)
        if k is DomainKind.RATIONALS_Q or k is DomainKind.P_LOCAL_INTEGERS_ZP:
            return Scalar(d, self.value + other.value)
        (an, ad), (bn, bd) = self.value, other.value
        num = upoly_add(upoly_mul(an, bd), upoly_mul(bn, ad))
        return Scalar(d, _normalize_t_fraction(d, num, upoly_mul(ad, bd)))

    def __neg__(self):
        d = self.domain
        k = d.kind
        if k is DomainKind.PRIME_FIELD_FP:
            return Scalar(d, -self.value % d.p)
        if k is DomainKind.RATIONALS_Q or k is DomainKind.P_LOCAL_INTEGERS_ZP:
            return Scalar(d, -self.value)
        num, den = self.value
        if k is DomainKind.RATIONAL_FUNCTIONS_FP_T:
            return Scalar(d, (upoly_mod_p(upoly_neg(num), d.p), den))
        return Scalar(d, (upoly_neg(num), den))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        d = self.domain
        k = d.kind
        if k is DomainKind.PRIME_FIELD_FP:
            return Scalar(d, self.value * other.value % d.p)
        if k is DomainKind.RATIONALS_Q or k is DomainKind.P_LOCAL_INTEGERS_ZP:
            return Scalar(d, self.value * other.value)
        (an, ad), (bn, bd) = self.value, other.value
        return Scalar(d, _normalize_t_fraction(d, upoly_mul(an, bn), upoly_mul(ad, bd)))

    def __truediv__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZero("scalar division by zero")
        d = self.domain
        k = d.kind
        if k is DomainKind.PRIME_FIELD_FP:
            return Scalar(d, self.value * pow(other.value, -1, d.p) % d.p)
        if k is DomainKind.RATIONALS_Q:
            return Scalar(d, self.value / other.value)
        if k is DomainKind.P_LOCAL_INTEGERS_ZP:
            q = self.value / other.value
            if q.denominator % d.p == 0:
                raise NonUnitDivisor(
                    f"{self.value}/{other.value} leaves Z_({d.p})"
                )
            return Scalar(d, q)
        (an, ad), (bn, bd) = self.value, other.value
        return Scalar(d, _normalize_t_fraction(d, upoly_mul(an, bd), upoly_mul(ad, bn)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._check(other) - self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("scalar powers take non-negative integer exponents")
        out = self.domain.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.domain == other.domain and self.value == other.value

    def __hash__(self):
        return hash((self.domain, self.value))

    def __repr__(self):
        return f"Scalar({self.domain}, {self})"

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        k = self.domain.kind
        if k is DomainKind.PRIME_FIELD_FP:
            return str(self.value)
        if k is DomainKind.RATIONALS_Q or k is DomainKind.P_LOCAL_INTEGERS_ZP:
            return str(self.value)
        num, den = self.value
        if den == (1,):
            return upoly_str(num)
        return f"({upoly_str(num)})/({upoly_str(den)})"

    def sign_and_magnitude(self):
        """(sign, |self| rendering) used by the polynomial printer.

        The t-domains carry signs inside their parenthesized form, so they
        report sign +1.
        """
        k = self.domain.kind
        if k is DomainKind.RATIONALS_Q or k is DomainKind.P_LOCAL_INTEGERS_ZP:
            if self.value < 0:
                return -1, str(-self.value)
            return 1, str(self.value)
        return 1, str(self)

    # -- valuation, Frobenius, delta ---------------------------------------

    def valuation(self):
        """p-adic valuation; math.inf for zero.  DVR domains only."""
        d = self.domain
        if not d.is_dvr:
            raise NotDVRDomain(f"{d} is not a discrete valuation ring")
        if self.is_zero():
            return math.inf
        if d.kind is DomainKind.P_LOCAL_INTEGERS_ZP:
            n, v = self.value.numerator, 0
            while n % d.p == 0:
                n //= d.p
                v += 1
            return v
        c, v = upoly_content(self.value[0]), 0
        while c % d.p == 0:
            c //= d.p
            v += 1
        return v

    def frobenius(self, t_image: "Scalar | None" = None) -> "Scalar":
        """Apply the Frobenius lift; identity on Z_(p), t -> t_image on
        Z[t]_(p) (default t^p).  Checks the congruence phi(a) = a^p mod p.
        """
        d = self.domain
        if not d.is_dvr:
            raise NotDVRDomain(f"{d} has no Frobenius lift here")
        if d.kind is DomainKind.P_LOCAL_INTEGERS_ZP:
            out = self
        else:
            if t_image is None:
                t_image = d.default_t_image()
            else:
                t_image = d.scalar(t_image)
                validate_scalar_t_image(d, t_image)
            num, den = self.value
            out = _upoly_eval(d, num, t_image) / _upoly_eval(d, den, t_image)
        diff = out - self ** d.p
        if not diff.is_zero() and diff.valuation() < 1:
            raise InvalidLift(f"Frobenius congruence fails on {self}")
        return out

    def delta(self, t_image: "Scalar | None" = None) -> "Scalar":
        """p-derivation delta(a) = (phi(a) - a^p)/p, always exact."""
        d = self.domain
        diff = self.frobenius(t_image) - self ** d.p
        return diff / d.from_int(d.p)


def _upoly_eval(domain, coeffs, at: Scalar) -> Scalar:
    """Evaluate an integer t-polynomial at a scalar point (Horner)."""
    out = domain.zero
    for c in reversed(coeffs):
        out = out * at + domain.from_int(c)
    return out


def validate_scalar_t_image(domain: DomainSpec, image: Scalar):
    """Check image = t^p mod p, the Frobenius-lift requirement for t."""
    diff = image - domain.default_t_image()
    if not diff.is_zero() and diff.valuation() < 1:
        raise InvalidLift(f"t-image {image} is not congruent to t^{domain.p} mod {domain.p}")


def t_hasse(a: Scalar, k: int) -> Scalar:
    """Divided-power t-derivative of order k on a t-domain scalar.

    On a fraction u/v this solves the Leibniz identity recursively:
    D^(k)(u/v) = (D^(k)u - sum_{i=1..k} D^(i)v * D^(k-i)(u/v)) / v.
    """
    if k == 0:
        return a
    d = a.domain
    if not d.has_t:
        raise NotDVRDomain(f"{d} has no parameter t")
    num, den = a.value
    if den == (1,):
        return Scalar(d, _normalize_t_fraction(d, upoly_hasse(num, k), (1,)))
    v = Scalar(d, _normalize_t_fraction(d, den, (1,)))
    levels = [a]
    for j in range(1, k + 1):
        s = Scalar(d, _normalize_t_fraction(d, upoly_hasse(num, j), (1,)))
        for i in range(1, j + 1):
            di_v = Scalar(d, _normalize_t_fraction(d, upoly_hasse(den, i), (1,)))
            s = s - di_v * levels[j - i]
        levels.append(s / v)
    return levels[k]


# -- spec-level functional surface ------------------------------------------

def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def p_valuation(a: Scalar):
    return a.valuation()


def scalar_frobenius(a: Scalar, t_image: Scalar | None = None) -> Scalar:
    return a.frobenius(t_image)


def scalar_delta(a: Scalar, t_image: Scalar | None = None) -> Scalar:
    return a.delta(t_image)
