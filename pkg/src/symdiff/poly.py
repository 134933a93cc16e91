"""Sparse multivariate polynomials over any supported coefficient domain.

Terms are stored as a dict mapping exponent tuples to nonzero scalars.
Polynomials are immutable by convention: no method mutates terms after
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coeff import DomainSpec, Scalar, t_hasse
from .errors import (
    InexactDivision,
    InvalidLift,
    NoParameterT,
    NotDVRDomain,
    RingMismatch,
)


@dataclass(frozen=True)
class MultiIndex:
    """Exponent vector of a divided-power derivative.

    exps has one entry per ring variable; t_order is the order of the
    derivative in the coefficient parameter t (0 where there is no t).
    """

    exps: tuple
    t_order: int = 0

    @property
    def order(self) -> int:
        return sum(self.exps) + self.t_order

    def is_identity(self) -> bool:
        return self.order == 0


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total order on exponent tuples, given by a sort key."""

    def key(self, exps):
        raise NotImplementedError

    def signature(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Lex(MonomialOrder):
    perm: tuple | None = None

    def key(self, exps):
        if self.perm is not None:
            return tuple(exps[i] for i in self.perm)
        return exps

    def signature(self):
        return ("lex", self.perm)


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    perm: tuple | None = None

    def key(self, exps):
        if self.perm is not None:
            exps = tuple(exps[i] for i in self.perm)
        return (sum(exps),) + tuple(-e for e in reversed(exps))

    def signature(self):
        return ("grevlex", self.perm)


@dataclass(frozen=True)
class Block(MonomialOrder):
    """Block order: compare the first `split` exponents, then the rest.

    With the auxiliary variables in the first block this is an
    elimination order.
    """

    split: int = 1
    first: MonomialOrder = field(default_factory=GrevLex)
    rest: MonomialOrder = field(default_factory=GrevLex)

    def key(self, exps):
        return (self.first.key(exps[: self.split]), self.rest.key(exps[self.split:]))

    def signature(self):
        return ("block", self.split, self.first.signature(), self.rest.signature())


GREVLEX = GrevLex()
LEX = Lex()


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring: coefficient domain plus ordered variable names."""

    domain: DomainSpec
    vars: tuple

    def __post_init__(self):
        names = tuple(self.vars)
        object.__setattr__(self, "vars", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if "t" in names:
            raise ValueError("'t' is reserved for the coefficient parameter")

    def __str__(self):
        return f"{self.domain}[{', '.join(self.vars)}]"

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise KeyError(name) from None

    # -- constructors ---------------------------------------------------

    def polynomial(self, terms: dict) -> "Polynomial":
        clean = {}
        for exps, c in terms.items():
            c = self.domain.scalar(c)
            if not c.is_zero():
                if len(exps) != self.nvars:
                    raise ValueError(f"exponent tuple {exps} has wrong length")
                clean[tuple(exps)] = c
        return Polynomial(self, clean)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.from_int(1)

    def from_int(self, n: int) -> "Polynomial":
        return self.from_scalar(self.domain.from_int(n))

    def from_scalar(self, c: Scalar) -> "Polynomial":
        c = self.domain.scalar(c)
        if c.is_zero():
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.var_index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.domain.one})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return self.polynomial({tuple(exps): self.domain.scalar(coeff)})

    @property
    def t_scalar(self) -> Scalar:
        return self.domain.t


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        """The scalar value of a constant polynomial."""
        if self.is_zero():
            return self.ring.domain.zero
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self, order: MonomialOrder):
        """(exponents, coefficient) of the leading term."""
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), self.ring.domain.zero)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, Scalar) or isinstance(other, int):
            return self.ring.from_scalar(self.ring.domain.scalar(other))
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps)
            if s is None:
                out[exps] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[exps]
                else:
                    out[exps] = s
        return Polynomial(self.ring, out)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            c = self.ring.domain.scalar(other)
            if c.is_zero():
                return self.ring.zero
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    if not c.is_zero():
                        out[e] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers take non-negative integer exponents")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Scalar) -> "Polynomial":
        return self * c

    def mul_monomial(self, exps, coeff: Scalar) -> "Polynomial":
        if coeff.is_zero():
            return self.ring.zero
        out = {}
        for e, c in self.terms.items():
            v = c * coeff
            if not v.is_zero():
                out[tuple(a + b for a, b in zip(e, exps))] = v
        return Polynomial(self.ring, out)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}")
                for name, e in zip(self.ring.vars, exps)
                if e
            )
            sign, mag = c.sign_and_magnitude()
            if not mono:
                body = mag if _is_atomic(mag) else f"({mag})"
            elif mag == "1":
                body = mono
            else:
                body = (mag if _is_atomic(mag) else f"({mag})") + "*" + mono
            if not chunks:
                chunks.append(body if sign > 0 else "-" + body)
            else:
                chunks.append((" + " if sign > 0 else " - ") + body)
        return "".join(chunks)

    def __repr__(self):
        return f"<{self} over {self.ring}>"


import re as _re

_ATOMIC = _re.compile(r"^(\d+(/\d+)?|(\d+\*)?t(\^\d+)?|\(.*\)/\(.*\))$")


def _is_atomic(s: str) -> bool:
    """True when a scalar rendering reparses correctly inside a product."""
    return bool(_ATOMIC.match(s))


# ---------------------------------------------------------------------------
# Frobenius lifts


class LiftSpec:
    """Images of the ring variables (and of t) under a Frobenius lift.

    Every image must be congruent to the p-th power of its generator
    modulo p; this is validated at construction.  The default lift sends
    each variable to its p-th power and t to t^p.
    """

    def __init__(self, ring: PolyRing, t_image: "Polynomial | Scalar | None" = None,
                 var_images: dict | None = None):
        domain = ring.domain
        if not domain.is_dvr:
            raise NotDVRDomain(f"{domain} carries no Frobenius lift")
        self.ring = ring
        p = domain.p
        images = {}
        for name, img in (var_images or {}).items():
            ring.var_index(name)
            if not isinstance(img, Polynomial) or img.ring != ring:
                raise InvalidLift(f"image of {name} must be a polynomial in {ring}")
            _validate_congruence(img - ring.var(name) ** p, name)
            images[name] = img
        self.var_images = images
        if t_image is None:
            self.t_image = None
        else:
            if not domain.has_t:
                raise NoParameterT(f"{domain} has no parameter t")
            if isinstance(t_image, Scalar):
                t_image = ring.from_scalar(t_image)
            if not isinstance(t_image, Polynomial) or t_image.ring != ring:
                raise InvalidLift("t-image must be a polynomial or scalar of the ring")
            _validate_congruence(t_image - ring.from_scalar(domain.default_t_image()), "t")
            self.t_image = t_image
        key = tuple(sorted((n, _poly_key(f)) for n, f in images.items()))
        self._key = (ring, key, None if self.t_image is None else _poly_key(self.t_image))

    def image_of_var(self, name: str) -> Polynomial:
        img = self.var_images.get(name)
        if img is None:
            return self.ring.var(name) ** self.ring.domain.p
        return img

    def t_image_scalar(self) -> Scalar:
        """The t-image as a scalar; default t^p.  Fails if it involves
        ring variables."""
        domain = self.ring.domain
        if self.t_image is None:
            return domain.default_t_image()
        if not self.t_image.is_constant():
            raise InvalidLift("t-image involves ring variables; no scalar form")
        return self.t_image.constant_value()

    def __eq__(self, other):
        return isinstance(other, LiftSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def describe(self) -> str:
        parts = [f"{n} -> {img}" for n, img in sorted(self.var_images.items())]
        if self.t_image is not None:
            parts.append(f"t -> {self.t_image}")
        return "default" if not parts else "; ".join(parts)


def _poly_key(f: Polynomial):
    return frozenset(f.terms.items())


def _validate_congruence(diff: Polynomial, name: str):
    p = diff.ring.domain.p
    for c in diff.terms.values():
        if c.valuation() < 1:
            raise InvalidLift(
                f"lift image of {name} is not congruent to {name}^{p} mod {p}"
            )


# ---------------------------------------------------------------------------
# operations


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def hasse_derivative(f: Polynomial, idx: MultiIndex) -> Polynomial:
    """Apply D_t^(t_order) composed with the divided powers D_{x_i}^(e_i).

    D_x^(k)(x^m) = binomial(m, k) x^(m-k) with the integer binomial mapped
    into the coefficient domain; the t-derivative acts on coefficients.
    """
    ring = f.ring
    alpha = idx.exps
    if len(alpha) != ring.nvars:
        raise ValueError("derivative index does not match the ring")
    if idx.t_order and not ring.domain.has_t:
        raise NoParameterT(f"{ring.domain} has no parameter t")
    out = {}
    for exps, c in f.terms.items():
        if any(e < a for e, a in zip(exps, alpha)):
            continue
        binom = 1
        for e, a in zip(exps, alpha):
            if a:
                binom *= math.comb(e, a)
        c2 = c * ring.domain.from_int(binom)
        if c2.is_zero():
            continue
        if idx.t_order:
            c2 = t_hasse(c2, idx.t_order)
            if c2.is_zero():
                continue
        out[tuple(e - a for e, a in zip(exps, alpha))] = c2
    return Polynomial(ring, out)


def frobenius_apply(f: Polynomial, lift: LiftSpec | None = None) -> Polynomial:
    """The ring endomorphism given by the lift's variable and t images.

    When the t-image involves ring variables, coefficients with a
    nontrivial t-denominator cannot be mapped (the image of the
    denominator is not invertible); this raises InvalidLift.
    """
    ring = f.ring
    domain = ring.domain
    if not domain.is_dvr:
        raise NotDVRDomain(f"{domain} carries no Frobenius lift")
    if lift is None:
        lift = LiftSpec(ring)
    elif lift.ring != ring:
        raise RingMismatch("lift belongs to a different ring")

    t_poly = None
    t_scalar = None
    if domain.has_t:
        if lift.t_image is None or lift.t_image.is_constant():
            t_scalar = lift.t_image_scalar()
        else:
            t_poly = lift.t_image

    var_pows = {}

    def var_power(i: int, e: int) -> Polynomial:
        img = var_pows.get(i)
        if img is None:
            img = lift.image_of_var(ring.vars[i])
            var_pows[i] = img
        return img ** e

    out = ring.zero
    for exps, c in f.terms.items():
        if not domain.has_t:
            phi_c = ring.from_scalar(c)
        elif t_poly is None:
            phi_c = ring.from_scalar(c.frobenius(t_scalar))
        else:
            num, den = c.value
            if len(den) > 1:
                raise InvalidLift(
                    "t-image involves ring variables; cannot map coefficient "
                    f"{c} with a t-dependent denominator"
                )
            acc = ring.zero
            for coef in reversed(num):
                acc = acc * t_poly + ring.from_int(coef)
            phi_c = acc * (domain.one / domain.from_int(den[0]))
        term = phi_c
        for i, e in enumerate(exps):
            if e:
                term = term * var_power(i, e)
        out = out + term
    return out


def poly_delta(f: Polynomial, lift: LiftSpec | None = None) -> Polynomial:
    """p-derivation on polynomials: (phi(f) - f^p) / p, exact by the
    Frobenius congruence."""
    ring = f.ring
    p = ring.domain.p
    diff = frobenius_apply(f, lift) - f ** p
    p_scal = ring.domain.from_int(p)
    out = {}
    for exps, c in diff.terms.items():
        try:
            out[exps] = c / p_scal
        except Exception as exc:
            raise InexactDivision(
                f"delta produced a coefficient {c} not divisible by {p}"
            ) from exc
    return Polynomial(ring, out)


def _compositions(nvars: int, total: int):
    """Exponent tuples of the given length summing to total, lex order."""
    if nvars == 0:
        return [()] if total == 0 else []
    out = []

    def rec(prefix, pos, used):
        if pos == nvars - 1:
            out.append(tuple(prefix) + (total - used,))
            return
        for e in range(total - used + 1):
            rec(prefix + [e], pos + 1, used + e)

    rec([], 0, 0)
    return out


def multi_indices(nvars: int, max_order: int, with_t: bool):
    """All derivative indices of total order <= max_order, ordered by
    (order, t_order, exponents)."""
    out = []
    for order in range(max_order + 1):
        block = []
        t_range = range(order + 1) if with_t else (0,)
        for t_order in t_range:
            for exps in _compositions(nvars, order - t_order):
                block.append(MultiIndex(exps, t_order))
        block.sort(key=lambda m: (m.t_order, m.exps))
        out.extend(block)
    return out


def taylor_expansion(f: Polynomial, n: int, with_t: bool | None = None) -> dict:
    """Coordinates of f in the divided-power basis up to total order n.

    Returns {MultiIndex -> hasse_derivative(f, idx)} over all indices of
    order <= n.  t-components are included when the domain has t (pass
    with_t=False for the coefficient-linear expansion).
    """
    ring = f.ring
    if with_t is None:
        with_t = ring.domain.has_t
    if with_t and not ring.domain.has_t:
        raise NoParameterT(f"{ring.domain} has no parameter t")
    return {
        idx: hasse_derivative(f, idx)
        for idx in multi_indices(ring.nvars, n, with_t)
    }
