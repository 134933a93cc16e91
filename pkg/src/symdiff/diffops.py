"""Differential operators and mixed (delta-composed) operators as values.

Operators are represented extensionally by a divided-power multi-index
against the free generating family of each (domain, linearity) pair:
divided powers in the ring variables always, plus divided t-derivatives
exactly when the domain carries the parameter t and integer-linearity is
requested.  A mixed operator composes a plain operator with iterations of
the p-derivation: delta^a after the derivative part.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import ParseError, RingMismatch
from .groebner import Ideal, ideal_power, normal_form
from .poly import (
    LiftSpec,
    MultiIndex,
    Polynomial,
    PolyRing,
    hasse_derivative,
    multi_indices,
    poly_delta,
)


class Linearity(Enum):
    BASE = "base"   # linear over the coefficient field / DVR
    Z = "Z"         # linear over the integers only

    def __str__(self):
        return "BaseLinear" if self is Linearity.BASE else "ZLinear"


@dataclass(frozen=True)
class DiffOperator:
    """A product of divided-power derivatives, tagged with its ring."""

    ring: PolyRing
    idx: MultiIndex

    @property
    def order(self) -> int:
        return self.idx.order

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def __str__(self):
        return format_operator(self)


@dataclass(frozen=True)
class MixedOperator:
    """delta^a composed after a differential operator."""

    delta_count: int
    diff: DiffOperator
    lift: LiftSpec | None = None

    @property
    def ring(self) -> PolyRing:
        return self.diff.ring

    @property
    def order(self) -> int:
        return self.delta_count + self.diff.order

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def __str__(self):
        return format_operator(self)


def _allows_t(ring: PolyRing, linearity: Linearity) -> bool:
    return linearity is Linearity.Z and ring.domain.has_t


def enumerate_operators(ring: PolyRing, linearity: Linearity, max_order: int):
    """All generating operators of order <= max_order, in
    (order, t_order, exponents) order; deterministic."""
    if max_order < 0:
        return []
    with_t = _allows_t(ring, linearity)
    return [DiffOperator(ring, idx) for idx in multi_indices(ring.nvars, max_order, with_t)]


def enumerate_mixed_operators(ring: PolyRing, max_order: int,
                              lift: LiftSpec | None = None,
                              linearity: Linearity = Linearity.Z):
    """All pairs delta^a . D with a + order(D) <= max_order, ordered by
    total order, then delta count, then the derivative index."""
    out = []
    for total in range(max_order + 1):
        for a in range(total + 1):
            for op in enumerate_operators(ring, linearity, total - a):
                if op.order == total - a:
                    out.append(MixedOperator(a, op, lift))
    out.sort(key=lambda m: (m.order, m.delta_count, m.diff.idx.t_order, m.diff.idx.exps))
    return out


def apply(op, f: Polynomial) -> Polynomial:
    """Evaluate an operator on a polynomial."""
    if isinstance(op, DiffOperator):
        if op.ring != f.ring:
            raise RingMismatch("operator and polynomial from different rings")
        return hasse_derivative(f, op.idx)
    if isinstance(op, MixedOperator):
        if op.ring != f.ring:
            raise RingMismatch("operator and polynomial from different rings")
        g = hasse_derivative(f, op.diff.idx)
        for _ in range(op.delta_count):
            g = poly_delta(g, op.lift)
        return g
    raise TypeError(f"not an operator: {op!r}")


# ---------------------------------------------------------------------------
# sampled check that operators of order k map I^n into I^(n-k)


@dataclass
class LoweringReport:
    passed: bool
    trials: int
    counterexample: Polynomial | None = None
    image: Polynomial | None = None

    def __bool__(self):
        return self.passed


def operator_lowers_powers_check(I: Ideal, op, n: int, trials: int = 20,
                                 rng=None, coeff_degree: int = 2) -> LoweringReport:
    """Sample random combinations from I^n, apply op, and test membership
    in I^(n - order(op))."""
    import random

    if rng is None:
        rng = random.Random(0)
    k = op.order
    if n < k:
        raise ValueError("need n >= order of the operator")
    ring = I.ring
    power_gens = ideal_power(I, n).generators if n >= 1 else (ring.one,)
    target = ideal_power(I, n - k) if n - k >= 1 else None
    for trial in range(trials):
        f = ring.zero
        for g in power_gens:
            f = f + _random_poly(ring, rng, coeff_degree) * g
        image = apply(op, f)
        if target is None:
            continue
        if not normal_form(image, target).normal_form.is_zero():
            return LoweringReport(False, trial + 1, f, image)
    return LoweringReport(True, trials)


def _random_poly(ring: PolyRing, rng, degree: int) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(ring.nvars)] += 1
        terms[tuple(exps)] = ring.domain.from_int(rng.randint(-4, 4))
    return ring.polynomial(terms)


# ---------------------------------------------------------------------------
# printable, replayable operator syntax


def format_operator(op) -> str:
    """Render e.g. "δ^2 ∘ D_t^(1) D_x^(3)"; the identity prints as "1"."""
    if isinstance(op, MixedOperator):
        body = format_operator(op.diff)
        if op.delta_count == 0:
            return body
        head = f"δ^{op.delta_count}"
        return head if body == "1" else f"{head} ∘ {body}"
    idx = op.idx
    parts = []
    if idx.t_order:
        parts.append(f"D_t^({idx.t_order})")
    for name, e in zip(op.ring.vars, idx.exps):
        if e:
            parts.append(f"D_{name}^({e})")
    return " ".join(parts) if parts else "1"


_TOKEN = re.compile(
    r"\s*(?:(?P<delta>(?:δ|delta)(?:\^(?P<dexp>\d+))?)"
    r"|(?P<d>D_(?P<var>[A-Za-z_][A-Za-z0-9_]*)\^\((?P<k>\d+)\))"
    r"|(?P<one>1)"
    r"|(?P<comp>∘|\bo\b|\*))"
)


def parse_operator(text: str, ring: PolyRing, lift: LiftSpec | None = None):
    """Parse the printed operator syntax back into an operator value."""
    pos = 0
    delta_count = 0
    t_order = 0
    exps = [0] * ring.nvars
    saw = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad operator syntax near {text[pos:][:20]!r}")
        pos = m.end()
        if m.group("comp"):
            continue
        saw = True
        if m.group("delta"):
            delta_count += int(m.group("dexp") or "1")
        elif m.group("one"):
            pass
        else:
            name, k = m.group("var"), int(m.group("k"))
            if name == "t":
                t_order += k
            else:
                try:
                    i = ring.var_index(name)
                except KeyError:
                    raise ParseError(f"unknown variable {name!r} in operator") from None
                exps[i] += k
    if not saw:
        raise ParseError("empty operator")
    diff = DiffOperator(ring, MultiIndex(tuple(exps), t_order))
    if delta_count:
        return MixedOperator(delta_count, diff, lift)
    return diff
