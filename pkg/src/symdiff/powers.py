"""The five power notions of an ideal and their membership oracles.

Membership criteria, for a prime ideal Q and n >= 1:

* ordinary:      f reduces to 0 modulo Q^n.
* symbolic:      some s outside Q has s*f in Q^n; operationally the
                 quotient ideal (Q^n : f) is not contained in Q.  The
                 witness is such a generator s.
* differential:  every enumerated operator of order <= n-1 maps f into Q.
* delta:         every delta-iterate delta^a(f), a <= s-1, lies in Q.
* mixed:         every composition delta^a . D with a + order(D) <= n-1
                 maps f into Q.

All verdicts are conditional on Q being prime, which is not certified;
a properness check (1 not in Q) always runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import DomainKind
from .diffops import (
    DiffOperator,
    Linearity,
    MixedOperator,
    apply,
    enumerate_mixed_operators,
    enumerate_operators,
    format_operator,
)
from .errors import (
    NonProperIdeal,
    NotDVRDomain,
    RingMismatch,
    SymdiffError,
    UnsupportedDomain,
)
from .groebner import Ideal, normal_form, quotient
from .poly import LiftSpec, Polynomial, PolyRing, _compositions, poly_delta

PRIMALITY_CAVEAT = "verdict assumes the ideal is prime; primality is not verified"
COMPLETENESS_CAVEAT = (
    "delta/mixed powers are computed over a desk-scale localization standing in "
    "for the complete DVR, and assume p lies in the ideal"
)


# ---------------------------------------------------------------------------
# power kinds


def _check_level(n):
    if n < 1:
        raise ValueError("power level must be >= 1")


@dataclass(frozen=True)
class Ordinary:
    n: int

    def __post_init__(self):
        _check_level(self.n)

    def describe(self):
        return f"ordinary({self.n})"

    level = property(lambda self: self.n)


@dataclass(frozen=True)
class Symbolic:
    n: int

    def __post_init__(self):
        _check_level(self.n)

    def describe(self):
        return f"symbolic({self.n})"

    level = property(lambda self: self.n)


@dataclass(frozen=True)
class Differential:
    n: int
    linearity: Linearity = Linearity.Z

    def __post_init__(self):
        _check_level(self.n)

    def describe(self):
        return f"differential({self.n}, {'Z' if self.linearity is Linearity.Z else 'base'})"

    level = property(lambda self: self.n)


@dataclass(frozen=True)
class DeltaPower:
    s: int
    lift: LiftSpec | None = None

    def __post_init__(self):
        _check_level(self.s)

    def describe(self):
        return f"delta({self.s})"

    level = property(lambda self: self.s)


@dataclass(frozen=True)
class Mixed:
    n: int
    lift: LiftSpec | None = None
    linearity: Linearity = Linearity.Z

    def __post_init__(self):
        _check_level(self.n)

    def describe(self):
        if self.linearity is Linearity.Z:
            return f"mixed({self.n})"
        return f"mixed({self.n}, base)"

    level = property(lambda self: self.n)


PowerKind = Ordinary | Symbolic | Differential | DeltaPower | Mixed


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    member: bool
    kind: str
    witness: dict | None = None
    caveats: tuple = ()
    error: str | None = None
    # structured companions of the witness, for replay in code
    operator: object | None = None
    value: Polynomial | None = None
    value_nf: Polynomial | None = None
    multiplier: Polynomial | None = None

    def to_json_dict(self, query=None):
        out = {
            "query": query,
            "kind": self.kind,
            "member": self.member,
            "witness": self.witness,
            "caveats": list(self.caveats),
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _require_proper(Q: Ideal):
    if not Q.is_proper():
        raise NonProperIdeal("the ideal contains 1")


def _caveats_for(Q: Ideal, kind) -> tuple:
    out = [PRIMALITY_CAVEAT]
    if isinstance(kind, (DeltaPower, Mixed)):
        out.append(COMPLETENESS_CAVEAT)
    return tuple(out)


def _first_failure(Q: Ideal, ops, f: Polynomial):
    """First operator (in enumeration order) whose value escapes Q."""
    for op in ops:
        value = apply(op, f)
        nf = normal_form(value, Q).normal_form
        if not nf.is_zero():
            return op, value, nf
    return None


def _mixed_ops(Q: Ideal, kind: Mixed):
    return enumerate_mixed_operators(Q.ring, kind.n - 1, kind.lift, kind.linearity)


def member(Q: Ideal, kind, f: Polynomial) -> Verdict:
    """Membership of f in the given power of Q, with an explicit witness."""
    if f.ring != Q.ring:
        raise RingMismatch("polynomial and ideal from different rings")
    if isinstance(kind, (DeltaPower, Mixed)) and not Q.ring.domain.is_dvr:
        raise NotDVRDomain(f"{kind.describe()} needs a DVR coefficient domain")
    _require_proper(Q)
    caveats = _caveats_for(Q, kind)

    if isinstance(kind, Ordinary):
        trace = normal_form(f, Q.power(kind.n))
        if trace.normal_form.is_zero():
            return Verdict(True, kind.describe(), {"normal_form": "0"}, caveats)
        return Verdict(False, kind.describe(),
                       {"normal_form": str(trace.normal_form)}, caveats,
                       value_nf=trace.normal_form)

    if isinstance(kind, Symbolic):
        return _member_symbolic(Q, kind.n, f, caveats)

    if isinstance(kind, Differential):
        ops = enumerate_operators(Q.ring, kind.linearity, kind.n - 1)
        return _operator_verdict(Q, ops, f, kind.describe(), caveats)

    if isinstance(kind, DeltaPower):
        ops = [MixedOperator(a, _identity_op(Q.ring), kind.lift) for a in range(kind.s)]
        return _operator_verdict(Q, ops, f, kind.describe(), caveats)

    if isinstance(kind, Mixed):
        return _operator_verdict(Q, _mixed_ops(Q, kind), f, kind.describe(), caveats)

    raise TypeError(f"unknown power kind {kind!r}")


def _identity_op(ring: PolyRing) -> DiffOperator:
    from .poly import MultiIndex

    return DiffOperator(ring, MultiIndex((0,) * ring.nvars, 0))


def _operator_verdict(Q, ops, f, label, caveats) -> Verdict:
    hit = _first_failure(Q, ops, f)
    if hit is None:
        return Verdict(True, label, None, caveats)
    op, value, nf = hit
    witness = {
        "operator": format_operator(op),
        "value": str(value),
        "value_mod_ideal": str(nf),
    }
    return Verdict(False, label, witness, caveats,
                   operator=op, value=value, value_nf=nf)


def _member_symbolic(Q: Ideal, n: int, f: Polynomial, caveats) -> Verdict:
    label = f"symbolic({n})"
    Qn = Q.power(n)
    direct = normal_form(f, Qn)
    if direct.normal_form.is_zero():
        one = Q.ring.one
        return Verdict(True, label, {"multiplier": "1", "note": "f lies in Q^n"},
                       caveats, multiplier=one)
    J = quotient(Qn, f)
    outside = None
    for g in J.generators:
        if not normal_form(g, Q).normal_form.is_zero():
            outside = g
            break
    if outside is None:
        witness = {
            "containment": "(Q^n : f) is contained in Q",
            "quotient_generators": [str(g) for g in J.generators],
        }
        return Verdict(False, label, witness, caveats)
    if not normal_form(outside * f, Qn).normal_form.is_zero():
        raise SymdiffError("quotient witness failed replay; internal error")
    witness = {"multiplier": str(outside), "note": "multiplier*f lies in Q^n, multiplier not in Q"}
    return Verdict(True, label, witness, caveats, multiplier=outside)


def find_separating_operator(Q: Ideal, n: int, f: Polynomial, kind):
    """First enumerated operator whose value on f is nonzero mod Q, or
    None when f is a member."""
    _require_proper(Q)
    if isinstance(kind, Differential):
        ops = enumerate_operators(Q.ring, kind.linearity, n - 1)
    elif isinstance(kind, Mixed):
        ops = enumerate_mixed_operators(Q.ring, n - 1, kind.lift, kind.linearity)
    else:
        raise TypeError("separating operators exist for differential or mixed kinds")
    hit = _first_failure(Q, ops, f)
    return None if hit is None else hit[0]


def mixed_intersection_form(Q: Ideal, n: int, lift: LiftSpec | None,
                            f: Polynomial, linearity: Linearity = Linearity.Z) -> Verdict:
    """Mixed membership through the intersection over s + t <= n + 1 of
    the t-th differential powers of the s-th delta powers; independent of
    member(Mixed)."""
    if not Q.ring.domain.is_dvr:
        raise NotDVRDomain("mixed powers need a DVR coefficient domain")
    _require_proper(Q)
    caveats = _caveats_for(Q, Mixed(n, lift, linearity))
    label = f"mixed-intersection({n})"
    for s in range(1, n + 1):
        for t in range(1, n + 2 - s):
            for op in enumerate_operators(Q.ring, linearity, t - 1):
                g = apply(op, f)
                for a in range(s):
                    if not normal_form(g, Q).normal_form.is_zero():
                        witness = {
                            "operator": format_operator(MixedOperator(a, op, lift)),
                            "delta_power_level": s,
                            "diff_power_level": t,
                            "value_mod_ideal": str(normal_form(g, Q).normal_form),
                        }
                        return Verdict(False, label, witness, caveats,
                                       operator=MixedOperator(a, op, lift))
                    if a < s - 1:
                        g = poly_delta(g, lift)
    return Verdict(True, label, None, caveats)


# ---------------------------------------------------------------------------
# truncated generator computation for differential powers over fields


@dataclass
class TruncatedBasis:
    """Solution basis of a differential-power membership system, truncated
    at an explicit degree bound."""

    ideal: Ideal
    basis: tuple
    degree_bound: int
    t_degree_bound: int | None
    caveat: str = ""

    def contains(self, f: Polynomial) -> bool:
        return self.ideal.contains(f)


def diff_power_generators(I: Ideal, n: int, linearity: Linearity,
                          degree_bound: int, t_degree_bound: int | None = None) -> TruncatedBasis:
    """Basis of {f of degree <= D : op(f) in I for all enumerated ops of
    order <= n-1}, an exact linear solve over the coefficient field."""
    ring = I.ring
    domain = ring.domain
    if not domain.is_field:
        raise UnsupportedDomain("generator computation needs field coefficients")
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    mons = [e for d in range(degree_bound + 1) for e in _compositions(ring.nvars, d)]
    ops = enumerate_operators(ring, linearity, n - 1)
    uses_t = domain.has_t and linearity is Linearity.Z

    if not uses_t and domain.kind is not DomainKind.RATIONAL_FUNCTIONS_FP_T:
        vectors = _solve_plain(I, ring, mons, ops)
        basis = [_vector_to_poly(ring, mons, v) for v in vectors]
        tbound = None
    else:
        if t_degree_bound is None:
            t_degree_bound = degree_bound
        vectors = _solve_with_t(I, ring, mons, ops, t_degree_bound)
        basis = [_vector_to_poly_t(ring, mons, v, t_degree_bound) for v in vectors]
        tbound = t_degree_bound
    basis = [b for b in basis if not b.is_zero()]
    basis.sort(key=lambda b: (b.total_degree(), str(b)))
    pruned = []
    for b in basis:
        if not pruned or not Ideal(ring, pruned).contains(b):
            pruned.append(b)
    caveat = f"truncated at degree {degree_bound}" + (
        f", t-degree {tbound}" if tbound is not None else "")
    return TruncatedBasis(Ideal(ring, pruned), tuple(pruned), degree_bound, tbound, caveat)


def _monomial(ring, exps) -> Polynomial:
    return Polynomial(ring, {tuple(exps): ring.domain.one})


def _solve_plain(I, ring, mons, ops):
    """Columns are coefficients of the candidate monomials; constraints
    come from normal forms of operator images."""
    rows = {}
    for oi, op in enumerate(ops):
        for ci, exps in enumerate(mons):
            image = normal_form(apply(op, _monomial(ring, exps)), I).normal_form
            for ne, nc in image.terms.items():
                rows.setdefault((oi, ne), {})[ci] = nc
    return _nullspace(list(rows.values()), len(mons), ring.domain)


def _solve_with_t(I, ring, mons, ops, t_bound):
    """Integer-linear case over F_p(t): unknowns are F_p coefficients of
    t^j * x^mu; rows are cleared of denominators and split by t-power."""
    from .coeff import prime_field, upoly_mul
    import math as _math

    domain = ring.domain
    p = domain.p
    fp = prime_field(p)
    ncols = len(mons) * (t_bound + 1)
    nf_cache = {}
    raw_rows = {}
    for oi, op in enumerate(ops):
        a = op.idx.t_order
        alpha = op.idx.exps
        for ci, exps in enumerate(mons):
            if any(e < al for e, al in zip(exps, alpha)):
                continue
            binom = 1
            for e, al in zip(exps, alpha):
                if al:
                    binom *= _math.comb(e, al)
            shifted = tuple(e - al for e, al in zip(exps, alpha))
            nf = nf_cache.get(shifted)
            if nf is None:
                nf = normal_form(_monomial(ring, shifted), I).normal_form
                nf_cache[shifted] = nf
            for j in range(a, t_bound + 1):
                coef = binom * _math.comb(j, a)
                if coef % p == 0:
                    continue
                col = ci * (t_bound + 1) + j
                for ne, nc in nf.terms.items():
                    num, den = nc.value
                    # entry = coef * t^(j-a) * num/den
                    entry_num = tuple([0] * (j - a)) + tuple(c * coef % p for c in num)
                    raw_rows.setdefault((oi, ne), {})[col] = (entry_num, den)
    rows = []
    for entries in raw_rows.values():
        # clear denominators: multiply the row by the product of distinct ones
        dens = []
        for _, den in entries.values():
            if den != (1,) and den not in dens:
                dens.append(den)
        cleared = {}
        maxdeg = 0
        for col, (num, den) in entries.items():
            poly = num
            for d in dens:
                if d != den:
                    poly = tuple(c % p for c in upoly_mul(poly, d))
            cleared[col] = poly
            maxdeg = max(maxdeg, len(poly) - 1)
        for k in range(maxdeg + 1):
            row = {}
            for col, poly in cleared.items():
                if k < len(poly) and poly[k] % p:
                    row[col] = fp.from_int(poly[k])
            if row:
                rows.append(row)
    return _nullspace(rows, ncols, fp)


def _vector_to_poly(ring, mons, vec) -> Polynomial:
    terms = {}
    for exps, c in zip(mons, vec):
        if not c.is_zero():
            terms[exps] = c
    return Polynomial(ring, terms)


def _vector_to_poly_t(ring, mons, vec, t_bound) -> Polynomial:
    domain = ring.domain
    terms = {}
    for ci, exps in enumerate(mons):
        coeffs = [vec[ci * (t_bound + 1) + j].value for j in range(t_bound + 1)]
        c = domain.from_t_poly(tuple(coeffs))
        if not c.is_zero():
            terms[exps] = c
    return Polynomial(ring, terms)


def _nullspace(rows, ncols, domain):
    """Basis of the solution space of a sparse homogeneous system over a
    field domain; deterministic pivoting on the smallest column."""
    pivots = {}
    for raw in rows:
        row = dict(raw)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = domain.one / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                break
            factor = row[col]
            for c, v in piv.items():
                s = row.get(c, domain.zero) - factor * v
                if s.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = s
    free = [c for c in range(ncols) if c not in pivots]
    # back-substitute so each pivot row references free columns only
    order = sorted(pivots, reverse=True)
    for col in order:
        row = pivots[col]
        for other in [c for c in row if c != col and c in pivots]:
            factor = row[other]
            for c, v in pivots[other].items():
                s = row.get(c, domain.zero) - factor * v
                if s.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = s
    basis = []
    for fc in free:
        vec = [domain.zero] * ncols
        vec[fc] = domain.one
        for pc, row in pivots.items():
            coeff = row.get(fc)
            if coeff is not None:
                vec[pc] = -coeff
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# cross-kind comparison report


@dataclass
class CompareReport:
    ideal_label: str
    kinds: tuple
    corpus: tuple
    cells: list = field(default_factory=list)   # cells[i][j]: Verdict
    disagreements: list = field(default_factory=list)
    caveats: tuple = ()

    @property
    def agreement(self) -> bool:
        return not self.disagreements

    def to_json_dict(self, query=None):
        return {
            "query": query,
            "ideal": self.ideal_label,
            "kinds": [k.describe() for k in self.kinds],
            "corpus": [str(f) for f in self.corpus],
            "cells": [
                [v.to_json_dict(query) for v in row] for row in self.cells
            ],
            "disagreements": [
                {
                    "f": str(f),
                    "kind_a": ka.describe(),
                    "kind_b": kb.describe(),
                    "member_a": va.member,
                    "member_b": vb.member,
                }
                for f, ka, kb, va, vb in self.disagreements
            ],
            "caveats": list(self.caveats),
        }

    def to_text(self) -> str:
        heads = [k.describe() for k in self.kinds]
        fw = max([len("f")] + [len(str(f)) for f in self.corpus])
        widths = [max(len(h), 3) for h in heads]
        lines = ["  ".join(["f".ljust(fw)] + [h.ljust(w) for h, w in zip(heads, widths)])]
        for f, row in zip(self.corpus, self.cells):
            marks = []
            for v, w in zip(row, widths):
                mark = "ERR" if v.error else ("yes" if v.member else "no")
                marks.append(mark.ljust(w))
            lines.append("  ".join([str(f).ljust(fw)] + marks))
        if self.disagreements:
            lines.append("disagreements:")
            for f, ka, kb, va, vb in self.disagreements:
                lines.append(
                    f"  {f}: {ka.describe()}={'yes' if va.member else 'no'}"
                    f" vs {kb.describe()}={'yes' if vb.member else 'no'}"
                )
        else:
            lines.append("disagreements: none")
        return "\n".join(lines)

    def to_csv_rows(self):
        yield ["f"] + [k.describe() for k in self.kinds]
        for f, row in zip(self.corpus, self.cells):
            yield [str(f)] + [
                ("error" if v.error else ("member" if v.member else "non-member"))
                for v in row
            ]


def compare_report(Q: Ideal, kinds, corpus) -> CompareReport:
    """Evaluate every kind on every corpus element; flag disagreements
    between kinds that sit at the same level n."""
    kinds = tuple(kinds)
    corpus = tuple(corpus)
    all_caveats = []
    report = CompareReport(repr(Q), kinds, corpus)
    for f in corpus:
        row = []
        for kind in kinds:
            try:
                v = member(Q, kind, f)
            except SymdiffError as exc:
                v = Verdict(False, kind.describe(), None, (), error=str(exc))
            row.append(v)
            for c in v.caveats:
                if c not in all_caveats:
                    all_caveats.append(c)
        report.cells.append(row)
    for i in range(len(kinds)):
        for j in range(i + 1, len(kinds)):
            if kinds[i].level != kinds[j].level:
                continue
            for f, row in zip(corpus, report.cells):
                va, vb = row[i], row[j]
                if va.error or vb.error:
                    continue
                if va.member != vb.member:
                    report.disagreements.append((f, kinds[i], kinds[j], va, vb))
    report.caveats = tuple(all_caveats)
    return report
