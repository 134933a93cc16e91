"""Groebner bases and ideal arithmetic.

Over the field domains this is Buchberger's algorithm with the normal
selection strategy and the two classical pair criteria, producing the
unique reduced basis.  Over the DVR domains (Z_(p), Z[t]_(p)) it computes
strong Groebner bases: leading-term divisibility includes divisibility of
coefficients, which in a discrete valuation ring is comparison of p-adic
valuations.  Since any two coefficients are comparable there, the single
combination canceling against the minimum-valuation side per pair
completes the basis.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import RingMismatch, SymdiffError
from .poly import GREVLEX, Block, GrevLex, Lex, MonomialOrder, Polynomial, PolyRing


@dataclass
class ReductionTrace:
    """Exact certificate: input = sum(quotient_i * basis_i) + normal_form."""

    input: Polynomial
    basis: tuple
    quotients: tuple
    normal_form: Polynomial

    def verify(self) -> bool:
        acc = self.normal_form
        for q, b in zip(self.quotients, self.basis):
            acc = acc + q * b
        return acc == self.input


class Ideal:
    """Generator list with a per-order cache of (strong) Groebner bases."""

    def __init__(self, ring: PolyRing, generators):
        self.ring = ring
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise RingMismatch("generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)
        self._cache = {}
        self._powers = {}
        self._lock = threading.Lock()

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Ideal({gens})"

    def power(self, n: int) -> "Ideal":
        """I^n, cached on the instance so Groebner caches are shared."""
        if n == 1:
            return self
        got = self._powers.get(n)
        if got is None:
            got = ideal_power(self, n)
            with self._lock:
                got = self._powers.setdefault(n, got)
        return got

    def is_proper(self) -> bool:
        return not self.contains(self.ring.one)

    def groebner_basis(self, order: MonomialOrder = GREVLEX):
        sig = order.signature()
        basis = self._cache.get(sig)
        if basis is None:
            basis = _compute_basis(self.ring, self.generators, order)
            with self._lock:
                basis = self._cache.setdefault(sig, basis)
        return basis

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return normal_form(f, self, order).normal_form.is_zero()


# ---------------------------------------------------------------------------
# reduction


def _divides(exps_small, exps_big) -> bool:
    return all(a <= b for a, b in zip(exps_small, exps_big))


def _reduce_terms(f: Polynomial, basis, order, want_trace=False):
    """Multivariate division; over DVRs a term reduces only when the
    reducer's leading coefficient has valuation <= the term's."""
    ring = f.ring
    dvr = ring.domain.is_dvr
    key = order.key
    prepared = [(b.leading(order), b) for b in basis]
    if dvr:
        prepared = [((lm, lc, lc.valuation()), b) for (lm, lc), b in prepared]
    else:
        prepared = [((lm, lc, 0), b) for (lm, lc), b in prepared]
    work = dict(f.terms)
    remainder = {}
    quotients = [dict() for _ in basis] if want_trace else None
    while work:
        exps = max(work, key=key)
        c = work.pop(exps)
        hit = None
        for i, ((lm, lc, lv), b) in enumerate(prepared):
            if _divides(lm, exps) and (not dvr or lv <= c.valuation()):
                hit = (i, lm, lc, b)
                break
        if hit is None:
            remainder[exps] = c
            continue
        i, lm, lc, b = hit
        qc = c / lc
        qe = tuple(a - s for a, s in zip(exps, lm))
        if want_trace:
            quotients[i][qe] = quotients[i].get(qe, ring.domain.zero) + qc
        # tail terms of b land strictly below exps in the order, so they
        # can only meet entries still in work, never the remainder
        for be, bc in b.terms.items():
            if be == lm:
                continue
            e = tuple(a + s for a, s in zip(qe, be))
            v = qc * bc
            s = work.get(e)
            if s is None:
                if not v.is_zero():
                    work[e] = -v
            else:
                s = s - v
                if s.is_zero():
                    del work[e]
                else:
                    work[e] = s
    nf = Polynomial(ring, remainder)
    if want_trace:
        qpolys = tuple(Polynomial(ring, {e: c for e, c in q.items() if not c.is_zero()})
                       for q in quotients)
        return nf, qpolys
    return nf, None


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> ReductionTrace:
    if f.ring != I.ring:
        raise RingMismatch("polynomial and ideal from different rings")
    basis = I.groebner_basis(order)
    nf, quots = _reduce_terms(f, basis, order, want_trace=True)
    return ReductionTrace(f, tuple(basis), quots, nf)


# ---------------------------------------------------------------------------
# basis completion


def _unit_normalize(g: Polynomial, order) -> Polynomial:
    """Scale so the leading coefficient is 1 (fields) or p^k (DVRs)."""
    lm, lc = g.leading(order)
    domain = g.ring.domain
    if domain.is_field:
        return g * (domain.one / lc)
    unit = lc / domain.from_int(domain.p) ** lc.valuation()
    return g * (domain.one / unit)


def _spoly(f, g, order, dvr):
    (mf, cf), (mg, cg) = f.leading(order), g.leading(order)
    gamma = tuple(max(a, b) for a, b in zip(mf, mg))
    ef = tuple(a - b for a, b in zip(gamma, mf))
    eg = tuple(a - b for a, b in zip(gamma, mg))
    domain = f.ring.domain
    if not dvr:
        return f.mul_monomial(ef, domain.one / cf) - g.mul_monomial(eg, domain.one / cg)
    if cf.valuation() <= cg.valuation():
        return f.mul_monomial(ef, cg / cf) - g.mul_monomial(eg, domain.one)
    return f.mul_monomial(ef, domain.one) - g.mul_monomial(eg, cf / cg)


def _compute_basis(ring, generators, order):
    domain = ring.domain
    dvr = domain.is_dvr
    G = []
    for g in generators:
        if not g.is_zero():
            G.append(_unit_normalize(g, order))
    if not G:
        return ()
    lead = [g.leading(order) for g in G]

    def pair_entry(i, j):
        mi, mj = lead[i][0], lead[j][0]
        gamma = tuple(max(a, b) for a, b in zip(mi, mj))
        return (sum(gamma), order.key(gamma), i, j), gamma

    pairs = {}
    for i in range(len(G)):
        for j in range(i):
            k, gamma = pair_entry(j, i)
            pairs[(j, i)] = (k, gamma)

    processed = set()
    while pairs:
        (i, j), (k, gamma) = min(pairs.items(), key=lambda kv: kv[1][0])
        del pairs[(i, j)]
        processed.add((i, j))
        mi, ci = lead[i]
        mj, cj = lead[j]
        coprime = all(a + b == c for a, b, c in zip(mi, mj, gamma))
        if not dvr:
            if coprime:
                continue
            if _chain_criterion(i, j, gamma, lead, pairs, processed):
                continue
        else:
            # over a DVR the product criterion additionally needs a unit
            # leading coefficient on one side
            if coprime and (ci.valuation() == 0 or cj.valuation() == 0):
                continue
        s = _spoly(G[i], G[j], order, dvr)
        nf, _ = _reduce_terms(s, G, order)
        if nf.is_zero():
            continue
        nf = _unit_normalize(nf, order)
        G.append(nf)
        lead.append(nf.leading(order))
        new = len(G) - 1
        for m in range(new):
            k2, gamma2 = pair_entry(m, new)
            pairs[(m, new)] = (k2, gamma2)
    return _reduced_basis(ring, G, order)


def _chain_criterion(i, j, gamma, lead, pairs, processed) -> bool:
    """Skip (i, j) when some k has lm_k | lcm(i, j) and both companion
    pairs are already handled."""
    for k in range(len(lead)):
        if k in (i, j):
            continue
        if _divides(lead[k][0], gamma):
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pairs and b not in pairs and a in processed and b in processed:
                return True
    return False


def _reduced_basis(ring, G, order):
    dvr = ring.domain.is_dvr
    # minimalize: drop elements whose leading term another one divides
    items = [(g.leading(order), g) for g in G]
    kept = []
    for idx, ((lm, lc), g) in enumerate(items):
        redundant = False
        for jdx, ((lm2, lc2), h) in enumerate(items):
            if idx == jdx or not _divides(lm2, lm):
                continue
            if dvr and lc2.valuation() > lc.valuation():
                continue
            if lm2 == lm and (not dvr or lc2.valuation() == lc.valuation()):
                # identical leading terms: keep the first
                if jdx > idx:
                    continue
            redundant = True
            break
        if not redundant:
            kept.append(g)
    # tail-reduce until stable
    changed = True
    while changed:
        changed = False
        out = []
        for i, g in enumerate(kept):
            others = out + kept[i + 1:]
            nf, _ = _reduce_terms(g, others, order) if others else (g, None)
            if nf.is_zero():
                changed = True
                continue
            nf = _unit_normalize(nf, order)
            if nf != g:
                changed = True
            out.append(nf)
        kept = out
    kept.sort(key=lambda g: order.key(g.leading(order)[0]))
    return tuple(kept)


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX):
    return I.groebner_basis(order)


# ---------------------------------------------------------------------------
# ideal arithmetic


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 1:
        raise ValueError("ideal_power needs n >= 1")
    seen = {}
    for combo in combinations_with_replacement(I.generators, n):
        g = combo[0]
        for h in combo[1:]:
            g = g * h
        if not g.is_zero():
            seen.setdefault(frozenset(g.terms.items()), g)
    gens = sorted(seen.values(), key=lambda g: (GREVLEX.key(g.leading(GREVLEX)[0]), str(g)))
    return Ideal(I.ring, gens)


def _extended_ring(ring: PolyRing) -> PolyRing:
    aux = "u_"
    while aux in ring.vars:
        aux += "_"
    return PolyRing(ring.domain, (aux,) + ring.vars)


def _embed(f: Polynomial, ext: PolyRing) -> Polynomial:
    return Polynomial(ext, {(0,) + e: c for e, c in f.terms.items()})


def _restrict(f: Polynomial, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()})


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by elimination: generators of u*I + (1-u)*J with the
    auxiliary variable u eliminated by a block order."""
    if I.ring != J.ring:
        raise RingMismatch("ideals from different rings")
    ring = I.ring
    ext = _extended_ring(ring)
    u = ext.var(ext.vars[0])
    gens = [u * _embed(g, ext) for g in I.generators]
    gens += [(ext.one - u) * _embed(g, ext) for g in J.generators]
    order = Block(split=1, first=Lex(), rest=GrevLex())
    basis = Ideal(ext, gens).groebner_basis(order)
    kept = [_restrict(b, ring) for b in basis if all(e[0] == 0 for e in b.terms)]
    return Ideal(ring, kept)


def poly_divexact(g: Polynomial, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Exact division g / f for g in the principal ideal (f)."""
    ring = g.ring
    q = ring.zero
    rem = g
    lm, lc = f.leading(order)
    while not rem.is_zero():
        re, rc = rem.leading(order)
        if not _divides(lm, re):
            raise SymdiffError(f"{g} is not divisible by {f}")
        term = Polynomial(ring, {tuple(a - b for a, b in zip(re, lm)): rc / lc})
        q = q + term
        rem = rem - term * f
    return q


def quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = {g : g*f in I}, via intersection with (f)."""
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    meet = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [poly_divexact(g, f) for g in meet.generators])


def ideal_contains(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    """True when every generator of J reduces to zero modulo I."""
    return all(I.contains(g, order) for g in J.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return ideal_contains(I, J) and ideal_contains(J, I)
