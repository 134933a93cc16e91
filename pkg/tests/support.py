"""Seeded random generators shared by the test modules."""

from symdiff import DomainKind


def random_scalar(domain, rng, small=False):
    hi = 4 if small else 9
    kind = domain.kind
    if kind is DomainKind.RATIONALS_Q:
        return domain.from_fraction(rng.randint(-hi, hi), rng.randint(1, hi))
    if kind is DomainKind.PRIME_FIELD_FP:
        return domain.from_int(rng.randint(0, domain.p - 1))
    if kind is DomainKind.P_LOCAL_INTEGERS_ZP:
        den = rng.choice([d for d in range(1, hi + 1) if d % domain.p])
        return domain.from_fraction(rng.randint(-hi, hi), den)
    while True:
        num = tuple(rng.randint(-hi, hi) for _ in range(rng.randint(1, 3)))
        den = tuple(rng.randint(-hi, hi) for _ in range(rng.randint(1, 2)))
        try:
            return domain.from_t_fraction(num, den)
        except Exception:
            continue


def random_unit(domain, rng):
    while True:
        s = random_scalar(domain, rng)
        if not s.is_zero() and (domain.is_field or s.valuation() == 0):
            return s


def random_nonzero(domain, rng):
    while True:
        s = random_scalar(domain, rng)
        if not s.is_zero():
            return s


def random_poly(ring, rng, degree=3, max_terms=4, small=True):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(ring.nvars)] += 1
        key = tuple(exps)
        c = random_scalar(ring.domain, rng, small=small)
        terms[key] = terms.get(key, ring.domain.zero) + c
    return ring.polynomial(terms)


def random_int_poly(ring, rng, degree=3, max_terms=4):
    """Random polynomial with small integer coefficients (valid in every
    domain, convenient for DVR rings)."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(ring.nvars)] += 1
        key = tuple(exps)
        c = ring.domain.from_int(rng.randint(-4, 4))
        terms[key] = terms.get(key, ring.domain.zero) + c
    return ring.polynomial(terms)


def nonzero_random_poly(ring, rng, degree=3, max_terms=4):
    while True:
        f = random_poly(ring, rng, degree, max_terms)
        if not f.is_zero():
            return f
