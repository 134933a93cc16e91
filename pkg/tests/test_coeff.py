"""Scalar arithmetic, valuation, Frobenius and delta across the domains."""

import math
import random

import pytest

from symdiff import (
    DomainSpec,
    DomainKind,
    p_local_integers,
    p_local_poly_fractions,
    prime_field,
    rational_functions,
    rationals,
)
from symdiff.coeff import scalar_arith, p_valuation, scalar_delta, scalar_frobenius, t_hasse
from symdiff.errors import (
    DivisionByZero,
    DomainMismatch,
    InvalidLift,
    NonUnitDivisor,
    NotDVRDomain,
)

from support import random_nonzero, random_scalar

ALL_DOMAINS = [
    rationals(),
    prime_field(5),
    rational_functions(3),
    p_local_integers(2),
    p_local_poly_fractions(2),
]


def test_prime_validation():
    with pytest.raises(ValueError):
        prime_field(4)
    with pytest.raises(ValueError):
        p_local_integers(1)
    with pytest.raises(ValueError):
        DomainSpec(DomainKind.RATIONALS_Q, 5)
    assert prime_field(2).p == 2


def test_spec_arithmetic_examples():
    Q = rationals()
    assert scalar_arith(Q.from_fraction(1, 2), Q.from_fraction(1, 3), "add") == Q.from_fraction(5, 6)
    K = rational_functions(5)
    a = K.from_t_fraction((0, 1), (1, 1))
    b = K.from_t_fraction((1, 1), (0, 1))
    assert (a * b).is_one()
    Z2 = p_local_integers(2)
    assert Z2.from_fraction(3, 5) * Z2.from_int(5) == Z2.from_int(3)


def test_division_rules():
    Z2 = p_local_integers(2)
    with pytest.raises(NonUnitDivisor):
        Z2.one / Z2.from_int(2)
    # exact quotient through p is allowed
    assert Z2.from_int(6) / Z2.from_int(2) == Z2.from_int(3)
    with pytest.raises(DivisionByZero):
        Z2.one / Z2.zero
    with pytest.raises(NonUnitDivisor):
        Z2.from_fraction(1, 2)
    V = p_local_poly_fractions(2)
    with pytest.raises(NonUnitDivisor):
        V.one / V.from_int(2)
    assert V.from_t_poly((0, 2)) / V.from_int(2) == V.t


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        rationals().one + prime_field(5).one


def test_valuation_examples():
    Z2 = p_local_integers(2)
    assert Z2.from_int(12).valuation() == 2
    assert Z2.zero.valuation() == math.inf
    V = p_local_poly_fractions(2)
    w = V.from_t_fraction((4, 2), (1, 1))  # (2t+4)/(t+1)
    assert p_valuation(w) == 1
    with pytest.raises(NotDVRDomain):
        rationals().one.valuation()


def test_frobenius_examples():
    Z2 = p_local_integers(2)
    assert scalar_frobenius(Z2.from_fraction(3, 5)) == Z2.from_fraction(3, 5)
    V3 = p_local_poly_fractions(3)
    assert scalar_frobenius(V3.t) == V3.from_t_poly((0, 0, 0, 1))
    # Fermat congruence on phi(2) - 2^2
    a = Z2.from_int(2)
    assert (scalar_frobenius(a) - a ** 2).valuation() >= 1


def test_invalid_t_image_rejected():
    V = p_local_poly_fractions(3)
    with pytest.raises(InvalidLift):
        V.t.frobenius(V.from_t_poly((0, 1)))  # t -> t is not t^3 mod 3
    # t -> t^3 + 3t is fine
    img = V.from_t_poly((0, 3, 0, 1))
    assert V.t.frobenius(img) == img


def test_delta_examples():
    Z2 = p_local_integers(2)
    assert scalar_delta(Z2.from_int(2)) == Z2.from_int(-1)
    for p in (2, 3, 5):
        Z = p_local_integers(p)
        assert scalar_delta(Z.one) == Z.zero
        assert scalar_delta(Z.from_int(p)) == Z.from_int(1 - p ** (p - 1))


def test_canonicalization_idempotent_500_per_domain():
    rng = random.Random(100)
    for domain in ALL_DOMAINS:
        for _ in range(500):
            s = random_scalar(domain, rng)
            assert s.canonicalized() == s
            assert s.canonicalized().value == s.value


def test_valuation_additive():
    rng = random.Random(101)
    for domain in (p_local_integers(2), p_local_integers(5), p_local_poly_fractions(3)):
        for _ in range(300):
            a = random_nonzero(domain, rng)
            b = random_nonzero(domain, rng)
            assert (a * b).valuation() == a.valuation() + b.valuation()


def test_frobenius_is_ring_homomorphism():
    rng = random.Random(102)
    for domain in (p_local_integers(2), p_local_integers(3), p_local_poly_fractions(2)):
        for _ in range(200):
            a = random_scalar(domain, rng)
            b = random_scalar(domain, rng)
            assert scalar_frobenius(a + b) == scalar_frobenius(a) + scalar_frobenius(b)
            assert scalar_frobenius(a * b) == scalar_frobenius(a) * scalar_frobenius(b)


def test_delta_axioms():
    rng = random.Random(103)
    for domain in (p_local_integers(2), p_local_integers(3), p_local_poly_fractions(2)):
        p = domain.p
        ps = domain.from_int(p)
        assert scalar_delta(domain.one).is_zero()
        for _ in range(200):
            a = random_scalar(domain, rng)
            b = random_scalar(domain, rng)
            da, db = scalar_delta(a), scalar_delta(b)
            lhs = scalar_delta(a * b)
            rhs = a ** p * db + da * b ** p + ps * da * db
            assert lhs == rhs
            lhs2 = scalar_delta(a + b)
            rhs2 = da + db + (a ** p + b ** p - (a + b) ** p) / ps
            assert lhs2 == rhs2


def test_t_hasse_fraction_rule():
    # D^(1)(t/(t+1)) = 1/(t+1)^2, checked against the direct quotient rule
    V = p_local_poly_fractions(2)
    a = V.from_t_fraction((0, 1), (1, 1))
    assert t_hasse(a, 1) == V.from_t_fraction((1,), (1, 2, 1))
    # Hasse property on powers: D^(k)(t^m) = C(m, k) t^(m-k)
    K = rational_functions(5)
    for m in range(6):
        for k in range(m + 1):
            got = t_hasse(K.t ** m, k)
            want = K.from_int(math.comb(m, k)) * K.t ** (m - k)
            assert got == want


def test_scalar_string_round_trip():
    from symdiff import parse_scalar

    rng = random.Random(104)
    for domain in ALL_DOMAINS:
        for _ in range(100):
            s = random_scalar(domain, rng)
            assert parse_scalar(str(s), domain) == s
