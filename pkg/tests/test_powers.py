"""Membership oracles, witnesses, and the cross-kind invariants."""

import random

import pytest

from symdiff import (
    DeltaPower,
    Differential,
    Ideal,
    Linearity,
    Mixed,
    Ordinary,
    PolyRing,
    Symbolic,
    compare_report,
    diff_power_generators,
    find_separating_operator,
    format_operator,
    intersect,
    member,
    mixed_intersection_form,
    normal_form,
    p_local_integers,
    prime_field,
    rational_functions,
    rationals,
)
from symdiff.errors import NonProperIdeal, UnsupportedDomain

from support import random_int_poly


def test_member_spec_examples():
    for p in (2, 3):
        K = PolyRing(rational_functions(p), ("x",))
        f = K.var("x") ** p - K.from_scalar(K.domain.t)
        Q = Ideal(K, [f])
        assert member(Q, Differential(2, Linearity.BASE), f).member
        v = member(Q, Differential(2, Linearity.Z), f)
        assert not v.member
        assert format_operator(v.operator) == "D_t^(1)"
        assert v.value == -K.one
        assert not member(Q, Symbolic(2), f).member

        Z = PolyRing(p_local_integers(p), ("x",))
        fp = Z.from_int(p)
        QZ = Ideal(Z, [fp])
        for n in (2, 3, 4):
            assert member(QZ, Differential(n, Linearity.Z), fp).member
        vm = member(QZ, Mixed(2), fp)
        assert not vm.member
        assert format_operator(vm.operator) == "δ^1"
        assert vm.value == Z.from_int(1 - p ** (p - 1))


def test_member_requires_proper_ideal():
    R = PolyRing(rationals(), ("x",))
    bad = Ideal(R, [R.one + R.var("x"), R.var("x")])  # contains 1
    with pytest.raises(NonProperIdeal):
        member(bad, Ordinary(1), R.var("x"))


def test_symbolic_witness_replays():
    R = PolyRing(rationals(), ("x", "y", "z"))
    x, y, z = (R.var(v) for v in "xyz")
    Q = Ideal(R, [y ** 2 - x * z, x ** 2 * y - z ** 2, x ** 3 - y * z])
    f15 = x ** 5 + x * y ** 3 - 3 * x ** 2 * y * z + z ** 3
    v = member(Q, Symbolic(2), f15)
    assert v.member and v.multiplier is not None
    # replay: multiplier outside Q, multiplier * f inside Q^2
    assert not normal_form(v.multiplier, Q).normal_form.is_zero()
    assert normal_form(v.multiplier * f15, Q.power(2)).normal_form.is_zero()
    assert not member(Q, Ordinary(2), f15).member
    # non-member witness carries the quotient containment
    g = x ** 2
    vg = member(Q, Symbolic(2), g)
    assert not vg.member and "containment" in vg.witness


def test_symbolic_quotient_matches_hand_derivation():
    # (Q^2 : f) for f the generator of Q = (x^p - t) is Q itself
    from symdiff import quotient, ideal_equal

    for p in (2, 3):
        K = PolyRing(rational_functions(p), ("x",))
        f = K.var("x") ** p - K.from_scalar(K.domain.t)
        Q = Ideal(K, [f])
        assert ideal_equal(quotient(Q.power(2), f), Q)


def test_descending_filtration_all_kinds():
    Z2 = PolyRing(p_local_integers(2), ("x",))
    Q = Ideal(Z2, [Z2.from_int(2), Z2.var("x")])
    rng = random.Random(506)
    for _ in range(15):
        f = random_int_poly(Z2, rng, degree=3)
        for n in (1, 2):
            for make in (Ordinary, Symbolic,
                         lambda m: Differential(m, Linearity.Z),
                         lambda m: Mixed(m),
                         lambda m: DeltaPower(m)):
                if member(Q, make(n + 1), f).member:
                    assert member(Q, make(n), f).member


def test_separating_operator_examples():
    for p in (2, 3):
        K = PolyRing(rational_functions(p), ("x",))
        f = K.var("x") ** p - K.from_scalar(K.domain.t)
        Q = Ideal(K, [f])
        op = find_separating_operator(Q, 2, f, Differential(2, Linearity.Z))
        assert format_operator(op) == "D_t^(1)"
    Z2 = PolyRing(p_local_integers(2), ("x",))
    Q2 = Ideal(Z2, [Z2.from_int(2), Z2.var("x")])
    op = find_separating_operator(Q2, 2, Z2.from_int(2), Mixed(2))
    assert format_operator(op) == "δ^1"
    # member -> none
    prod = Z2.from_int(2) * Z2.var("x")
    assert find_separating_operator(Q2, 2, prod, Mixed(2)) is None


def test_delta_power_kind():
    Z2 = PolyRing(p_local_integers(2), ("x",))
    Q = Ideal(Z2, [Z2.from_int(2), Z2.var("x")])
    # delta(4) = -6 in Q, delta^2(4) = delta(-6) = -21 odd -> not in Q
    four = Z2.from_int(4)
    assert member(Q, DeltaPower(1), four).member
    assert member(Q, DeltaPower(2), four).member
    v = member(Q, DeltaPower(3), four)
    assert not v.member
    assert format_operator(v.operator) == "δ^2"


def test_mixed_intersection_form_examples():
    Z2 = PolyRing(p_local_integers(2), ("x",))
    Q = Ideal(Z2, [Z2.from_int(2)])
    f = Z2.from_int(2)
    assert member(Q, Mixed(2), f).member == mixed_intersection_form(Q, 2, None, f).member == False
    f2 = Z2.from_int(4)
    assert member(Q, Mixed(2), f2).member == mixed_intersection_form(Q, 2, None, f2).member == True


def test_mixed_agrees_with_intersection_form_200_random():
    rng = random.Random(500)
    for p in (2, 3):
        Z = PolyRing(p_local_integers(p), ("x",))
        Q = Ideal(Z, [Z.from_int(p), Z.var("x")])
        for _ in range(100):
            f = random_int_poly(Z, rng, degree=3)
            n = rng.randint(1, 3)
            a = member(Q, Mixed(n), f)
            b = mixed_intersection_form(Q, n, None, f)
            assert a.member == b.member, (p, n, str(f))


def test_containment_chain_and_filtration():
    rng = random.Random(501)
    domains = [(rationals(), None), (prime_field(5), None)]
    for domain, _ in domains:
        R = PolyRing(domain, ("x", "y"))
        x, y = R.var("x"), R.var("y")
        primes = [Ideal(R, [x, y]), Ideal(R, [x]), Ideal(R, [y ** 2 - x ** 3])]
        for Q in primes:
            for _ in range(12):
                style = rng.randrange(3)
                n = rng.randint(1, 3)
                if style == 0:
                    f = R.zero
                    for g in Q.power(n).generators:
                        f = f + random_int_poly(R, rng, degree=1, max_terms=2) * g
                elif style == 1:
                    f = R.zero
                    for g in Q.generators:
                        f = f + random_int_poly(R, rng, degree=1, max_terms=2) * g
                else:
                    f = random_int_poly(R, rng, degree=3)
                chain = [
                    member(Q, Ordinary(n), f).member,
                    member(Q, Symbolic(n), f).member,
                    member(Q, Differential(n, Linearity.Z), f).member,
                    member(Q, Differential(n, Linearity.BASE), f).member,
                ]
                for a, b in zip(chain, chain[1:]):
                    assert not a or b, (str(Q), str(f), n, chain)
                # descending filtration per kind
                for kind in (Ordinary, Symbolic):
                    if member(Q, kind(n + 1), f).member:
                        assert member(Q, kind(n), f).member


def test_differential_power_is_ideal():
    rng = random.Random(502)
    K = PolyRing(rational_functions(3), ("x",))
    f = K.var("x") ** 3 - K.from_scalar(K.domain.t)
    Q = Ideal(K, [f])
    # genuine members of the second Z-linear differential power
    members = [f * f, f * f * K.var("x")]
    for g in members:
        assert member(Q, Differential(2, Linearity.Z), g).member
        r = random_int_poly(K, rng, degree=2)
        assert member(Q, Differential(2, Linearity.Z), r * g).member
    # and under base-linearity f itself is a member; closure again holds
    for _ in range(10):
        r = random_int_poly(K, rng, degree=2)
        assert member(Q, Differential(2, Linearity.BASE), r * f).member


def test_primary_absorption_and_multiplicativity():
    R = PolyRing(rationals(), ("x", "y"))
    x, y = R.var("x"), R.var("y")
    Q = Ideal(R, [x, y])
    rng = random.Random(503)
    for _ in range(20):
        f = random_int_poly(R, rng, degree=2)
        s = random_int_poly(R, rng, degree=1) + R.one
        if normal_form(s, Q).normal_form.is_zero():
            continue
        n = rng.randint(1, 2)
        assert member(Q, Symbolic(n), s * f).member == member(Q, Symbolic(n), f).member
    # multiplicativity on members
    for _ in range(10):
        f = x * random_int_poly(R, rng, degree=1) + y * random_int_poly(R, rng, degree=1)
        g = x * random_int_poly(R, rng, degree=1) + y * random_int_poly(R, rng, degree=1)
        if f.is_zero() or g.is_zero():
            continue
        assert member(Q, Symbolic(1), f).member and member(Q, Symbolic(1), g).member
        assert member(Q, Symbolic(2), f * g).member


def test_symbolic_multiplicativity_on_curve_element():
    R = PolyRing(rationals(), ("x", "y", "z"))
    x, y, z = (R.var(v) for v in "xyz")
    Q = Ideal(R, [y ** 2 - x * z, x ** 2 * y - z ** 2, x ** 3 - y * z])
    f15 = x ** 5 + x * y ** 3 - 3 * x ** 2 * y * z + z ** 3
    g = Q.generators[0]
    assert member(Q, Symbolic(3), f15 * g).member


def test_witness_soundness_none_iff_member():
    rng = random.Random(504)
    Z2 = PolyRing(p_local_integers(2), ("x",))
    Q = Ideal(Z2, [Z2.from_int(2), Z2.var("x")])
    for _ in range(40):
        f = random_int_poly(Z2, rng, degree=3)
        n = rng.randint(1, 3)
        for kind in (Differential(n, Linearity.Z), Mixed(n)):
            v = member(Q, kind, f)
            op = find_separating_operator(Q, n, f, kind)
            assert (op is None) == v.member
            if op is not None:
                assert format_operator(op) == format_operator(v.operator)


def test_diff_power_generators_examples():
    R = PolyRing(rationals(), ("x",))
    res = diff_power_generators(Ideal(R, [R.var("x")]), 2, Linearity.Z, 3)
    assert sorted(str(b) for b in res.basis) == ["x^2"]
    assert "truncated at degree 3" in res.caveat
    for p in (2, 3):
        K = PolyRing(rational_functions(p), ("x",))
        f = K.var("x") ** p - K.from_scalar(K.domain.t)
        I = Ideal(K, [f])
        rb = diff_power_generators(I, 2, Linearity.BASE, p)
        rz = diff_power_generators(I, 2, Linearity.Z, p)
        assert rb.contains(f)
        assert not rz.contains(f)


def test_diff_power_generators_rejects_dvr():
    Z2 = PolyRing(p_local_integers(2), ("x",))
    with pytest.raises(UnsupportedDomain):
        diff_power_generators(Ideal(Z2, [Z2.var("x")]), 2, Linearity.Z, 3)


def test_differential_powers_commute_with_intersections():
    rng = random.Random(505)
    R = PolyRing(rationals(), ("x", "y"))
    x, y = R.var("x"), R.var("y")
    P1, P2 = Ideal(R, [x]), Ideal(R, [y])
    meet = intersect(P1, P2)
    for _ in range(25):
        f = random_int_poly(R, rng, degree=3)
        n = rng.randint(1, 3)
        joint = member(meet, Differential(n, Linearity.Z), f).member
        split = (member(P1, Differential(n, Linearity.Z), f).member
                 and member(P2, Differential(n, Linearity.Z), f).member)
        assert joint == split


def test_compare_report_examples():
    # identical columns over the inseparable prime
    for p in (2, 3):
        K = PolyRing(rational_functions(p), ("x",))
        f = K.var("x") ** p - K.from_scalar(K.domain.t)
        Q = Ideal(K, [f])
        rep = compare_report(Q, [Symbolic(2), Differential(2, Linearity.Z)],
                             [f, f * f, K.var("x"), K.one])
        assert rep.agreement
    # hand-checked cells over Z_(3)
    Z3 = PolyRing(p_local_integers(3), ("x",))
    p3, x3 = Z3.from_int(3), Z3.var("x")
    Q = Ideal(Z3, [p3, x3])
    corpus = [p3 ** 2, p3 * x3, x3 ** 2, p3, x3, p3 + x3 ** 2]
    rep = compare_report(Q, [Symbolic(2), Mixed(2)], corpus)
    assert rep.agreement
    got = [row[0].member for row in rep.cells]
    assert got == [True, True, True, False, False, False]
    # empty corpus -> empty table
    rep0 = compare_report(Q, [Symbolic(2)], [])
    assert rep0.cells == [] and rep0.agreement


def test_compare_report_aggregates_cell_errors():
    R = PolyRing(rationals(), ("x",))
    Q = Ideal(R, [R.var("x")])
    rep = compare_report(Q, [Symbolic(1), Mixed(1)], [R.var("x")])
    assert rep.cells[0][0].member
    assert rep.cells[0][1].error is not None
    assert rep.agreement  # errored cells do not count as disagreements
