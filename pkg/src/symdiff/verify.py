"""Curated verification suite for the engine's flagship examples.

Three families, each runnable at any small prime p:

* over F_p(t)[x] with Q = (x^p - t): the element x^p - t lies in the
  second differential power for coefficient-linear operators, but the
  integer-linear operator D_t^(1) excludes it, matching the symbolic
  verdict;
* over Z_(p)[x] with Q = (p): p lies in every integer-linear
  differential power but delta excludes it from the second mixed power;
* over Z[t]_(p)[x] with Q = (p, x^p - t) and the lift sending t to
  x^(p^2) - (x^p - t)^p: delta(x^p - t) is exactly 0, the mixed power
  without t-derivatives admits x^p - t, and D_t^(1) excludes it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import p_local_integers, p_local_poly_fractions, rational_functions
from .diffops import Linearity, format_operator
from .groebner import Ideal
from .poly import LiftSpec, PolyRing, poly_delta
from .powers import Differential, Mixed, Symbolic, member

DEFAULT_PRIMES = (2, 3, 5)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str


def _check(name, passed, details) -> CheckResult:
    return CheckResult(name, bool(passed), details)


def field_counterexample_check(p: int) -> CheckResult:
    domain = rational_functions(p)
    ring = PolyRing(domain, ("x",))
    f = ring.var("x") ** p - ring.from_scalar(domain.t)
    Q = Ideal(ring, [f])
    base = member(Q, Differential(2, Linearity.BASE), f)
    zlin = member(Q, Differential(2, Linearity.Z), f)
    symb = member(Q, Symbolic(2), f)
    witness_ok = (
        not zlin.member
        and zlin.operator is not None
        and format_operator(zlin.operator) == "D_t^(1)"
        and zlin.value == ring.from_int(-1)
    )
    passed = base.member and witness_ok and not symb.member
    details = (
        f"over F_{p}(t)[x], Q=(x^{p}-t): base-linear member={base.member}, "
        f"Z-linear member={zlin.member}"
        + (f" (witness {format_operator(zlin.operator)}, value {zlin.value})"
           if zlin.operator else "")
        + f", symbolic member={symb.member}"
    )
    return _check(f"field counterexample, p={p}", passed, details)


def dvr_counterexample_check(p: int) -> CheckResult:
    domain = p_local_integers(p)
    ring = PolyRing(domain, ("x",))
    f = ring.from_int(p)
    Q = Ideal(ring, [f])
    diff_ok = all(member(Q, Differential(n, Linearity.Z), f).member for n in (2, 3))
    mixed = member(Q, Mixed(2), f)
    witness_ok = (
        not mixed.member
        and mixed.operator is not None
        and format_operator(mixed.operator) == "δ^1"
        and mixed.value == ring.from_int(1 - p ** (p - 1))
    )
    passed = diff_ok and witness_ok
    details = (
        f"over Z_({p})[x], Q=(p): differential member n=2,3: {diff_ok}; "
        f"mixed(2) member={mixed.member}"
        + (f" (witness {format_operator(mixed.operator)}, value {mixed.value})"
           if mixed.operator else "")
    )
    return _check(f"mixed counterexample, p={p}", passed, details)


def recalled_example_check(p: int) -> CheckResult:
    domain = p_local_poly_fractions(p)
    ring = PolyRing(domain, ("x",))
    x = ring.var("x")
    f = x ** p - ring.from_scalar(domain.t)
    lift = LiftSpec(ring, t_image=x ** (p * p) - f ** p)
    Q = Ideal(ring, [ring.from_int(p), f])
    delta_zero = poly_delta(f, lift).is_zero()
    base = member(Q, Mixed(2, lift, Linearity.BASE), f)
    zlin = member(Q, Mixed(2, lift, Linearity.Z), f)
    witness_ok = (
        not zlin.member
        and zlin.operator is not None
        and format_operator(zlin.operator) == "D_t^(1)"
    )
    passed = delta_zero and base.member and witness_ok
    details = (
        f"over Z[t]_({p})[x], Q=(p, x^{p}-t), lift t -> x^{p*p}-(x^{p}-t)^{p}: "
        f"delta(x^{p}-t)=0: {delta_zero}; base-mixed member={base.member}; "
        f"Z-mixed member={zlin.member}"
        + (f" (witness {format_operator(zlin.operator)})" if zlin.operator else "")
    )
    return _check(f"recalled DVR example, p={p}", passed, details)


def curated_checks(p: int | None = None) -> list:
    """Run the curated suite at one prime, or at 2, 3 and 5."""
    primes = (p,) if p is not None else DEFAULT_PRIMES
    out = []
    for q in primes:
        out.append(field_counterexample_check(q))
        out.append(dvr_counterexample_check(q))
        out.append(recalled_example_check(q))
    return out
