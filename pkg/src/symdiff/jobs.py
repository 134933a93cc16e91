"""Job files: a line-oriented batch format and its runner.

A job file has a `[ring]` section, any number of named `[ideal <name>]`
sections (one generator expression per line), and a `[query]` section
with one query per line:

    member     ideal=Q kind=symbolic(2) f="x^2 - t"
    separate   ideal=Q kind=differential(2,Z) f="x^2 - t" [operator="D_t^(1)"]
    compare    ideal=Q kinds="symbolic(2); differential(2,Z)"
               corpus="x; 1; random(10, 3)" [expect-equal=true]
    generators ideal=Q kind=differential(2,Z) degree-bound=3 [t-degree-bound=2]
    verify-paper [p=2]

Query values with spaces must be quoted.  `random(N, D)` inside a corpus
expands to N seeded random polynomials of degree at most D.
"""

from __future__ import annotations

import json
import random
import re
import shlex
from dataclasses import dataclass

from .coeff import DomainKind, DomainSpec
from .diffops import Linearity, apply, format_operator, parse_operator
from .errors import ParseError, SymdiffError
from .exprs import parse_polynomial
from .groebner import Ideal, normal_form
from .poly import LiftSpec, PolyRing
from .powers import (
    DeltaPower,
    Differential,
    Mixed,
    Ordinary,
    Symbolic,
    Verdict,
    compare_report,
    diff_power_generators,
    find_separating_operator,
    member,
)

_DOMAIN_ALIASES = {
    "q": DomainKind.RATIONALS_Q,
    "qq": DomainKind.RATIONALS_Q,
    "rationals": DomainKind.RATIONALS_Q,
    "fp": DomainKind.PRIME_FIELD_FP,
    "f_p": DomainKind.PRIME_FIELD_FP,
    "fp(t)": DomainKind.RATIONAL_FUNCTIONS_FP_T,
    "f_p(t)": DomainKind.RATIONAL_FUNCTIONS_FP_T,
    "fpt": DomainKind.RATIONAL_FUNCTIONS_FP_T,
    "zp": DomainKind.P_LOCAL_INTEGERS_ZP,
    "z_(p)": DomainKind.P_LOCAL_INTEGERS_ZP,
    "z(p)": DomainKind.P_LOCAL_INTEGERS_ZP,
    "z[t]p": DomainKind.P_LOCAL_POLY_FRAC_ZTP,
    "z[t]_(p)": DomainKind.P_LOCAL_POLY_FRAC_ZTP,
    "ztp": DomainKind.P_LOCAL_POLY_FRAC_ZTP,
}


@dataclass
class MemberQuery:
    ideal: str
    kind_text: str
    f_text: str
    line: int
    text: str


@dataclass
class SeparateQuery:
    ideal: str
    kind_text: str
    f_text: str
    operator_text: str | None
    line: int
    text: str


@dataclass
class CompareQuery:
    ideal: str
    kinds_text: str
    corpus_text: str
    expect_equal: bool
    line: int
    text: str


@dataclass
class GeneratorsQuery:
    ideal: str
    kind_text: str
    degree_bound: int | None
    t_degree_bound: int | None
    line: int
    text: str


@dataclass
class VerifyPaperQuery:
    p: int | None
    line: int
    text: str


@dataclass
class JobSpec:
    ring: PolyRing
    lift: LiftSpec | None
    ideals: dict
    queries: list


_SECTION_RE = re.compile(r"^\[([^\]]+)\]$")


def parse_job(text: str) -> JobSpec:
    """Parse a job file; all polynomials are validated in the declared
    ring and lift overrides are checked at load time."""
    ring_keys = {}
    lift_exprs = {}
    ideal_lines = {}
    query_lines = []
    section = None
    current_ideal = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            head = m.group(1).strip()
            if head == "ring":
                section = "ring"
            elif head.startswith("ideal"):
                name = head[len("ideal"):].strip()
                if not name:
                    raise ParseError("ideal section needs a name", lineno)
                section = "ideal"
                current_ideal = name
                ideal_lines.setdefault(name, [])
            elif head == "query":
                section = "query"
            else:
                raise ParseError(f"unknown section [{head}]", lineno)
            continue
        if section == "ring":
            if "=" not in line:
                raise ParseError("expected key = value", lineno)
            key, value = (part.strip() for part in line.split("=", 1))
            if key.startswith("lift."):
                lift_exprs[key[len("lift."):]] = (value, lineno)
            else:
                ring_keys[key] = (value, lineno)
        elif section == "ideal":
            ideal_lines[current_ideal].append((line, lineno))
        elif section == "query":
            query_lines.append((line, lineno))
        else:
            raise ParseError("content before any section", lineno)

    ring = _build_ring(ring_keys)
    lift = _build_lift(ring, lift_exprs)
    ideals = {}
    for name, lines in ideal_lines.items():
        gens = [parse_polynomial(expr, ring, lineno) for expr, lineno in lines]
        ideals[name] = Ideal(ring, gens)
    queries = [_parse_query(line, lineno) for line, lineno in query_lines]
    return JobSpec(ring, lift, ideals, queries)


def _build_ring(ring_keys) -> PolyRing:
    if "domain" not in ring_keys:
        raise ParseError("missing 'domain' in [ring]")
    dom_text, dom_line = ring_keys["domain"]
    kind = _DOMAIN_ALIASES.get(dom_text.strip().lower())
    if kind is None:
        raise ParseError(f"unknown domain {dom_text!r}", dom_line)
    p = None
    if kind is not DomainKind.RATIONALS_Q:
        if "p" not in ring_keys:
            raise ParseError(f"domain {dom_text} needs 'p = <prime>'", dom_line)
        p_text, p_line = ring_keys["p"]
        try:
            p = int(p_text)
        except ValueError:
            raise ParseError(f"p must be an integer, got {p_text!r}", p_line) from None
    try:
        domain = DomainSpec(kind, p)
    except ValueError as exc:
        raise ParseError(str(exc), ring_keys.get("p", (None, None))[1]) from None
    if "vars" not in ring_keys:
        raise ParseError("missing 'vars' in [ring]")
    vars_text, vars_line = ring_keys["vars"]
    names = tuple(v.strip() for v in vars_text.split(",") if v.strip())
    if not names:
        raise ParseError("empty variable list", vars_line)
    try:
        return PolyRing(domain, names)
    except ValueError as exc:
        raise ParseError(str(exc), vars_line) from None


def _build_lift(ring, lift_exprs) -> LiftSpec | None:
    if not lift_exprs:
        return None
    t_image = None
    var_images = {}
    for name, (expr, lineno) in lift_exprs.items():
        image = parse_polynomial(expr, ring, lineno)
        if name == "t":
            t_image = image
        else:
            var_images[name] = image
    return LiftSpec(ring, t_image=t_image, var_images=var_images)


def _parse_query(line, lineno):
    try:
        parts = shlex.split(line, comments=True)
    except ValueError as exc:
        raise ParseError(f"bad quoting: {exc}", lineno) from None
    if not parts:
        raise ParseError("empty query", lineno)
    verb, kv = parts[0], {}
    for part in parts[1:]:
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part!r}", lineno)
        key, value = part.split("=", 1)
        kv[key.strip()] = value
    def need(key):
        if key not in kv:
            raise ParseError(f"{verb} query needs {key}=", lineno)
        return kv[key]
    if verb == "member":
        return MemberQuery(need("ideal"), need("kind"), need("f"), lineno, line)
    if verb == "separate":
        return SeparateQuery(need("ideal"), need("kind"), need("f"),
                             kv.get("operator"), lineno, line)
    if verb == "compare":
        expect = kv.get("expect-equal", "false").lower() in ("1", "true", "yes")
        return CompareQuery(need("ideal"), need("kinds"), need("corpus"),
                            expect, lineno, line)
    if verb == "generators":
        db = kv.get("degree-bound")
        tdb = kv.get("t-degree-bound")
        return GeneratorsQuery(need("ideal"), need("kind"),
                               int(db) if db else None,
                               int(tdb) if tdb else None, lineno, line)
    if verb == "verify-paper":
        p = kv.get("p")
        return VerifyPaperQuery(int(p) if p else None, lineno, line)
    raise ParseError(f"unknown query verb {verb!r}", lineno)


# ---------------------------------------------------------------------------
# kind and corpus parsing


_KIND_RE = re.compile(r"^\s*(ordinary|symbolic|differential|delta|mixed)\s*\(([^)]*)\)\s*$")

_LINEARITY = {
    "z": Linearity.Z, "zlinear": Linearity.Z,
    "base": Linearity.BASE, "baselinear": Linearity.BASE,
    "k": Linearity.BASE, "v": Linearity.BASE,
}


def parse_kind(text: str, lift: LiftSpec | None = None, line=None):
    m = _KIND_RE.match(text)
    if m is None:
        raise ParseError(f"bad power kind {text!r}", line)
    name, arg_text = m.group(1), m.group(2)
    args = [a.strip() for a in arg_text.split(",") if a.strip()]
    if not args or not args[0].isdigit():
        raise ParseError(f"kind {name} needs a positive integer level", line)
    n = int(args[0])
    rest = args[1:]
    linearity = None
    for a in rest:
        lin = _LINEARITY.get(a.lower())
        if lin is None:
            raise ParseError(f"bad kind argument {a!r}", line)
        linearity = lin
    try:
        if name == "ordinary":
            return Ordinary(n)
        if name == "symbolic":
            return Symbolic(n)
        if name == "differential":
            return Differential(n, linearity or Linearity.Z)
        if name == "delta":
            return DeltaPower(n, lift)
        return Mixed(n, lift, linearity or Linearity.Z)
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


def random_corpus(ring: PolyRing, count: int, degree: int, rng) -> list:
    """Seeded random polynomials; coefficients are small integers times a
    small power of t where the domain has one."""
    out = []
    for _ in range(count):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * ring.nvars
            for _ in range(rng.randint(0, degree)):
                exps[rng.randrange(ring.nvars)] += 1
            c = ring.domain.from_int(rng.randint(-4, 4))
            if ring.domain.has_t and rng.random() < 0.5:
                c = c * ring.domain.t ** rng.randint(1, 2)
            key = tuple(exps)
            terms[key] = terms.get(key, ring.domain.zero) + c
        out.append(ring.polynomial(terms))
    return out


_RANDOM_RE = re.compile(r"^random\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)$")


def parse_corpus(text: str, ring: PolyRing, rng, line=None) -> list:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _RANDOM_RE.match(chunk)
        if m:
            count = int(m.group(1))
            degree = int(m.group(2)) if m.group(2) else 3
            out.extend(random_corpus(ring, count, degree, rng))
        else:
            out.append(parse_polynomial(chunk, ring, line))
    return out


# ---------------------------------------------------------------------------
# execution


@dataclass
class QueryOutcome:
    text: str
    json_obj: dict
    failed_expectation: bool = False


def _get_ideal(spec: JobSpec, name: str, line) -> Ideal:
    ideal = spec.ideals.get(name)
    if ideal is None:
        raise ParseError(f"unknown ideal {name!r}", line)
    return ideal


def _run_member(spec, q: MemberQuery) -> QueryOutcome:
    Q = _get_ideal(spec, q.ideal, q.line)
    kind = parse_kind(q.kind_text, spec.lift, q.line)
    f = parse_polynomial(q.f_text, spec.ring, q.line)
    v = member(Q, kind, f)
    lines = [f"member {q.ideal} {kind.describe()} f = {f}",
             f"  member: {'yes' if v.member else 'no'}"]
    if v.witness:
        for key, val in v.witness.items():
            lines.append(f"  {key}: {val}")
    for c in v.caveats:
        lines.append(f"  caveat: {c}")
    return QueryOutcome("\n".join(lines), v.to_json_dict(q.text))


def _run_separate(spec, q: SeparateQuery) -> QueryOutcome:
    Q = _get_ideal(spec, q.ideal, q.line)
    kind = parse_kind(q.kind_text, spec.lift, q.line)
    if not isinstance(kind, (Differential, Mixed)):
        raise ParseError("separate needs a differential or mixed kind", q.line)
    f = parse_polynomial(q.f_text, spec.ring, q.line)
    if q.operator_text is not None:
        op = parse_operator(q.operator_text, spec.ring, spec.lift)
        value = apply(op, f)
        nf = normal_form(value, Q).normal_form
        if not nf.is_zero():
            v = Verdict(False, kind.describe(),
                        {"operator": format_operator(op), "value": str(value),
                         "value_mod_ideal": str(nf), "replayed": "true"},
                        (), operator=op, value=value, value_nf=nf)
        else:
            v = member(Q, kind, f)
            if v.witness is None:
                v.witness = {}
            v.witness["replayed_operator"] = format_operator(op)
            v.witness["replayed_value_mod_ideal"] = "0"
    else:
        op = find_separating_operator(Q, kind.n, f, kind)
        if op is None:
            v = Verdict(True, kind.describe(), {"operator": "none"},
                        (member(Q, kind, f).caveats))
        else:
            value = apply(op, f)
            nf = normal_form(value, Q).normal_form
            v = Verdict(False, kind.describe(),
                        {"operator": format_operator(op), "value": str(value),
                         "value_mod_ideal": str(nf)},
                        (), operator=op, value=value, value_nf=nf)
    lines = [f"separate {q.ideal} {kind.describe()} f = {f}"]
    for key, val in (v.witness or {}).items():
        lines.append(f"  {key}: {val}")
    lines.append(f"  member: {'yes' if v.member else 'no'}")
    return QueryOutcome("\n".join(lines), v.to_json_dict(q.text))


def _run_compare(spec, q: CompareQuery, rng, plot_paths=None) -> QueryOutcome:
    Q = _get_ideal(spec, q.ideal, q.line)
    kinds = [parse_kind(k.strip(), spec.lift, q.line)
             for k in q.kinds_text.split(";") if k.strip()]
    corpus = parse_corpus(q.corpus_text, spec.ring, rng, q.line)
    report = compare_report(Q, kinds, corpus)
    failed = q.expect_equal and not report.agreement
    lines = [f"compare {q.ideal} [{', '.join(k.describe() for k in kinds)}]"]
    lines.append(report.to_text())
    if q.expect_equal:
        lines.append(f"expected equality: {'HOLDS' if report.agreement else 'FAILS'}")
    for c in report.caveats:
        lines.append(f"caveat: {c}")
    obj = report.to_json_dict(q.text)
    obj["expect_equal"] = q.expect_equal
    obj["passed"] = not failed
    if plot_paths is not None:
        csv_path, fig_path = plot_paths
        from .plots import render_compare_figure, write_compare_csv

        write_compare_csv(report, csv_path)
        render_compare_figure(report, fig_path)
        obj["csv_path"] = str(csv_path)
        obj["figure_path"] = str(fig_path)
        lines.append(f"wrote {csv_path} and {fig_path}")
    return QueryOutcome("\n".join(lines), obj, failed)


def _run_generators(spec, q: GeneratorsQuery, default_bound) -> QueryOutcome:
    Q = _get_ideal(spec, q.ideal, q.line)
    kind = parse_kind(q.kind_text, spec.lift, q.line)
    if not isinstance(kind, Differential):
        raise ParseError("generators needs a differential kind", q.line)
    bound = q.degree_bound or default_bound
    if bound is None:
        raise ParseError("generators needs degree-bound= (or --degree-bound)", q.line)
    result = diff_power_generators(Q, kind.n, kind.linearity, bound, q.t_degree_bound)
    lines = [f"generators {q.ideal} {kind.describe()} degree-bound {bound}"]
    for b in result.basis:
        lines.append(f"  {b}")
    lines.append(f"  caveat: {result.caveat}")
    obj = {
        "query": q.text,
        "kind": kind.describe(),
        "member": None,
        "witness": None,
        "generators": [str(b) for b in result.basis],
        "caveats": [result.caveat],
    }
    return QueryOutcome("\n".join(lines), obj)


def _run_verify_paper(q: VerifyPaperQuery) -> QueryOutcome:
    from .verify import curated_checks

    results = curated_checks(q.p)
    lines = []
    ok = True
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.details}")
        ok = ok and r.passed
    obj = {
        "query": q.text,
        "kind": "verify-paper",
        "member": None,
        "witness": None,
        "caveats": [],
        "checks": [
            {"name": r.name, "passed": r.passed, "details": r.details} for r in results
        ],
        "passed": ok,
    }
    return QueryOutcome("\n".join(lines), obj, failed_expectation=not ok)


def run_job(spec: JobSpec, out_format: str = "text", *, seed: int = 0,
            degree_bound: int | None = None, threads: int = 1,
            plot_dir=None, stream=None) -> int:
    """Execute the queries in order; exit 0 when everything executed, 2
    when a declared expectation or a verify-paper check failed."""
    import sys

    if stream is None:
        stream = sys.stdout
    if plot_dir is not None:
        import os

        os.makedirs(plot_dir, exist_ok=True)

    def execute(idx_query):
        idx, q = idx_query
        rng = random.Random(seed + idx)
        if isinstance(q, MemberQuery):
            return _run_member(spec, q)
        if isinstance(q, SeparateQuery):
            return _run_separate(spec, q)
        if isinstance(q, CompareQuery):
            paths = None
            if plot_dir is not None:
                import os

                paths = (os.path.join(plot_dir, f"compare_{idx}.csv"),
                         os.path.join(plot_dir, f"compare_{idx}.png"))
            return _run_compare(spec, q, rng, paths)
        if isinstance(q, GeneratorsQuery):
            return _run_generators(spec, q, degree_bound)
        if isinstance(q, VerifyPaperQuery):
            return _run_verify_paper(q)
        raise TypeError(f"unknown query {q!r}")

    def execute_guarded(idx_query):
        idx, q = idx_query
        try:
            return execute(idx_query), False
        except SymdiffError as exc:
            msg = f"query {idx + 1} (line {q.line}): {exc}"
            obj = {"query": q.text, "kind": None, "member": None,
                   "witness": None, "caveats": [], "error": str(exc)}
            return QueryOutcome(f"error: {msg}", obj), True

    jobs = list(enumerate(spec.queries))
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(execute_guarded, jobs))
    else:
        results = [execute_guarded(j) for j in jobs]

    failed = False
    errored = False
    for idx, (outcome, error) in enumerate(results):
        failed = failed or outcome.failed_expectation
        errored = errored or error
        if out_format == "json":
            stream.write(json.dumps(outcome.json_obj) + "\n")
        else:
            stream.write(outcome.text + "\n")
            if idx + 1 < len(results):
                stream.write("\n")
    if errored:
        return 1
    return 2 if failed else 0
