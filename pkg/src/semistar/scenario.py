"""Scenario files: JSON descriptions of a backend, named operations,
candidate primes with provenance, valuations, and an assertion list.

Running a scenario executes the assertions in declaration order and
produces a deterministic report (same seed, same verdicts and witnesses;
only timings vary).  Exit-code contract: 0 all pass, 1 an assertion
failed or errored, 2 the scenario itself is malformed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .domains import (
    Domain,
    DomainError,
    FractionalIdeal,
    PolyRat,
    PrimeIdeal,
    ValuationSpec,
    make_domain,
)
from .expressions import (
    Context,
    ExpressionError,
    FnVal,
    parse_expression,
    parse_fn_element,
    parse_ideal,
    parse_operation,
)
from .function_rings import (
    MembershipCertificate,
    extend_contract_kr,
    extend_contract_na,
    in_multiplicative_set_N,
    kr_bezout_combine,
    kr_member,
    na_equal_iff_M,
    na_maximal_trace,
    na_member,
)
from .operations import (
    OperationError,
    check_axioms,
    check_eab,
    compare_ops,
    finite_type_closure,
    is_star_valuation_overring,
    oracle_subset,
    quasi_star_spectrum,
)
from .polys import Poly
from .sampling import Sampler


class ScenarioError(ValueError):
    pass


@dataclass
class Assertion:
    id: str
    kind: str
    params: dict
    provenance: str = ""


@dataclass
class Scenario:
    name: str
    seed: int
    domain_spec: dict
    primes: list[dict]
    valuations: list[dict]
    operations: list[dict]
    aux_ideals: list[str]
    assertions: list[Assertion]
    raw: dict = field(default_factory=dict)


@dataclass
class AssertionResult:
    id: str
    kind: str
    verdict: str  # "pass" | "fail" | "error"
    witness: dict | None
    millis: int
    provenance: str = ""


@dataclass
class Report:
    scenario: str
    seed: int
    tool_version: str
    results: list[AssertionResult]
    summary: dict

    def exit_code(self) -> int:
        return 0 if self.summary["failed"] == 0 and self.summary["errors"] == 0 else 1


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def load_scenario(source) -> Scenario:
    if isinstance(source, (str, Path)):
        try:
            data = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ScenarioError(f"cannot load scenario: {exc}") from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    for key in ("name", "domain", "assertions"):
        if key not in data:
            raise ScenarioError(f"scenario is missing the {key!r} field")
    assertions = []
    seen_ids = set()
    for i, item in enumerate(data["assertions"]):
        if "kind" not in item:
            raise ScenarioError(f"assertion #{i} has no kind")
        aid = item.get("id", f"a{i+1}")
        if aid in seen_ids:
            raise ScenarioError(f"duplicate assertion id {aid!r}")
        seen_ids.add(aid)
        params = {k: v for k, v in item.items() if k not in ("id", "kind", "provenance")}
        assertions.append(Assertion(aid, item["kind"], params, item.get("provenance", "")))
    return Scenario(
        name=data["name"],
        seed=int(data.get("seed", 0)),
        domain_spec=data["domain"],
        primes=data.get("primes", []),
        valuations=data.get("valuations", []),
        operations=data.get("operations", []),
        aux_ideals=data.get("aux_ideals", []),
        assertions=assertions,
        raw=data,
    )


@dataclass
class RunContext:
    domain: Domain
    ctx: Context
    primes: dict
    valuations: dict
    operations: dict
    sampler: Sampler
    seed: int


def build_context(scenario: Scenario, seed: int) -> RunContext:
    try:
        domain = make_domain(scenario.domain_spec)
    except DomainError as exc:
        raise ScenarioError(f"bad domain: {exc}") from exc
    ctx = Context(domain)
    primes: dict[str, PrimeIdeal] = {}
    for spec in scenario.primes:
        try:
            ideal = parse_ideal(spec["ideal"], ctx)
            prime = PrimeIdeal(spec["name"], ideal, spec.get("certificate", "user-asserted"),
                               spec.get("provenance", ""))
        except (KeyError, ExpressionError, DomainError) as exc:
            raise ScenarioError(f"bad prime spec {spec!r}: {exc}") from exc
        if not prime.verify():
            raise ScenarioError(f"prime {prime.name!r} fails its certificate check")
        primes[prime.name] = prime
        ctx.names[prime.name] = prime
    valuations: dict[str, ValuationSpec] = {}
    for spec in scenario.valuations:
        try:
            valuations[spec["name"]] = _valuation_from_spec(domain, spec, ctx)
        except (KeyError, ExpressionError, DomainError) as exc:
            raise ScenarioError(f"bad valuation spec {spec!r}: {exc}") from exc
        ctx.names[spec["name"]] = valuations[spec["name"]]
    ctx.default_aux = [parse_ideal(text, ctx) for text in scenario.aux_ideals]
    operations = {}
    for spec in scenario.operations:
        try:
            operations[spec["name"]] = parse_operation(spec["expr"], ctx)
        except (KeyError, ExpressionError, OperationError, DomainError) as exc:
            raise ScenarioError(f"bad operation spec {spec!r}: {exc}") from exc
        ctx.names[spec["name"]] = operations[spec["name"]]
    sampler = Sampler(domain, seed, list(primes.values()))
    return RunContext(domain, ctx, primes, valuations, operations, sampler, seed)


def _valuation_from_spec(domain: Domain, spec: dict, ctx: Context) -> ValuationSpec:
    kind = spec["kind"]
    name = spec["name"]
    if kind == "dvr":
        target = spec["prime"]
        if target in ctx.names and isinstance(ctx.names[target], PrimeIdeal):
            prime = ctx.names[target]
            if domain.kind == "poly_local":
                gen = domain.prime_principal_gen(prime)
                if gen is None:
                    raise ScenarioError(f"valuation {name!r} needs a principal prime")
                return ValuationSpec(name, "dvr", (gen,))
            return ValuationSpec(name, "dvr", (int(prime.ideal.num),))
        from .expressions import parse_element

        elem = parse_element(target, ctx)
        if domain.kind == "poly_local":
            reduced = elem.reduced()
            if not reduced.den.is_constant():
                raise ScenarioError("dvr center must be a polynomial")
            return ValuationSpec(name, "dvr", (reduced.num.scale(
                Fraction(1) / reduced.den.constant_coeff()),))
        return ValuationSpec(name, "dvr", (int(Fraction(elem)),))
    if kind == "monomial_weight":
        weights = tuple(Fraction(w) for w in spec["weights"])
        return ValuationSpec(name, "monomial_weight", (weights,))
    if kind == "lex_monomial":
        rows = tuple(tuple(int(x) for x in row) for row in spec["rows"])
        if len(rows) != 2:
            raise ScenarioError("lex_monomial needs exactly two weight rows")
        return ValuationSpec(name, "lex_monomial", (rows,))
    raise ScenarioError(f"unknown valuation kind {kind!r}")


# ---------------------------------------------------------------------------
# JSON-safe rendering
# ---------------------------------------------------------------------------


def _json_safe(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, MembershipCertificate):
        return {"verdict": value.verdict, "route": value.route,
                "witness": _json_safe(value.witness)}
    if isinstance(value, FractionalIdeal):
        return value.render()
    if isinstance(value, PrimeIdeal):
        return value.name
    if isinstance(value, ValuationSpec):
        return value.render()
    if isinstance(value, PolyRat):
        return None  # rendered by the owning domain elsewhere
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return str(value)


# ---------------------------------------------------------------------------
# Assertion executors
# ---------------------------------------------------------------------------


def _get_op(rc: RunContext, name_or_expr: str):
    if name_or_expr in rc.operations:
        return rc.operations[name_or_expr]
    return parse_operation(name_or_expr, rc.ctx)


def _candidate_list(rc: RunContext, names) -> list[PrimeIdeal]:
    if names in (None, "all"):
        return list(rc.primes.values())
    return [rc.primes[n] for n in names]


def _run_closure_equals(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    E = parse_ideal(params["input"], rc.ctx)
    expected = parse_ideal(params["expected"], rc.ctx)
    via = params.get("via", "apply")
    if via == "apply":
        oracle = star.apply(E).oracle
    elif via == "na-extension":
        oracle = extend_contract_na(star, E)
    elif via == "kr-extension":
        oracle = extend_contract_kr(star, E, _budget(rc, params.get("budget")))
    else:
        raise ScenarioError(f"unknown closure route {via!r}")
    witnesses = getattr(oracle, "witnesses", None)
    extra_payload = {"witnesses": witnesses} if witnesses else {}
    if oracle.presentation is not None and oracle.grade == "exact":
        ok = oracle.presentation.eq(expected)
        return ok, {"mode": "exact", "closure": oracle.presentation.render(),
                    "expected": expected.render(), **extra_payload}
    missing = [g for g in expected.gens_elems() if not oracle.contains(g)]
    if missing:
        return False, {"mode": "exact",
                       "missing": rc.domain.elem_render(missing[0]), **extra_payload}
    probes = rc.sampler.probes(int(params.get("probes", 12)))
    extra = [z for z in probes if oracle.contains(z) and not expected.contains_elem(z)]
    if extra:
        return False, {"mode": "exact", "extra": rc.domain.elem_render(extra[0]),
                       **extra_payload}
    return True, {"mode": "sampled", "expected": expected.render(), **extra_payload}


def _run_ideal_equals(rc: RunContext, params: dict) -> tuple[bool, dict]:
    left = parse_ideal(params["left"], rc.ctx)
    right = parse_ideal(params["right"], rc.ctx)
    ok = left.eq(right)
    return ok, {"left": left.render(), "right": right.render()}


_EXPECT_BOOL = {"yes": True, "no": False, True: True, False: False}


def _run_membership(rc: RunContext, params: dict) -> tuple[bool, dict]:
    ring = params["ring"]
    expect = params.get("expect", "yes")
    budget = _budget(rc, params.get("budget"))
    if ring in ("na", "kr"):
        star = _get_op(rc, params["op"])
        elem = parse_fn_element(params["element"], rc.ctx)
        cert = na_member(star, elem) if ring == "na" else kr_member(star, elem, budget)
        return cert.verdict == expect, {"certificate": _json_safe(cert)}
    if ring == "N":
        star = _get_op(rc, params["op"])
        elem = parse_fn_element(params["element"], rc.ctx)
        if _fn_deg(rc, elem.den) > 0:
            raise ScenarioError("N-membership takes a polynomial, not a fraction")
        got = in_multiplicative_set_N(star, elem.num)
        return got == _EXPECT_BOOL[expect], {"polynomial": params["element"]}
    if ring == "ideal":
        E = parse_ideal(params["ideal"], rc.ctx)
        z = _element(rc, params["element"])
        got = E.contains_elem(z)
        return got == _EXPECT_BOOL[expect], {"ideal": E.render()}
    if ring in ("closure", "na-extension", "kr-extension"):
        star = _get_op(rc, params["op"])
        E = parse_ideal(params["ideal"], rc.ctx)
        z = _element(rc, params["element"])
        if ring == "closure":
            oracle = star.apply(E).oracle
        elif ring == "na-extension":
            oracle = extend_contract_na(star, E)
        else:
            oracle = extend_contract_kr(star, E, budget)
        got = oracle.contains(z)
        return got == _EXPECT_BOOL[expect], {"grade": oracle.grade, "tag": oracle.tag}
    raise ScenarioError(f"unknown membership ring {ring!r}")


def _fn_deg(rc: RunContext, f) -> int:
    from .function_rings import fn_xt_degree

    return fn_xt_degree(rc.domain, f)


def _element(rc: RunContext, text: str):
    from .expressions import parse_element

    return parse_element(text, rc.ctx)


def _budget(rc: RunContext, spec) -> dict:
    if spec is None:
        return {"power": 2, "aux": list(rc.ctx.default_aux)}
    if isinstance(spec, int):
        return {"power": spec, "aux": list(rc.ctx.default_aux)}
    budget = dict(spec)
    budget.setdefault("power", 2)
    budget["aux"] = [parse_ideal(t, rc.ctx) for t in budget.get("aux", [])] \
        or list(rc.ctx.default_aux)
    if "obstructions" in budget:
        budget["obstructions"] = [rc.valuations[n] for n in budget["obstructions"]]
    return budget


def _run_m_set_equals(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    candidates = _candidate_list(rc, params.get("candidates"))
    expected = set(params["expected"])
    if params.get("trace"):
        out = na_maximal_trace(star, candidates, probes=rc.sampler.probes(8))
        ok = set(out["maximals"]) == expected and all(
            v["content_poly_outside_N"] and v["extension_misses_1"]
            for v in out["verifications"].values()
        )
        return ok, _json_safe(out)
    spectrum = quasi_star_spectrum(finite_type_closure(star), candidates,
                                   probes=rc.sampler.probes(8))
    ok = set(spectrum.maximals) == expected
    return ok, {"maximals": spectrum.maximals, "quasi": spectrum.quasi,
                "excluded": _json_safe(spectrum.excluded), "label": spectrum.label}


def _run_op_order(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star1 = _get_op(rc, params["op1"])
    star2 = _get_op(rc, params["op2"])
    n = int(params.get("samples", 6))
    ideals = [rc.sampler.frac_ideal() for _ in range(n)]
    for text in params.get("ideals", []):
        ideals.append(parse_ideal(text, rc.ctx))
    probes = rc.sampler.probes(10)
    out = compare_ops(star1, star2, ideals, probes)
    expected = params.get("expected", "<=")
    verdict = out["verdict"]
    # "<=" and ">=" are non-strict; "<" additionally demands a strictness
    # witness somewhere in the sample.
    if expected == "<=":
        ok = verdict in ("<=", "equal")
    elif expected == ">=":
        ok = verdict in (">=", "equal")
    elif expected == "<":
        ok = verdict == "<=" and out["strictness"] is not None
    else:
        ok = verdict == expected
    return ok, _json_safe(out)


def _run_tilde_routes(rc: RunContext, params: dict) -> tuple[bool, dict]:
    """Three independent computations of the tilde closure must agree
    elementwise: the spectral route, the colon (w) route and the Nagata
    contraction route."""
    from .operations import star_w_of

    star = _get_op(rc, params["op"])
    tilde = _get_op(rc, params["tilde"])
    w = star_w_of(star)
    n = int(params.get("samples", 50))
    checked = 0
    disagreements = []
    while checked < n:
        E = rc.sampler.integral_ideal()
        z = rc.sampler.element()
        via_tilde = tilde.apply(E).oracle.contains(z)
        via_w = w.apply(E).oracle.contains(z)
        via_na = extend_contract_na(star, E).contains(z)
        checked += 1
        if not (via_tilde == via_w == via_na):
            disagreements.append({
                "ideal": E.render(),
                "element": rc.domain.elem_render(z),
                "routes": {"tilde": via_tilde, "w": via_w, "na": via_na},
            })
    return not disagreements, {"checked": checked, "disagreements": disagreements}


def _run_axioms(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    plan = rc.sampler.axiom_plan(
        n_ideals=int(params.get("samples", 8)),
        n_scalars=int(params.get("scalars", 3)),
        n_probes=int(params.get("probes", 8)),
    )
    report = check_axioms(star, plan)
    return report["pass"], _json_safe(report)


def _run_eab(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    triples = []
    for row in params.get("triples", []):
        triples.append(tuple(parse_ideal(t, rc.ctx) for t in row))
    for _ in range(int(params.get("samples", 0))):
        triples.append((rc.sampler.integral_ideal(), rc.sampler.integral_ideal(),
                        rc.sampler.integral_ideal()))
    report = check_eab(star, triples)
    expect = params.get("expect", "pass")
    ok = report["pass"] if expect == "pass" else (not report["pass"])
    return ok, _json_safe(report)


def _run_na_kr_chain(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    tilde = _get_op(rc, params["tilde"]) if "tilde" in params else None
    budget = _budget(rc, params.get("budget"))
    n = int(params.get("samples", 20))
    elems = rc.sampler.fn_elements(n)
    stats = {"samples": n, "na_yes": 0, "violations": [], "unknown_kr": 0}
    for e in elems:
        v1 = na_member(star, e).verdict
        if tilde is not None:
            v2 = na_member(tilde, e).verdict
            if "unknown" not in (v1, v2) and v1 != v2:
                stats["violations"].append({"element": e.render(), "stage": "tilde",
                                            "verdicts": [v1, v2]})
                continue
        if v1 == "yes":
            stats["na_yes"] += 1
            kr = kr_member(star, e, budget).verdict
            if kr == "no":
                stats["violations"].append({"element": e.render(), "stage": "kr"})
            elif kr == "unknown":
                stats["unknown_kr"] += 1
    ok = not stats["violations"] and stats["na_yes"] >= int(params.get("min_yes", 1))
    return ok, _json_safe(stats)


def _run_valuation_overring(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    V = rc.valuations[params["valuation"]]
    Fs = [parse_ideal(t, rc.ctx) for t in params.get("fsamples", [])]
    Fs.extend(rc.sampler.integral_ideal() for _ in range(int(params.get("samples", 4))))
    # Failure witnesses divide by elements outside the trace primes; seed the
    # saturation pool with every declared prime generator, deterministically.
    sat = rc.sampler.probes(8)
    for P in rc.primes.values():
        sat.extend(g for g in P.ideal.gens_elems())
    out = is_star_valuation_overring(V, star, Fs, sat)
    ok = out["holds"] == _EXPECT_BOOL[params.get("expected", True)]
    return ok, _json_safe(out)


def _run_bezout_combine(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star = _get_op(rc, params["op"])
    f = parse_fn_element(params["f"], rc.ctx)
    g = parse_fn_element(params["g"], rc.ctx)
    if _fn_deg(rc, f.den) > 0 or _fn_deg(rc, g.den) > 0:
        raise ScenarioError("bezout-combine takes polynomials")
    out = kr_bezout_combine(f.num, g.num, star, _budget(rc, params.get("budget")))
    ok = (out["content_sum"] and out["f_over_h"].verdict == "yes"
          and out["g_over_h"].verdict == "yes")
    return ok, _json_safe(out)


def _run_na_equality(rc: RunContext, params: dict) -> tuple[bool, dict]:
    star1 = _get_op(rc, params["op1"])
    star2 = _get_op(rc, params["op2"])
    candidates = _candidate_list(rc, params.get("candidates"))
    samples = rc.sampler.fn_elements(int(params.get("samples", 10)))
    out = na_equal_iff_M(star1, star2, candidates, samples)
    expected = params.get("expected", "equal")
    if expected == "equal":
        ok = out["equal"] and out.get("sampled_agreement", False)
    else:
        ok = (not out["equal"]) and out.get("separator") is not None
    return ok, _json_safe(out)


_EXECUTORS = {
    "closure-equals": _run_closure_equals,
    "ideal-equals": _run_ideal_equals,
    "membership": _run_membership,
    "m-set-equals": _run_m_set_equals,
    "op-order": _run_op_order,
    "tilde-routes": _run_tilde_routes,
    "axioms": _run_axioms,
    "eab": _run_eab,
    "na-kr-chain": _run_na_kr_chain,
    "valuation-overring": _run_valuation_overring,
    "bezout-combine": _run_bezout_combine,
    "na-equality": _run_na_equality,
}


# ---------------------------------------------------------------------------
# Runner and report
# ---------------------------------------------------------------------------


def run_scenario(source, seed: int | None = None) -> Report:
    scenario = source if isinstance(source, Scenario) else load_scenario(source)
    effective_seed = scenario.seed if seed is None else seed
    rc = build_context(scenario, effective_seed)
    results = []
    for assertion in scenario.assertions:
        executor = _EXECUTORS.get(assertion.kind)
        if executor is None:
            raise ScenarioError(f"unknown assertion kind {assertion.kind!r}")
        start = time.perf_counter()
        try:
            ok, witness = executor(rc, assertion.params)
            verdict = "pass" if ok else "fail"
        except ScenarioError:
            raise
        except (ExpressionError, KeyError) as exc:
            raise ScenarioError(f"assertion {assertion.id!r} is malformed: {exc}") from exc
        except (OperationError, DomainError, ValueError) as exc:
            verdict, witness = "error", {"error": str(exc)}
        millis = int((time.perf_counter() - start) * 1000)
        results.append(AssertionResult(assertion.id, assertion.kind, verdict,
                                       witness, millis, assertion.provenance))
    summary = {
        "total": len(results),
        "passed": sum(1 for r in results if r.verdict == "pass"),
        "failed": sum(1 for r in results if r.verdict == "fail"),
        "errors": sum(1 for r in results if r.verdict == "error"),
    }
    return Report(scenario.name, effective_seed, __version__, results, summary)


def report_to_dict(report: Report) -> dict:
    return {
        "schema": "semistar-report/1",
        "scenario": report.scenario,
        "seed": report.seed,
        "tool_version": report.tool_version,
        "assertions": [
            {
                "id": r.id,
                "kind": r.kind,
                "verdict": r.verdict,
                "witness": _json_safe(r.witness),
                "millis": r.millis,
                "provenance": r.provenance,
            }
            for r in report.results
        ],
        "summary": dict(report.summary),
    }


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True)
    lines = [f"scenario {report.scenario} (seed {report.seed}, semistar {report.tool_version})"]
    for r in report.results:
        mark = {"pass": "PASS", "fail": "FAIL", "error": "ERR "}[r.verdict]
        lines.append(f"  [{mark}] {r.id:<14} {r.kind:<20} {r.millis:>5} ms")
        if r.verdict != "pass" and r.witness:
            payload = json.dumps(_json_safe(r.witness), sort_keys=True)
            lines.append(f"         {payload[:240]}")
    s = report.summary
    lines.append(f"  {s['passed']}/{s['total']} passed, {s['failed']} failed, "
                 f"{s['errors']} errors")
    return "\n".join(lines)
