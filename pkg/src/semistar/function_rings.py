"""Membership calculi for the Nagata and Kronecker function rings.

Both rings live in K(Xt) for one auxiliary variable (rendered X† in
reports), and neither is ever presented by generators: everything runs
through membership procedures.

* Nagata ring: f/g belongs iff the colon (g : f) meets the multiplicative
  set of polynomials with star-trivial content.  On polynomial backends
  the colon is a Groebner computation in one extra variable and the
  content-sum trick turns "meets the set" into a single closure test,
  with an explicit degree-spread witness on success.
* Kronecker ring: f/g belongs iff some multiplier h makes the content
  products comparable under the closure.  Valuation-family operations
  decide this exactly by value comparison; e.a.b. operations need only
  h = 1; otherwise a budgeted witness search produces certified yes
  answers, scenario valuations produce certified no answers, and the
  remaining cases are an explicit "unknown".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .domains import (
    Domain,
    DomainError,
    FractionalIdeal,
    IdealOracle,
    PolyRat,
    PrimeIdeal,
    ValuationSpec,
    valuation_value,
)
from .ideals import PolyIdeal
from .newton import newton_closure_monomial
from .operations import (
    ClosureResult,
    OperationError,
    SemistarOp,
    _colon_elem_in_D,
    closure_contains_ideal,
    finite_type_closure,
    quasi_star_spectrum,
    star_a_lower,
)
from .polys import Poly
from .quadratic import QuadElem

FN_SYMBOL = "X†"


class FunctionRingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Function-ring polynomials
# ---------------------------------------------------------------------------
#
# Polynomial backends store f in D[Xt] as a Poly with one extra (last) slot.
# Lattice and integer backends store f as a dict {Xt-power: coefficient}.


def lift_poly(p: Poly) -> Poly:
    return p.append_vars(1)


def fn_variable(domain: Domain) -> Poly:
    return Poly.variable(domain.nvars + 1, domain.nvars)


def fn_is_zero(domain: Domain, f) -> bool:
    if domain.kind == "poly_local":
        return f.is_zero()
    return not f


def fn_xt_degree(domain: Domain, f) -> int:
    if domain.kind == "poly_local":
        return f.degree_in(domain.nvars)
    return max(f) if f else -1


def fn_coeffs(domain: Domain, f) -> dict:
    """Coefficients of f by Xt-power (backend elements / coefficient polys)."""
    if domain.kind == "poly_local":
        out: dict[int, Poly] = {}
        for exp, c in f.terms.items():
            k = exp[-1]
            body = Poly(domain.nvars, {exp[:-1]: c})
            out[k] = out.get(k, Poly.zero(domain.nvars)) + body
        return {k: v for k, v in out.items() if not v.is_zero()}
    return dict(f)


def fn_from_coeffs(domain: Domain, coeffs: dict):
    if domain.kind == "poly_local":
        total = Poly.zero(domain.nvars + 1)
        xt = fn_variable(domain)
        for k, c in coeffs.items():
            total = total + lift_poly(c) * xt ** k
        return total
    if domain.kind == "quadratic_order":
        return {k: c for k, c in coeffs.items() if not c.is_zero()}
    return {k: Fraction(c) for k, c in coeffs.items() if c != 0}


def fn_mul(domain: Domain, a, b):
    if domain.kind == "poly_local":
        return a * b
    out: dict = {}
    for i, ca in a.items():
        for j, cb in b.items():
            prev = out.get(i + j)
            term = ca * cb
            out[i + j] = term if prev is None else prev + term
    return fn_from_coeffs(domain, out)


def fn_render(domain: Domain, f) -> str:
    coeffs = fn_coeffs(domain, f)
    if not coeffs:
        return "0"
    parts = []
    for k in sorted(coeffs):
        c = coeffs[k]
        if domain.kind == "poly_local":
            cs = c.to_str(domain.var_names)
        else:
            cs = domain.elem_render(c)
        if k == 0:
            parts.append(cs)
        else:
            power = FN_SYMBOL if k == 1 else f"{FN_SYMBOL}^{k}"
            parts.append(f"({cs})*{power}")
    return " + ".join(parts)


def content_ideal(domain: Domain, f) -> FractionalIdeal:
    """Ideal generated by the coefficients of a nonzero function-ring poly."""
    coeffs = fn_coeffs(domain, f)
    if not coeffs:
        raise FunctionRingError("content of the zero polynomial")
    if domain.kind == "poly_local":
        return domain.frac_from_polys(list(coeffs.values()))
    return domain.frac_from_elems(list(coeffs.values()))


def fn_coeffs_in_D(domain: Domain, f) -> bool:
    coeffs = fn_coeffs(domain, f)
    if domain.kind == "poly_local":
        return True  # stored over the polynomial ring already
    return all(domain.elem_in_D(c) for c in coeffs.values())


def _spread_from_fn_gens(domain: Domain, gens: list):
    """Degree-spread combination of (n+1)-variable polynomials with
    pairwise-disjoint Xt supports, so contents add up."""
    total = Poly.zero(domain.nvars + 1)
    xt = fn_variable(domain)
    offset = 0
    for g in gens:
        total = total + g * xt ** offset
        offset += g.degree_in(domain.nvars) + 1
    return total


def spread_from_ideal(domain: Domain, H: FractionalIdeal):
    """Function poly with content exactly H (H integral)."""
    if domain.kind == "poly_local":
        coeffs = {i: g for i, g in enumerate(H.num.gens)}
        f = fn_from_coeffs(domain, coeffs)
        if not H.den.is_constant() or H.den.constant_coeff() != 1:
            raise FunctionRingError("spread needs a denominator-free ideal")
        return f
    gens = H.gens_elems()
    return fn_from_coeffs(domain, {i: g for i, g in enumerate(gens)})


@dataclass
class RationalFunctionElem:
    """f/g in K(Xt), cleared so both parts have coefficients in D."""

    domain: Domain
    num: object
    den: object

    def render(self) -> str:
        return f"({fn_render(self.domain, self.num)}) / ({fn_render(self.domain, self.den)})"


def fn_elem(domain: Domain, num, den) -> RationalFunctionElem:
    if fn_is_zero(domain, den):
        raise FunctionRingError("zero denominator")
    if domain.kind != "poly_local":
        # Clear coefficient denominators on both sides.
        scale = 1
        for part in (num, den):
            for c in fn_coeffs(domain, part).values():
                if domain.kind == "quadratic_order":
                    scale = _lcm(scale, c.x.denominator)
                    scale = _lcm(scale, c.y.denominator)
                else:
                    scale = _lcm(scale, Fraction(c).denominator)
        if scale != 1:
            num = _fn_scale(domain, num, scale)
            den = _fn_scale(domain, den, scale)
    return RationalFunctionElem(domain, num, den)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _fn_scale(domain, f, scale: int):
    return fn_from_coeffs(domain, {k: c * scale for k, c in fn_coeffs(domain, f).items()})


def element_over(domain: Domain, z, g) -> RationalFunctionElem:
    """The rational function z/g for a field element z."""
    if domain.kind == "poly_local":
        num = lift_poly(z.num)
        den = fn_mul(domain, lift_poly(z.den), g)
        return fn_elem(domain, num, den)
    return fn_elem(domain, fn_from_coeffs(domain, {0: z}), g)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass
class MembershipCertificate:
    verdict: str  # "yes" | "no" | "unknown"
    route: str
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.verdict == "yes"


# ---------------------------------------------------------------------------
# The multiplicative set N(star)
# ---------------------------------------------------------------------------


def in_multiplicative_set_N(star: SemistarOp, h) -> bool:
    """c(h)^star = D^star, tested as membership of 1 in the closure of the
    (integral) content."""
    domain = star.domain
    if fn_is_zero(domain, h):
        raise FunctionRingError("zero polynomial has no content")
    if not fn_coeffs_in_D(domain, h):
        raise FunctionRingError("polynomial is not over D")
    C = content_ideal(domain, h)
    return star.apply(C).oracle.contains(domain.one())


# ---------------------------------------------------------------------------
# Nagata membership
# ---------------------------------------------------------------------------


def na_member(star: SemistarOp, elem: RationalFunctionElem) -> MembershipCertificate:
    domain = star.domain
    f, g = elem.num, elem.den
    if fn_is_zero(domain, g):
        raise FunctionRingError("zero denominator")
    if fn_is_zero(domain, f):
        return MembershipCertificate("yes", "zero")
    # Fast route: the denominator itself lies in N(star).
    if in_multiplicative_set_N(star, g):
        return MembershipCertificate(
            "yes", "denominator-in-N", {"h": fn_render(domain, g)}
        )
    if domain.kind == "poly_local":
        return _na_member_poly(star, f, g)
    return _na_member_lattice(star, f, g)


def _na_member_poly(star: SemistarOp, f: Poly, g: Poly) -> MembershipCertificate:
    domain = star.domain
    J = PolyIdeal([g]).colon_poly(f)
    gens = list(J.groebner())
    contents: list[Poly] = []
    for j in gens:
        contents.extend(fn_coeffs(domain, j).values())
    C = domain.frac_from_polys(contents)
    if star.apply(C).oracle.contains(domain.one()):
        h = _spread_from_fn_gens(domain, gens)
        # The witness re-verifies: content additivity and h*f in (g).
        if not content_ideal(domain, h).eq(C):
            raise FunctionRingError("degree spread failed to add contents")
        if not PolyIdeal([g]).contains(h * f):
            raise FunctionRingError("colon witness does not clear the denominator")
        return MembershipCertificate("yes", "colon-content", {"h": fn_render(domain, h)})
    return MembershipCertificate(
        "no", "colon-content", {"colon_content": C.render()}
    )


def _na_member_lattice(star: SemistarOp, f, g) -> MembershipCertificate:
    """Lattice/integer backends: exact on constant denominators (after a
    K[Xt]-reduction) via the coefficientwise colon rule; unknown beyond."""
    domain = star.domain
    f, g = _reduce_fn_pair(domain, f, g)
    gdeg = fn_xt_degree(domain, g)
    if gdeg == 0:
        u = fn_coeffs(domain, g)[0]
        one = domain.one()
        witness_parts = []
        for k, c in sorted(fn_coeffs(domain, f).items()):
            z = c / u if domain.kind == "quadratic_order" else Fraction(c) / Fraction(u)
            if domain.elem_is_zero(z):
                continue
            C = _colon_elem_in_D(domain, domain.one_ideal(), z)
            if not star.apply(C).oracle.contains(one):
                return MembershipCertificate(
                    "no", "coefficientwise", {"coefficient_power": k}
                )
            witness_parts.append(k)
        return MembershipCertificate("yes", "coefficientwise",
                                     {"coefficients": witness_parts})
    if in_multiplicative_set_N(star, g):
        return MembershipCertificate("yes", "denominator-in-N",
                                     {"h": fn_render(domain, g)})
    return MembershipCertificate(
        "unknown", "lattice-backend",
        {"note": "general colon over this backend is outside the exact fragment"},
    )


def _reduce_fn_pair(domain: Domain, f, g):
    """Cancel the K[Xt]-gcd of numerator and denominator (lattice backends)."""
    fd = fn_coeffs(domain, f)
    gd = fn_coeffs(domain, g)

    def to_field(d):
        deg = max(d)
        return [d.get(i, _zero(domain)) for i in range(deg + 1)]

    def _zero(dom):
        return dom.elem(0) if dom.kind == "quadratic_order" else Fraction(0)

    a, b = to_field(fd), to_field(gd)
    g0 = _univ_gcd(domain, a, b)
    if len(g0) > 1:
        a = _univ_divide(domain, a, g0)
        b = _univ_divide(domain, b, g0)
    num = fn_from_coeffs(domain, dict(enumerate(a)))
    den = fn_from_coeffs(domain, dict(enumerate(b)))
    cleared = fn_elem(domain, num, den)
    return cleared.num, cleared.den


def _univ_gcd(domain, a: list, b: list) -> list:
    a, b = list(a), list(b)
    while any(not _is0(domain, c) for c in b):
        a, b = b, _univ_mod(domain, a, b)
    return _strip(domain, a)


def _is0(domain, c) -> bool:
    return c.is_zero() if domain.kind == "quadratic_order" else Fraction(c) == 0


def _strip(domain, a: list) -> list:
    while a and _is0(domain, a[-1]):
        a.pop()
    return a


def _univ_mod(domain, a: list, b: list) -> list:
    a = _strip(domain, list(a))
    b = _strip(domain, list(b))
    while len(a) >= len(b) and a:
        lead = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - lead * c
        a = _strip(domain, a)
    return a


def _univ_divide(domain, a: list, b: list) -> list:
    a = _strip(domain, list(a))
    b = _strip(domain, list(b))
    out = [None] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        lead = a[-1] / b[-1]
        shift = len(a) - len(b)
        out[shift] = lead
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - lead * c
        a = _strip(domain, a)
    zero = domain.elem(0) if domain.kind == "quadratic_order" else Fraction(0)
    return [c if c is not None else zero for c in out]


# ---------------------------------------------------------------------------
# Kronecker membership
# ---------------------------------------------------------------------------


def kr_member(star: SemistarOp, elem: RationalFunctionElem,
              budget: dict | None = None) -> MembershipCertificate:
    domain = star.domain
    budget = budget or {}
    f, g = elem.num, elem.den
    if fn_is_zero(domain, g):
        raise FunctionRingError("zero denominator")
    if fn_is_zero(domain, f):
        return MembershipCertificate("yes", "zero")
    cf = content_ideal(domain, f)
    cg = content_ideal(domain, g)

    # Valuation families decide membership by value comparison: the ring is
    # the intersection of the trivial extensions W(Xt).
    if star.params.get("kind") == "valfam":
        for V in star.params["valuations"]:
            vf = _fn_min_value(domain, V, f)
            vg = _fn_min_value(domain, V, g)
            if vf < vg:
                return MembershipCertificate("no", "valuation-family",
                                             {"obstruction": V.name})
        return MembershipCertificate("yes", "valuation-family")

    # e.a.b. operations: h = 1 suffices by cancellation, in both directions.
    if star.flags.eab_claimed:
        if closure_contains_ideal(star, cg, cf):
            return MembershipCertificate("yes", "eab-h1", {"h": "1"})
        return MembershipCertificate("no", "eab-h1")

    # General operations: h = 1 first, then a budgeted multiplier search.
    if closure_contains_ideal(star, cg, cf):
        return MembershipCertificate("yes", "h1", {"h": "1"})
    power = budget.get("power", 2)
    pool: list[FractionalIdeal] = [cf, cg, cf.add(cg)]
    pool.extend(budget.get("aux", []))
    seen: list[FractionalIdeal] = []
    frontier = [None]
    for _ in range(power):
        nxt = []
        for base in frontier:
            for A in pool:
                H = A if base is None else base.mul(A)
                if any(H.eq(done) for done in seen):
                    continue
                seen.append(H)
                nxt.append(H)
                if closure_contains_ideal(star, cg.mul(H), cf.mul(H)):
                    h = spread_from_ideal(domain, H)
                    return MembershipCertificate(
                        "yes", "witness-search", {"h": fn_render(domain, h)}
                    )
        frontier = nxt

    for V in budget.get("obstructions", ()):
        # Only star-valuation overrings are sound obstructions.
        from .operations import is_star_valuation_overring

        check = is_star_valuation_overring(V, star, [cf, cg])
        if not check["holds"]:
            continue
        if _fn_min_value(domain, V, f) < _fn_min_value(domain, V, g):
            return MembershipCertificate("no", "valuation-obstruction",
                                         {"obstruction": V.name})
    return MembershipCertificate("unknown", "budget-exhausted",
                                 {"pool": len(seen)})


def _fn_min_value(domain: Domain, V: ValuationSpec, f):
    vals = []
    for c in fn_coeffs(domain, f).values():
        z = PolyRat(c, Poly.const(domain.nvars, 1)) if domain.kind == "poly_local" else c
        vals.append(valuation_value(domain, V, z))
    return min(vals)


# ---------------------------------------------------------------------------
# Extension / contraction through the function rings
# ---------------------------------------------------------------------------


def extend_contract_na(star: SemistarOp, E: FractionalIdeal) -> IdealOracle:
    """Membership in E*Na(D, star) cap K, via the function-ring colon.

    On polynomial backends the colon runs in D[Xt] with the content-sum
    reduction; on lattice backends the colon of a constant reduces
    coefficientwise to (E : z) cap D.  Exact either way.
    """
    domain = star.domain
    one = domain.one()

    if domain.kind == "poly_local":
        lifted = PolyIdeal([lift_poly(p) for p in E.num.gens])
        den_l = lift_poly(E.den)

        def member(z: PolyRat) -> bool:
            if z.is_zero():
                return True
            J = lifted.mul_poly(lift_poly(z.den)).colon_poly(lift_poly(z.num) * den_l)
            contents: list[Poly] = []
            for j in J.groebner():
                contents.extend(fn_coeffs(domain, j).values())
            C = domain.frac_from_polys(contents)
            return star.apply(C).oracle.contains(one)

    else:

        def member(z) -> bool:
            if domain.elem_is_zero(z):
                return True
            C = _colon_elem_in_D(domain, E, z)
            return star.apply(C).oracle.contains(one)

    return IdealOracle(domain, member, presentation=None, grade="exact",
                       tag=f"na-extension({star.name})")


def kr_content_poly(domain: Domain, E: FractionalIdeal):
    """A polynomial f_E with content exactly the numerator ideal of E."""
    if domain.kind == "poly_local":
        return fn_from_coeffs(domain, {i: g for i, g in enumerate(E.num.gens)})
    return fn_from_coeffs(domain, {i: g for i, g in enumerate(E.num.basis_elems())})


def extend_contract_kr(star: SemistarOp, E: FractionalIdeal,
                       budget: dict | None = None) -> IdealOracle:
    """Membership z in E^(star_a) = E*Kr(D, star) cap K, via z/f_E in Kr.

    The oracle also carries the budgeted lower-bound presentation; when the
    budget names a matching upper bound (the monomial closure or t) and the
    two meet, the presentation is exact.
    """
    domain = star.domain
    budget = dict(budget or {})
    budget.setdefault("power", 2)
    integral, scale = _integral_and_scale(E)
    f_E = kr_content_poly(domain, integral)

    lower = None
    witnesses: list = []
    try:
        res = star_a_lower(star, integral, {"power": budget["power"],
                                            "aux": budget.get("aux", [])})
        lower = res.oracle.presentation
        witnesses = res.witnesses
    except OperationError:
        lower = None

    upper = _upper_bound_ideal(star, integral, budget)
    exact_presentation = None
    if lower is not None and upper is not None and lower.eq(upper):
        exact_presentation = lower

    def member(z) -> bool:
        zz = _elem_unscale(domain, z, scale)
        if exact_presentation is not None:
            return exact_presentation.contains_elem(zz)
        if lower is not None and lower.contains_elem(zz):
            return True
        cert = kr_member(star, element_over(domain, zz, f_E), budget)
        return cert.verdict == "yes"

    grade = "exact" if (exact_presentation is not None or star.flags.eab_claimed) else "lower-bound"
    presentation = None
    if exact_presentation is not None:
        presentation = exact_presentation.scale(scale)
    elif lower is not None:
        presentation = lower.scale(scale)
    oracle = IdealOracle(domain, lambda z: member(z), presentation=presentation,
                         grade=grade, tag=f"kr-extension({star.name})",
                         note="budget " + str(budget.get("power")))
    oracle.witnesses = witnesses  # type: ignore[attr-defined]
    return oracle


def _integral_and_scale(E: FractionalIdeal):
    from .operations import _split_scale

    return _split_scale(E)[0], _split_scale(E)[1]


def _elem_unscale(domain: Domain, z, scale):
    if domain.kind == "integers":
        return Fraction(z) / Fraction(scale)
    return z / scale


def _upper_bound_ideal(star: SemistarOp, E: FractionalIdeal, budget: dict):
    kind = budget.get("upper")
    domain = star.domain
    if kind == "newton" and domain.kind == "poly_local":
        if all(g.is_monomial() for g in E.num.gens):
            closed = newton_closure_monomial(E.num)
            return domain.frac_from_polys(list(closed.gens))
        return None
    if kind == "t":
        from .operations import v_star

        return finite_type_closure(v_star(domain)).apply(E).oracle.presentation
    return None


# ---------------------------------------------------------------------------
# Maximal-trace and Nagata-equality checks
# ---------------------------------------------------------------------------


def na_maximal_trace(star: SemistarOp, candidates: Sequence[PrimeIdeal],
                     probes: Sequence = ()) -> dict:
    """Quasi-maximal primes of star_f among candidates, each verified two
    ways against the function ring: a content-in-Q polynomial misses N(star)
    and the extension of Q misses 1."""
    if not candidates:
        raise FunctionRingError("empty candidate list")
    domain = star.domain
    spectrum = quasi_star_spectrum(finite_type_closure(star), candidates, probes=probes)
    verifications = {}
    by_name = {P.name: P for P in candidates}
    for name in spectrum.maximals:
        Q = by_name[name]
        hq = spread_from_ideal(domain, _integral_ideal(Q.ideal))
        outside_N = not in_multiplicative_set_N(star, hq)
        misses_one = not extend_contract_na(star, Q.ideal).contains(domain.one())
        verifications[name] = {
            "content_poly_outside_N": outside_N,
            "extension_misses_1": misses_one,
        }
    return {
        "maximals": spectrum.maximals,
        "quasi": spectrum.quasi,
        "excluded": spectrum.excluded,
        "verifications": verifications,
        "label": spectrum.label,
    }


def _integral_ideal(E: FractionalIdeal) -> FractionalIdeal:
    domain = E.domain
    if domain.kind == "poly_local":
        return domain.frac_from_polys(list(E.num.gens))
    return E


def kr_bezout_combine(f, g, star: SemistarOp, budget: dict | None = None) -> dict:
    """h = f + Xt^N * g with N past deg f, so contents add; certificates that
    f/h and g/h lie in Kr plus the explicit module combination."""
    domain = star.domain
    if fn_is_zero(domain, f) or fn_is_zero(domain, g):
        raise FunctionRingError("bezout combine needs nonzero inputs")
    N = fn_xt_degree(domain, f) + 1
    shift = fn_from_coeffs(domain, {N: _one_coeff(domain)})
    h = _fn_add(domain, f, fn_mul(domain, g, shift))
    cert_f = kr_member(star, fn_elem(domain, f, h), budget)
    cert_g = kr_member(star, fn_elem(domain, g, h), budget)
    return {
        "h": fn_render(domain, h),
        "offset": N,
        "f_over_h": cert_f,
        "g_over_h": cert_g,
        "combination": f"h = f + {FN_SYMBOL}^{N}*g",
        "content_sum": content_ideal(domain, h).eq(
            content_ideal(domain, f).add(content_ideal(domain, g))
        ),
    }


def _one_coeff(domain: Domain):
    if domain.kind == "poly_local":
        return Poly.const(domain.nvars, 1)
    if domain.kind == "quadratic_order":
        return domain.elem(1)
    return Fraction(1)


def _fn_add(domain: Domain, a, b):
    if domain.kind == "poly_local":
        return a + b
    out = dict(fn_coeffs(domain, a))
    for k, c in fn_coeffs(domain, b).items():
        prev = out.get(k)
        out[k] = c if prev is None else prev + c
    return fn_from_coeffs(domain, out)


def na_equal_iff_M(star1: SemistarOp, star2: SemistarOp,
                   candidates: Sequence[PrimeIdeal],
                   fn_samples: Sequence[RationalFunctionElem] = ()) -> dict:
    """Nagata rings agree iff the quasi-maximal traces agree; disagreement is
    witnessed by a separating rational function with denominator content in
    a symmetric-difference prime."""
    domain = star1.domain
    m1 = quasi_star_spectrum(finite_type_closure(star1), candidates)
    m2 = quasi_star_spectrum(finite_type_closure(star2), candidates)
    s1, s2 = set(m1.maximals), set(m2.maximals)
    result = {"m1": sorted(s1), "m2": sorted(s2), "label": m1.label}
    if s1 == s2:
        agree = all(
            na_member(star1, e).verdict == na_member(star2, e).verdict for e in fn_samples
        )
        result.update({"equal": True, "sampled_agreement": agree, "separator": None})
        return result
    by_name = {P.name: P for P in candidates}
    separator = None
    for name in sorted(s1 ^ s2):
        Q = by_name[name]
        hq = spread_from_ideal(domain, _integral_ideal(Q.ideal))
        one_fn = fn_from_coeffs(domain, {0: _one_coeff(domain)})
        candidate = fn_elem(domain, one_fn, hq)
        v1 = na_member(star1, candidate).verdict
        v2 = na_member(star2, candidate).verdict
        if v1 != v2 and "unknown" not in (v1, v2):
            separator = {
                "element": candidate.render(),
                "verdicts": {star1.name: v1, star2.name: v2},
                "prime": name,
            }
            break
    result.update({"equal": False, "separator": separator})
    return result
