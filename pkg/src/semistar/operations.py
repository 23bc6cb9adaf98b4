"""Semistar operations: builtins, derived operators, property checkers.

A ``SemistarOp`` wraps a closure procedure on *integral* ideals; scaling
by the axiom (zE)^star = z E^star extends it to arbitrary fractional
ideals, so every builtin only ever sees a denominator-free input.  The
closure returns an :class:`IdealOracle` -- exact membership always, a
finite presentation whenever the operation supports one.

Containment between closures is decided through the absorption trick:
A^star inside B^star iff A inside B^star, which needs only membership of
the generators of A.  This keeps e.a.b. checks and closure comparisons
exact even for operations without presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .domains import (
    Domain,
    DomainError,
    FractionalIdeal,
    IdealOracle,
    IntegerDomain,
    PolyLocalDomain,
    PolyRat,
    PrimeIdeal,
    QuadraticOrderDomain,
    ValuationSpec,
    valuation_min_over_ideal,
    valuation_value,
)
from .ideals import PolyIdeal, poly_gcd_many
from .newton import newton_closure_monomial
from .polys import DEGREVLEX, Poly


class OperationError(ValueError):
    pass


@dataclass(frozen=True)
class OpFlags:
    finite_type: bool = False
    stable_claimed: bool = False
    eab_claimed: bool = False


@dataclass
class ClosureResult:
    oracle: IdealOracle
    witnesses: list = field(default_factory=list)


class SemistarOp:
    """Named closure operator on fractional ideals of one backend."""

    def __init__(
        self,
        name: str,
        domain: Domain,
        closure_integral: Callable[[FractionalIdeal], ClosureResult],
        flags: OpFlags,
        grade: str = "exact",
        fixes_D: bool = False,
        params: dict | None = None,
    ):
        self.name = name
        self.domain = domain
        self._closure_integral = closure_integral
        self.flags = flags
        self.grade = grade
        self.fixes_D = fixes_D
        self.params = params or {}

    def __repr__(self) -> str:
        return f"SemistarOp({self.name} on {self.domain.name})"

    def apply(self, E: FractionalIdeal) -> ClosureResult:
        """E^star, computed on the integral part and rescaled (axiom star_1)."""
        integral, scale = _split_scale(E)
        result = self._closure_integral(integral)
        return ClosureResult(_scale_oracle(result.oracle, scale), result.witnesses)


def apply_star(star: SemistarOp, E: FractionalIdeal) -> ClosureResult:
    return star.apply(E)


def _split_scale(E: FractionalIdeal):
    """Write E = scale * E0 with E0 integral and denominator-free."""
    dom = E.domain
    if dom.kind == "poly_local":
        one = Poly.const(dom.nvars, 1)
        return FractionalIdeal(dom, E.num, one), PolyRat(one, E.den)
    if dom.kind == "quadratic_order":
        return FractionalIdeal(dom, E.num, 1), dom.elem(Fraction(1, E.den))
    # integers: principal, scale by the generator itself
    return dom.one_ideal(), E.num


def _elem_div(domain: Domain, z, scale):
    if domain.kind == "integers":
        return Fraction(z) / Fraction(scale)
    return z / scale


def _scale_oracle(oracle: IdealOracle, scale) -> IdealOracle:
    dom = oracle.domain
    if dom.kind == "integers" and Fraction(scale) == 1:
        return oracle
    if dom.kind == "poly_local" and scale.num == scale.den:
        return oracle
    if dom.kind == "quadratic_order" and scale == dom.elem(1):
        return oracle
    if oracle.all_K:
        return oracle

    def member(z):
        return oracle.member(_elem_div(dom, z, scale))

    pres = oracle.presentation.scale(scale) if oracle.presentation is not None else None
    return IdealOracle(dom, member, presentation=pres, grade=oracle.grade,
                       all_K=oracle.all_K, tag=oracle.tag, note=oracle.note)


# ---------------------------------------------------------------------------
# Closure containment via absorption: A^star <= B^star iff A <= B^star
# ---------------------------------------------------------------------------


def closure_contains_ideal(star: SemistarOp, big: FractionalIdeal, small: FractionalIdeal) -> bool:
    """Exact test small^star inside big^star (generators into the big oracle)."""
    oracle = star.apply(big).oracle
    return all(oracle.contains(g) for g in small.gens_elems())


def closures_equal(star: SemistarOp, A: FractionalIdeal, B: FractionalIdeal) -> bool:
    return closure_contains_ideal(star, A, B) and closure_contains_ideal(star, B, A)


def oracle_subset(o1: IdealOracle, o2: IdealOracle, probes: Sequence) -> tuple[bool, object, str]:
    """o1-set inside o2-set.

    Exact when o1 carries an exact presentation (its generators decide the
    inclusion).  A lower-bound presentation still supplies certified members
    of o1, so its generators can refute the inclusion; a pass is then only
    sample-relative.
    """
    if o2.all_K:
        return True, None, "exact"
    candidates = []
    if o1.presentation is not None:
        candidates.extend(o1.presentation.gens_elems())
    candidates.extend(probes)
    for z in candidates:
        if o1.contains(z) and not o2.contains(z):
            return False, z, "exact"
    certified = o1.presentation is not None and o1.grade == "exact"
    return True, None, "exact" if certified else "sampled"


# ---------------------------------------------------------------------------
# Builtins
# ---------------------------------------------------------------------------


def identity_star(domain: Domain, name: str = "d") -> SemistarOp:
    def closure(I: FractionalIdeal) -> ClosureResult:
        return ClosureResult(IdealOracle.from_ideal(I, tag="identity"))

    return SemistarOp(name, domain, closure,
                      OpFlags(finite_type=True, stable_claimed=True),
                      fixes_D=True, params={"kind": "identity"})


def v_star(domain: Domain, name: str = "v") -> SemistarOp:
    def closure(I: FractionalIdeal) -> ClosureResult:
        return ClosureResult(IdealOracle.from_ideal(I.dual().dual(), tag="double-dual"))

    return SemistarOp(name, domain, closure, OpFlags(), fixes_D=True,
                      params={"kind": "v"})


def trivial_star(domain: Domain, name: str = "triv") -> SemistarOp:
    def closure(I: FractionalIdeal) -> ClosureResult:
        return ClosureResult(IdealOracle.whole_field(domain))

    return SemistarOp(name, domain, closure, OpFlags(finite_type=True, stable_claimed=True),
                      params={"kind": "trivial"})


def _reject_trivial(star: SemistarOp, what: str):
    if star.params.get("kind") == "trivial":
        raise OperationError(f"{what} is not defined for the trivial operation")


def spectral_star(domain: Domain, primes: Sequence[PrimeIdeal], name: str | None = None,
                  params: dict | None = None) -> SemistarOp:
    primes = list(primes)
    if not primes:
        raise OperationError("spectral operation needs a nonempty prime set")
    label = name or f"spectral([{','.join(p.name for p in primes)}])"

    def closure(I: FractionalIdeal) -> ClosureResult:
        member = _multi_prime_member(domain, I, primes)
        presentation = None
        if (
            len(primes) == 1
            and getattr(domain, "center", None) == ("monomial",)
            and primes[0].certificate == "monomial-maximal"
        ):
            presentation = I
        return ClosureResult(IdealOracle(domain, member, presentation=presentation,
                                         grade="exact", tag=f"spectral:{label}"))

    merged = {"kind": "spectral", "primes": primes}
    merged.update(params or {})
    return SemistarOp(label, domain, closure,
                      OpFlags(finite_type=True, stable_claimed=True),
                      params=merged)


def extension_star(domain: Domain, primes: Sequence[PrimeIdeal] | None,
                   name: str | None = None) -> SemistarOp:
    """E -> E*T for T the localization at the complement of the prime union
    (T = K when primes is None)."""
    if primes is None:
        op = trivial_star(domain, name or "extend(K)")
        op.params["kind"] = "extend"
        op.params["primes"] = None
        return op
    primes = list(primes)
    label = name or f"extend([{','.join(p.name for p in primes)}])"

    def closure(I: FractionalIdeal) -> ClosureResult:
        # Membership in E*T reduces to the colon escaping every prime of the
        # complement set at once (prime avoidance on the colon ideal).
        member = _multi_prime_member(domain, I, primes)
        return ClosureResult(IdealOracle(domain, member, presentation=None,
                                         grade="exact", tag=f"extend:{label}"))

    return SemistarOp(label, domain, closure,
                      OpFlags(finite_type=True, stable_claimed=True),
                      params={"kind": "extend", "primes": primes})


def _multi_prime_member(domain: Domain, I: FractionalIdeal, primes: list[PrimeIdeal]):
    def member(z):
        C = _colon_elem_in_D(domain, I, z)
        return all(not _ideal_in_prime(domain, C, P) for P in primes)

    return member


def b_star(domain: Domain, valuations: Sequence[ValuationSpec] = (), name: str = "b") -> SemistarOp:
    """Valuative closure: Newton closure on monomial ideals, identity on
    principal ideals of these integrally closed backends, explicit valuation
    families elsewhere."""
    if domain.kind != "poly_local":
        raise OperationError("b is only wired to polynomial backends")

    def closure(I: FractionalIdeal) -> ClosureResult:
        J: PolyIdeal = I.num
        if all(g.is_monomial() for g in J.gens):
            closed = newton_closure_monomial(J)
            pres = FractionalIdeal(domain, closed, I.den)
            return ClosureResult(IdealOracle.from_ideal(pres, tag="newton"))
        if len(J.groebner()) == 1:
            return ClosureResult(IdealOracle.from_ideal(I, tag="principal"))
        if valuations:
            return ClosureResult(_family_oracle(domain, I, list(valuations), "b-family"))
        raise OperationError("b supports monomial or principal inputs (or an explicit valuation list)")

    return SemistarOp(name, domain, closure,
                      OpFlags(finite_type=True, eab_claimed=True),
                      fixes_D=True, params={"kind": "b", "valuations": list(valuations)})


def _family_oracle(domain, I, valuations, tag) -> IdealOracle:
    mins = [(V, valuation_min_over_ideal(domain, V, I)) for V in valuations]

    def member(z):
        if domain.elem_is_zero(z):
            return True
        return all(valuation_value(domain, V, z) >= m for V, m in mins)

    return IdealOracle(domain, member, presentation=None, grade="exact", tag=tag)


def valuation_family_star(domain: Domain, valuations: Sequence[ValuationSpec],
                          relevant_primes: Sequence[PrimeIdeal] = (),
                          name: str | None = None) -> SemistarOp:
    valuations = list(valuations)
    if not valuations:
        raise OperationError("empty valuation family")
    label = name or f"valfam([{','.join(v.name for v in valuations)}])"

    def closure(I: FractionalIdeal) -> ClosureResult:
        return ClosureResult(_family_oracle(domain, I, valuations, f"valfam:{label}"))

    return SemistarOp(label, domain, closure,
                      OpFlags(finite_type=True, eab_claimed=True),
                      params={"kind": "valfam", "valuations": valuations,
                              "relevant_primes": list(relevant_primes)})


def gcd_split_star(domain: PolyLocalDomain, name: str = "ex53") -> SemistarOp:
    """Case-defined star on a local polynomial backend: principal ideals are
    fixed; an ideal with unit gcd closes up to the maximal ideal N; otherwise
    split off the gcd f and close to f*N."""
    if domain.kind != "poly_local" or domain.center != ("monomial",):
        raise OperationError("the gcd-split star needs a monomial-centered local backend")
    N = domain.center_ideal()

    def closure(I: FractionalIdeal) -> ClosureResult:
        J: PolyIdeal = I.num
        f = poly_gcd_many(list(J.gens))
        f_elem = PolyRat(f, Poly.const(domain.nvars, 1))
        principal_f = domain.frac_from_polys([f])
        if I.contains_elem(f_elem):
            return ClosureResult(IdealOracle.from_ideal(principal_f, tag="principal-case"))
        if domain.poly_is_unit(f):
            return ClosureResult(IdealOracle.from_ideal(N, tag="unit-gcd-case"))
        cofactor = J.colon_poly(f)
        if not domain.poly_is_unit(poly_gcd_many(list(cofactor.gens))):
            raise OperationError("gcd split left a non-unit cofactor gcd")
        return ClosureResult(
            IdealOracle.from_ideal(N.scale(f_elem), tag="gcd-split-case"),
        )

    return SemistarOp(name, domain, closure, OpFlags(finite_type=True),
                      fixes_D=True, params={"kind": "gcd_split"})


def make_builtin(domain: Domain, kind: str, **params) -> SemistarOp:
    """Registry entry point used by the expression grammar."""
    if kind in ("d", "identity"):
        return identity_star(domain)
    if kind == "v":
        return v_star(domain)
    if kind == "t":
        return finite_type_closure(v_star(domain))
    if kind == "trivial":
        return trivial_star(domain)
    if kind == "spectral":
        return spectral_star(domain, params["primes"], params.get("name"))
    if kind == "extend":
        return extension_star(domain, params.get("primes"), params.get("name"))
    if kind == "b":
        return b_star(domain, params.get("valuations", ()))
    if kind == "valfam":
        return valuation_family_star(domain, params["valuations"],
                                     params.get("relevant_primes", ()), params.get("name"))
    if kind in ("ex53", "gcd_split"):
        return gcd_split_star(domain)
    raise OperationError(f"unknown builtin operation kind {kind!r}")


# ---------------------------------------------------------------------------
# Derived operators
# ---------------------------------------------------------------------------


def finite_type_closure(star: SemistarOp) -> SemistarOp:
    """star_f: on these Noetherian backends every representable input is
    finitely generated, so the closure procedure is unchanged; the name and
    the finite-type flag record the construction.  (v)_f is called t."""
    _reject_trivial(star, "finite-type closure")
    if star.flags.finite_type:
        return star
    name = "t" if star.params.get("kind") == "v" else f"fin({star.name})"
    return SemistarOp(name, star.domain, star._closure_integral,
                      replace(star.flags, finite_type=True),
                      grade=star.grade, fixes_D=star.fixes_D,
                      params={**star.params, "finite_type_of": star.name})


def tilde_of(star: SemistarOp, mset: Sequence[PrimeIdeal], provenance: str = "") -> SemistarOp:
    """Spectral operation attached to the quasi-maximal set of star_f.

    mset must be that set relative to the scenario's candidates; the
    provenance note travels with the operation into reports.
    """
    _reject_trivial(star, "tilde")
    mset = list(mset)
    if not mset:
        raise OperationError("empty maximal set: the trivial operation is not representable here")
    op = spectral_star(star.domain, mset, name=f"tilde({star.name})",
                       params={"base": star.name, "provenance": provenance,
                               "tilde_of": star.name})
    return op


def star_w_of(star: SemistarOp) -> SemistarOp:
    """Colon-style closure: z in E^(star_w) iff ((E : z) cap D)^star = D^star.

    Exact on every backend; the derivation replaces the search for H with
    the full colon ideal.
    """
    _reject_trivial(star, "w-operation")
    domain = star.domain
    one = domain.one()

    def member_for(I: FractionalIdeal):
        def member(z):
            if domain.elem_is_zero(z):
                return True
            C = _colon_elem_in_D(domain, I, z)
            return star.apply(C).oracle.contains(one)

        return member

    def closure(I: FractionalIdeal) -> ClosureResult:
        member = member_for(I)
        presentation = None
        if domain.kind == "poly_local" and star.fixes_D:
            # Factor the gcd out: I = c*J0 with unit-gcd J0.  When 1 lies in
            # J0^(star_w) the closure is exactly c*D (star_w fixes D for any
            # base operation fixing D).
            c = poly_gcd_many(list(I.num.gens))
            one_poly = Poly.const(domain.nvars, 1)
            inner = member_for(FractionalIdeal(domain, I.num.colon_poly(c), one_poly))
            if inner(one):
                presentation = domain.frac_from_polys([c], I.den)
        return ClosureResult(IdealOracle(domain, member, presentation=presentation,
                                         grade="exact", tag=f"w({star.name})"))

    return SemistarOp(f"w({star.name})", domain, closure,
                      OpFlags(finite_type=True, stable_claimed=True),
                      fixes_D=star.fixes_D,
                      params={"kind": "w_of", "base": star.name, "base_op": star})


def _colon_elem_in_D(domain: Domain, E: FractionalIdeal, z) -> FractionalIdeal:
    """(E : z) cap D as an integral ideal."""
    if domain.kind == "poly_local":
        C = E.num.mul_poly(z.den).colon_poly(z.num * E.den)
        return FractionalIdeal(domain, C, Poly.const(domain.nvars, 1))
    if domain.kind == "quadratic_order":
        return domain.colon_elem_in_D(E, z)
    c = Fraction(E.num) / Fraction(z)
    if domain.p is not None:
        from .domains import _int_ord

        k = max(_int_ord(c, domain.p), 0)
        return FractionalIdeal(domain, Fraction(domain.p) ** k, Fraction(1))
    # (c)Z cap Z is generated by the numerator of c in lowest terms.
    return FractionalIdeal(domain, Fraction(abs(c.numerator)), Fraction(1))


def _ideal_in_prime(domain: Domain, C: FractionalIdeal, P: PrimeIdeal) -> bool:
    return all(P.ideal.contains_elem(g) for g in C.gens_elems())


def star_a_lower(star: SemistarOp, F: FractionalIdeal, budget: dict) -> ClosureResult:
    """Certified lower bound for F^(star_a): the union of ((FH)^star : H^star)
    over a finite witness pool of ideals H.

    The pool consists of products (up to budget["power"]) of the principal
    ideals on the generators of F and the budget's auxiliary ideals.  Every
    contribution is re-verified (term * H^star inside (FH)^star) and logged.
    """
    _reject_trivial(star, "a-operation")
    domain = star.domain
    if not budget or budget.get("power", 0) < 1:
        raise OperationError("empty witness budget")
    power = budget["power"]
    atoms: list[FractionalIdeal] = []
    for g in F.gens_elems():
        atoms.append(domain.frac_from_elems([g]))
    atoms.append(F)
    atoms.extend(budget.get("aux", []))

    pool: list[FractionalIdeal] = [domain.one_ideal()]
    frontier = [domain.one_ideal()]
    for _ in range(power):
        nxt = []
        for H in frontier:
            for A in atoms:
                HA = H.mul(A)
                if not any(HA.eq(existing) for existing in pool):
                    pool.append(HA)
                    nxt.append(HA)
        frontier = nxt

    total: FractionalIdeal | None = None
    witnesses = []
    for H in pool:
        closed_FH = star.apply(F.mul(H)).oracle
        closed_H = star.apply(H).oracle
        if closed_FH.presentation is None or closed_H.presentation is None:
            continue
        term = closed_FH.presentation.colon(closed_H.presentation)
        # Witness re-verification: term * H^star must land inside (FH)^star.
        product = term.mul(closed_H.presentation)
        if not all(closed_FH.contains(g) for g in product.gens_elems()):
            raise OperationError("witness re-verification failed for the a-operation")
        witnesses.append({
            "H": H.render(),
            "term": term.render(),
        })
        total = term if total is None else total.add(term)

    if total is None:
        raise OperationError("no usable witnesses: the base closure yields no presentations")
    oracle = IdealOracle(domain, total.contains_elem, presentation=total,
                         grade="lower-bound", tag=f"a({star.name})-lower",
                         note=f"witness pool of {len(pool)} ideals, power {power}")
    return ClosureResult(oracle, witnesses)


def star_a_lower_op(star: SemistarOp, budget: dict, name: str | None = None) -> SemistarOp:
    """Budgeted lower-bound operator as a first-class operation."""

    def closure(I: FractionalIdeal) -> ClosureResult:
        return star_a_lower(star, I, budget)

    return SemistarOp(name or f"a({star.name})", star.domain, closure,
                      OpFlags(finite_type=True), grade="lower-bound",
                      params={"kind": "a_lower", "base": star.name, "budget": budget,
                              "base_op": star})


def restrict_to_overring(star: SemistarOp, target: PrimeIdeal | None) -> SemistarOp:
    """The induced operation on an overring T (Remark-style restriction).

    target None means T = D (no change).  For T = D_P the result is
    representable when the base operation is the identity, the extension to
    T itself, or a spectral operation whose primes all survive in T.  The
    v-operation of D collapses on proper T-modules (the conductor (D : T)
    is zero), which is returned honestly as the all-of-K operation.
    """
    _reject_trivial(star, "overring restriction")
    if target is None:
        return star
    domain = star.domain
    if domain.kind != "poly_local":
        raise OperationError("overring restriction is wired to polynomial backends")
    gen = domain.prime_principal_gen(target)
    if gen is None:
        raise OperationError(f"unrepresentable overring center {target.name}")
    Tdomain = PolyLocalDomain(domain.var_names, ("principal", gen))
    kind = star.params.get("kind")
    dot = f"dot({star.name})@{target.name}"
    if kind == "identity":
        return identity_star(Tdomain, name=dot)
    if kind == "extend":
        primes = star.params.get("primes")
        if primes and len(primes) == 1 and primes[0].ideal.eq(target.ideal):
            return identity_star(Tdomain, name=dot)
        raise OperationError("extension star does not restrict to this overring")
    if kind == "spectral":
        kept = [P for P in star.params["primes"] if target.ideal.contains_ideal(P.ideal)]
        if len(kept) != len(star.params["primes"]):
            raise OperationError("spectral prime set does not live inside the overring center")
        lifted = [
            PrimeIdeal(P.name, Tdomain.frac_from_polys(list(P.ideal.num.gens)), P.certificate,
                       P.provenance)
            for P in kept
        ]
        return spectral_star(Tdomain, lifted, name=dot)
    if kind == "v":
        op = trivial_star(Tdomain, name=dot)
        op.params["note"] = "conductor (D : T) is zero, the restricted dual collapses to K"
        return op
    raise OperationError(f"operation {star.name} has no representable restriction")


# ---------------------------------------------------------------------------
# Quasi-star ideals and spectra
# ---------------------------------------------------------------------------

_MAXIMAL_CERTS = {"monomial-maximal", "integer-prime", "norm-form"}


def is_quasi_star_ideal(I: FractionalIdeal, star: SemistarOp,
                        probes: Sequence = (), maximal_hint: bool = False) -> tuple[bool, str]:
    """I^star cap D = I?  Returns (verdict, mode) with mode "exact" or "sampled"."""
    domain = star.domain
    if not I.is_integral():
        raise OperationError("quasi-star test needs an integral ideal")
    one = domain.one()
    oracle = star.apply(I).oracle
    D1 = domain.one_ideal()
    if oracle.all_K or oracle.contains(one):
        # The contraction is all of D.
        return (I.eq(D1), "exact")
    if oracle.presentation is not None and oracle.grade == "exact":
        contraction = oracle.presentation.intersect(D1)
        return (contraction.eq(I), "exact")
    if star.params.get("kind") in ("spectral", "extend") and star.params.get("primes"):
        # For a finite prime set the closure contracts prime by prime:
        # (cap E D_P) cap D = cap (E D_P cap D).
        pieces = [domain.localize_contract(I, P) for P in star.params["primes"]]
        if all(p.presentation is not None for p in pieces):
            contraction = pieces[0].presentation
            for p in pieces[1:]:
                contraction = contraction.intersect(p.presentation)
            contraction = contraction.intersect(D1)
            return (contraction.eq(I), "exact")
    if maximal_hint:
        # I <= I^star cap D < D and I maximal forces equality.
        return (True, "exact")
    for z in probes:
        if domain.elem_in_D(z) and oracle.contains(z) and not I.contains_elem(z):
            return (False, "exact")
    return (True, "sampled")


@dataclass
class SpectrumResult:
    quasi: list[str]
    maximals: list[str]
    excluded: dict
    modes: dict
    label: str = "relative to candidates"


def quasi_star_spectrum(star: SemistarOp, candidates: Sequence[PrimeIdeal],
                        probes: Sequence = ()) -> SpectrumResult:
    """Filter candidates into quasi-star primes and their maximal members.

    Maximality is by inclusion *within the candidate set*; the result is
    always labeled as candidate-relative.
    """
    if not candidates:
        raise OperationError("empty candidate list")
    domain = star.domain
    quasi: list[PrimeIdeal] = []
    excluded: dict = {}
    modes: dict = {}
    for P in candidates:
        if not P.verify():
            excluded[P.name] = "uncertified prime"
            continue
        if P.ideal.contains_elem(domain.one()):
            excluded[P.name] = "not a proper ideal of this localization"
            continue
        ok, mode = is_quasi_star_ideal(P.ideal, star, probes=probes,
                                       maximal_hint=P.certificate in _MAXIMAL_CERTS)
        modes[P.name] = mode
        if ok:
            quasi.append(P)
        else:
            excluded[P.name] = "not a quasi-star ideal"
    maximals = []
    for P in quasi:
        if not any(
            Q is not P and Q.ideal.contains_ideal(P.ideal) and not P.ideal.contains_ideal(Q.ideal)
            for Q in quasi
        ):
            maximals.append(P.name)
    return SpectrumResult([P.name for P in quasi], maximals, excluded, modes)


# ---------------------------------------------------------------------------
# Property checkers
# ---------------------------------------------------------------------------


@dataclass
class AxiomPlan:
    ideals: list
    scalars: list
    probes: list
    enlargements: list  # ideals to join for monotonicity tests


def check_axioms(star: SemistarOp, plan: AxiomPlan) -> dict:
    """Scaling, monotonicity, extensivity/idempotence; stability when claimed.

    Lower-bound operations are exempt from idempotence equality; the
    enlarging inclusion is still required.
    """
    domain = star.domain
    report: dict = {}

    # (scaling) (zE)^star = z E^star
    ok, checked, cex = True, 0, None
    for E in plan.ideals:
        for z in plan.scalars:
            checked += 1
            left = star.apply(E.scale(z)).oracle
            right = star.apply(E).oracle
            if left.presentation is not None and right.presentation is not None:
                good = left.presentation.eq(right.presentation.scale(z))
            else:
                good = all(
                    left.contains(w) == right.contains(_elem_div(domain, w, z))
                    for w in plan.probes
                )
            if not good:
                ok, cex = False, {"ideal": E.render(), "scalar": domain.elem_render(z)}
                break
        if not ok:
            break
    report["scaling"] = {"ok": ok, "checked": checked, "counterexample": cex}

    # (monotone) E <= F => E^star <= F^star
    ok, checked, cex = True, 0, None
    for E in plan.ideals:
        for extra in plan.enlargements:
            F = E.add(extra)
            checked += 1
            sub, witness, _ = oracle_subset(star.apply(E).oracle, star.apply(F).oracle, plan.probes)
            if not sub:
                ok, cex = False, {"ideal": E.render(), "larger": F.render(),
                                  "witness": domain.elem_render(witness)}
                break
        if not ok:
            break
    report["monotone"] = {"ok": ok, "checked": checked, "counterexample": cex}

    # (extensive + idempotent)
    ok, checked, cex = True, 0, None
    for E in plan.ideals:
        checked += 1
        oracle = star.apply(E).oracle
        if not all(oracle.contains(g) for g in E.gens_elems()):
            ok, cex = False, {"ideal": E.render(), "failure": "not extensive"}
            break
        if oracle.presentation is not None:
            twice = star.apply(oracle.presentation).oracle
            enlarging = all(twice.contains(g) for g in oracle.presentation.gens_elems())
            if not enlarging:
                ok, cex = False, {"ideal": E.render(), "failure": "closure shrank"}
                break
            if oracle.grade == "exact" and twice.presentation is not None:
                if not twice.presentation.eq(oracle.presentation):
                    ok, cex = False, {"ideal": E.render(), "failure": "not idempotent"}
                    break
    report["idempotent_extensive"] = {"ok": ok, "checked": checked, "counterexample": cex}

    if star.flags.stable_claimed:
        ok, checked, cex = True, 0, None
        ideals = plan.ideals
        for i, E in enumerate(ideals):
            for F in ideals[i + 1:]:
                checked += 1
                meet = E.intersect(F)
                left = star.apply(meet).oracle
                oE = star.apply(E).oracle
                oF = star.apply(F).oracle
                probes = list(plan.probes) + [g for g in meet.gens_elems()]
                agree = all(
                    left.contains(z) == (oE.contains(z) and oF.contains(z)) for z in probes
                )
                if not agree:
                    ok, cex = False, {"E": E.render(), "F": F.render()}
                    break
            if not ok:
                break
        report["stable"] = {"ok": ok, "checked": checked, "counterexample": cex}

    report["pass"] = all(v["ok"] for k, v in report.items() if isinstance(v, dict))
    return report


def check_eab(star: SemistarOp, triples: Sequence[tuple]) -> dict:
    """Cancellation check on finitely generated triples (E, F, G)."""
    violations = []
    applicable = 0
    for E, F, G in triples:
        premise = closure_contains_ideal(star, E.mul(G), E.mul(F))
        if not premise:
            continue
        applicable += 1
        if not closure_contains_ideal(star, G, F):
            violations.append({
                "E": E.render(), "F": F.render(), "G": G.render(),
            })
    return {
        "checked": len(triples),
        "applicable": applicable,
        "violations": violations,
        "pass": not violations,
    }


def compare_ops(star1: SemistarOp, star2: SemistarOp, ideals: Sequence[FractionalIdeal],
                probes: Sequence = ()) -> dict:
    """Ordering evidence between two operations on a shared sample set.

    A witness against star1 <= star2 is an element of some E^(star1) missing
    from E^(star2); when the verdict is one-sided that same witness, on the
    other side, certifies strictness.
    """
    if star1.domain is not star2.domain:
        raise OperationError("operations live on different backends")
    le12 = le21 = True
    against12 = against21 = None
    mode = "exact"
    for E in ideals:
        o1 = star1.apply(E).oracle
        o2 = star2.apply(E).oracle
        sub12, wit12, m12 = oracle_subset(o1, o2, probes)
        sub21, wit21, m21 = oracle_subset(o2, o1, probes)
        if m12 == "sampled" or m21 == "sampled":
            mode = "sampled"
        if not sub12 and against12 is None:
            le12 = False
            against12 = {"ideal": E.render(), "witness": star1.domain.elem_render(wit12)}
        if not sub21 and against21 is None:
            le21 = False
            against21 = {"ideal": E.render(), "witness": star2.domain.elem_render(wit21)}
    if le12 and le21:
        verdict = "equal"
    elif le12:
        verdict = "<="
    elif le21:
        verdict = ">="
    else:
        verdict = "incomparable"
    return {
        "verdict": verdict,
        "mode": mode,
        # When "<=", a witness against the reverse inclusion shows strictness.
        "strictness": against21 if verdict == "<=" else (against12 if verdict == ">=" else None),
        "against_le": against12,
        "against_ge": against21,
    }


# ---------------------------------------------------------------------------
# Star-valuation overrings
# ---------------------------------------------------------------------------


def overring_contains_localization(domain: Domain, V: ValuationSpec, P: PrimeIdeal) -> bool:
    """Structural test V >= D_P, per valuation kind."""
    if domain.kind == "integers":
        return V.kind == "dvr" and Fraction(V.payload[0]) == P.ideal.num
    if domain.kind != "poly_local":
        return False
    if P.certificate == "monomial-maximal":
        return True  # V is an overring of the local ring D itself
    gen = domain.prime_principal_gen(P)
    if gen is None:
        return False
    if V.kind == "dvr":
        f = V.payload[0]
        return f.monic(DEGREVLEX) == gen.monic(DEGREVLEX)
    # Weight-style valuations contain D_(X_i) iff every other variable has
    # weight zero in every row.
    var_idx = None
    if gen.total_degree() == 1 and len(gen.terms) == 1:
        exp = next(iter(gen.terms))
        var_idx = exp.index(1)
    if var_idx is None:
        rows = V.payload[0] if V.kind == "lex_monomial" else (V.payload[0],)
        return all(all(w == 0 for w in row) for row in rows)
    if V.kind == "monomial_weight":
        (weights,) = V.payload
        return all(w == 0 for j, w in enumerate(weights) if j != var_idx)
    if V.kind == "lex_monomial":
        (rows,) = V.payload
        return all(all(row[j] == 0 for j in range(len(row)) if j != var_idx) for row in rows)
    return False


def is_star_valuation_overring(V: ValuationSpec, star: SemistarOp,
                               Fsamples: Sequence[FractionalIdeal],
                               sat_elems: Sequence = ()) -> dict:
    """Does F^star sit inside F*V for the sampled F?

    Failure is certified by an explicit element of F^star with value below
    the value of F.  A positive answer is structural when the operation is
    spectral and V contains one of its localizations, otherwise it is
    labeled sample-relative.
    """
    domain = star.domain
    for F in Fsamples:
        bound = valuation_min_over_ideal(domain, V, F)
        oracle = star.apply(F).oracle
        candidates = []
        if oracle.presentation is not None:
            candidates.extend(oracle.presentation.gens_elems())
        for g in F.gens_elems():
            for s in sat_elems:
                candidates.append(_elem_div(domain, g, s))
        for z in candidates:
            if domain.elem_is_zero(z):
                continue
            if oracle.contains(z) and valuation_value(domain, V, z) < bound:
                return {
                    "holds": False,
                    "mode": "exact",
                    "witness": {"F": F.render(), "element": domain.elem_render(z)},
                }
    if star.params.get("kind") == "spectral":
        if any(overring_contains_localization(domain, V, P) for P in star.params["primes"]):
            return {"holds": True, "mode": "structural", "witness": None}
    if star.params.get("kind") == "valfam":
        if any(W == V for W in star.params["valuations"]):
            return {"holds": True, "mode": "structural", "witness": None}
    if star.params.get("kind") == "identity":
        return {"holds": True, "mode": "exact", "witness": None}
    return {"holds": True, "mode": "relative to samples", "witness": None}
