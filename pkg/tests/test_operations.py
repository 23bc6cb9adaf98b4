"""Semistar operation tests: builtins, derived operators, checkers."""

from fractions import Fraction

import pytest

from semistar.domains import (
    FractionalIdeal,
    IntegerDomain,
    PolyLocalDomain,
    PolyRat,
    PrimeIdeal,
    QuadraticOrderDomain,
    ValuationSpec,
)
from semistar.operations import (
    AxiomPlan,
    OperationError,
    check_axioms,
    check_eab,
    closure_contains_ideal,
    compare_ops,
    finite_type_closure,
    gcd_split_star,
    identity_star,
    is_quasi_star_ideal,
    is_star_valuation_overring,
    make_builtin,
    quasi_star_spectrum,
    restrict_to_overring,
    spectral_star,
    star_a_lower,
    star_a_lower_op,
    star_w_of,
    tilde_of,
    trivial_star,
    v_star,
    valuation_family_star,
)
from semistar.polys import Poly


@pytest.fixture
def D2():
    return PolyLocalDomain(("X", "Y"), "monomial")


def XY(dom):
    return Poly.variable(dom.nvars, 0), Poly.variable(dom.nvars, 1)


def elem(dom, num, den=None):
    return PolyRat(num, den if den is not None else Poly.const(dom.nvars, 1))


def primes_xy(dom):
    X, Y = XY(dom)
    return {
        "pX": PrimeIdeal("pX", dom.frac_from_polys([X]), "principal-irreducible"),
        "pY": PrimeIdeal("pY", dom.frac_from_polys([Y]), "principal-irreducible"),
        "pXmY": PrimeIdeal("pXmY", dom.frac_from_polys([X - Y]), "principal-irreducible"),
        "N": PrimeIdeal("N", dom.center_ideal(), "monomial-maximal"),
    }


# ---------------------------------------------------------------------------
# builtins
# ---------------------------------------------------------------------------


def test_identity_star(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X * X, Y * Y])
    res = identity_star(D2).apply(E)
    assert res.oracle.presentation.eq(E)


def test_v_star_maximal_ideal(D2):
    X, Y = XY(D2)
    M = D2.frac_from_polys([X, Y])
    assert v_star(D2).apply(M).oracle.presentation.eq(D2.one_ideal())


def test_v_star_scaling_axiom(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X * X, X * Y], den=X)
    v = v_star(D2)
    direct = v.apply(E).oracle.presentation
    integral = v.apply(D2.frac_from_polys([X * X, X * Y])).oracle.presentation
    assert direct.eq(integral.scale(elem(D2, Poly.const(2, 1), X)))
    # (X^2, XY)^v = (X), so E^v is the whole ring.
    assert direct.eq(D2.one_ideal())


def test_v_star_quadratic_conductor():
    QO = QuadraticOrderDomain(-3)
    P2 = QO.frac_from_elems([QO.elem(2), QO.elem(1, 1)])
    assert v_star(QO).apply(P2).oracle.presentation.eq(P2)


def test_trivial_star_flagged(D2):
    X, Y = XY(D2)
    res = trivial_star(D2).apply(D2.frac_from_polys([X]))
    assert res.oracle.all_K
    assert res.oracle.contains(elem(D2, Poly.const(2, 1), Y))


def test_gcd_split_cases(D2):
    X, Y = XY(D2)
    star = gcd_split_star(D2)
    N = D2.center_ideal()
    # Case 1: principal ideals are fixed (even with a unit cofactor).
    P = D2.frac_from_polys([X * X])
    assert star.apply(P).oracle.presentation.eq(P)
    hidden = D2.frac_from_polys([(X + Poly.const(2, 1)) * X, X * Y + X * X])
    # ((X+1)X, X(X+Y)) = (X) since (X+1, X+Y) contains the unit (X+1)-(X+Y)+Y...
    # actually gcd is X and the cofactor ideal (X+1, X+Y) contains a unit.
    assert star.apply(hidden).oracle.presentation.eq(D2.frac_from_polys([X]))
    # Case 2: unit gcd closes to N.
    E2 = D2.frac_from_polys([X * X, Y * Y])
    assert star.apply(E2).oracle.presentation.eq(N)
    assert star.apply(N).oracle.presentation.eq(N)
    # Case 3: gcd split, (X^2, XY) -> X*(X, Y) which is the input itself.
    E3 = D2.frac_from_polys([X * X, X * Y])
    out = star.apply(E3).oracle.presentation
    assert out.eq(E3)
    # D is fixed: the operation is a (semi)star operation.
    assert star.apply(D2.one_ideal()).oracle.presentation.eq(D2.one_ideal())
    # Case 4 (scaling): a fractional input goes through the integral part.
    E4 = D2.frac_from_polys([X * X, X * Y], den=X)
    assert star.apply(E4).oracle.presentation.eq(D2.frac_from_polys([X, Y]))


def test_spectral_and_extension_membership(D2):
    X, Y = XY(D2)
    ps = primes_xy(D2)
    E = D2.frac_from_polys([X * X, X * Y])
    sp = spectral_star(D2, [ps["pX"], ps["pY"], ps["pXmY"]])
    o = sp.apply(E).oracle
    assert o.contains(elem(D2, X))
    assert not o.contains(elem(D2, Y))
    assert not o.contains(elem(D2, X, Y))  # fails at the prime (Y)
    ext = make_builtin(D2, "extend", primes=[ps["pX"]])
    oe = ext.apply(E).oracle
    assert oe.contains(elem(D2, X, Y))  # Y is a unit in D_(X)
    assert not oe.contains(elem(D2, Y, X))


def test_valuation_family_star(D2):
    X, Y = XY(D2)
    fam = valuation_family_star(
        D2,
        [
            ValuationSpec("wY", "dvr", (Y,)),
            ValuationSpec("wXmY", "dvr", (X - Y,)),
            ValuationSpec("vX", "lex_monomial", (((1, 0), (0, 1)),)),
        ],
    )
    N = D2.center_ideal()
    o = fam.apply(N).oracle
    assert not o.contains(D2.one())  # blocked by the rank-2 valuation
    assert o.contains(elem(D2, X))
    E = D2.frac_from_polys([X * X, Y * Y])
    assert fam.apply(E).oracle.contains(elem(D2, X * Y))


def test_b_star_monomial_and_principal(D2):
    X, Y = XY(D2)
    b = make_builtin(D2, "b")
    E = D2.frac_from_polys([X * X, Y * Y])
    assert b.apply(E).oracle.presentation.eq(D2.frac_from_polys([X * X, X * Y, Y * Y]))
    P = D2.frac_from_polys([X + Y])
    assert b.apply(P).oracle.presentation.eq(P)
    with pytest.raises(OperationError):
        b.apply(D2.frac_from_polys([X + Y, X * X]))


# ---------------------------------------------------------------------------
# derived operators
# ---------------------------------------------------------------------------


def test_finite_type_names(D2):
    v = v_star(D2)
    t = finite_type_closure(v)
    assert t.name == "t"
    assert t.flags.finite_type
    d = identity_star(D2)
    assert finite_type_closure(d) is d
    X, Y = XY(D2)
    M = D2.frac_from_polys([X, Y])
    assert t.apply(M).oracle.presentation.eq(D2.one_ideal())


def test_tilde_rejects_empty(D2):
    with pytest.raises(OperationError):
        tilde_of(identity_star(D2), [])


def test_tilde_of_identity_is_identity_on_local(D2):
    X, Y = XY(D2)
    ps = primes_xy(D2)
    tilde = tilde_of(identity_star(D2), [ps["N"]])
    E = D2.frac_from_polys([X * X, Y])
    assert tilde.apply(E).oracle.presentation.eq(E)


def test_tilde_of_v_memberships(D2):
    X, Y = XY(D2)
    ps = primes_xy(D2)
    tilde = tilde_of(v_star(D2), [ps["pX"], ps["pY"], ps["pXmY"]])
    E = D2.frac_from_polys([X * X, X * Y])
    o = tilde.apply(E).oracle
    assert o.contains(elem(D2, X))
    assert not o.contains(elem(D2, Y))


def test_star_w_memberships(D2):
    X, Y = XY(D2)
    v = v_star(D2)
    w = star_w_of(v)
    E = D2.frac_from_polys([X * X, X * Y])
    o = w.apply(E).oracle
    assert o.contains(elem(D2, X))
    assert o.presentation is not None and o.presentation.eq(D2.frac_from_polys([X]))
    assert not o.contains(elem(D2, X, X + Y))  # (X+Y)(X,Y) is not v-trivial
    d = identity_star(D2)
    wd = star_w_of(d)
    E2 = D2.frac_from_polys([X * X, Y * Y])
    assert not wd.apply(E2).oracle.contains(elem(D2, X * Y))
    assert wd.apply(D2.one_ideal()).oracle.contains(D2.one())


def test_three_closures_on_shared_example(D2):
    # tilde, w and the gcd-split star each send (X^2, XY) to an ideal
    # between X*(X,Y) and (X).
    X, Y = XY(D2)
    E = D2.frac_from_polys([X * X, X * Y])
    w = star_w_of(v_star(D2))
    assert w.apply(E).oracle.presentation.eq(D2.frac_from_polys([X]))
    g = gcd_split_star(D2)
    assert g.apply(E).oracle.presentation.eq(E)


def test_star_a_lower_witness(D2):
    X, Y = XY(D2)
    d = identity_star(D2)
    F = D2.frac_from_polys([X * X, Y * Y])
    M = D2.frac_from_polys([X, Y])
    res = star_a_lower(d, F, {"power": 1, "aux": [M]})
    o = res.oracle
    assert o.grade == "lower-bound"
    assert o.contains(elem(D2, X * Y))
    assert not F.contains_elem(elem(D2, X * Y))
    assert any("X" in wit["H"] for wit in res.witnesses)


def test_star_a_lower_principal(D2):
    X, Y = XY(D2)
    d = identity_star(D2)
    F = D2.frac_from_polys([X * Y])
    res = star_a_lower(d, F, {"power": 2, "aux": [D2.frac_from_polys([X, Y])]})
    assert res.oracle.presentation.eq(F)


def test_star_a_lower_gcd_split_unit(D2):
    # H = N certifies 1 in N^(star_a) for the gcd-split star.
    X, Y = XY(D2)
    star = gcd_split_star(D2)
    N = D2.frac_from_polys([X, Y])
    res = star_a_lower(star, N, {"power": 1, "aux": []})
    assert res.oracle.contains(D2.one())
    assert res.oracle.presentation.eq(D2.one_ideal())


def test_star_a_monotone_in_budget(D2):
    X, Y = XY(D2)
    d = identity_star(D2)
    F = D2.frac_from_polys([X * X, Y * Y])
    M = D2.frac_from_polys([X, Y])
    small = star_a_lower(d, F, {"power": 1, "aux": []}).oracle.presentation
    big = star_a_lower(d, F, {"power": 2, "aux": [M]}).oracle.presentation
    assert big.contains_ideal(small)


def test_restrict_to_overring(D2):
    ps = primes_xy(D2)
    ext = make_builtin(D2, "extend", primes=[ps["pX"]])
    dot = restrict_to_overring(ext, ps["pX"])
    # The restriction of the extension star to its own localization is the
    # identity of that localization.
    X, Y = XY(dot.domain)
    E = dot.domain.frac_from_polys([X])
    assert dot.apply(E).oracle.presentation.eq(E)
    dd = restrict_to_overring(identity_star(D2), ps["pX"])
    assert dd.apply(E).oracle.presentation.eq(E)
    vv = restrict_to_overring(v_star(D2), ps["pX"])
    assert vv.apply(E).oracle.all_K


# ---------------------------------------------------------------------------
# quasi-star machinery
# ---------------------------------------------------------------------------


def test_quasi_star_identity(D2):
    X, Y = XY(D2)
    I = D2.frac_from_polys([X * X, Y])
    ok, mode = is_quasi_star_ideal(I, identity_star(D2))
    assert ok and mode == "exact"


def test_quasi_star_trivial_op(D2):
    X, Y = XY(D2)
    I = D2.frac_from_polys([X])
    ok, _ = is_quasi_star_ideal(I, trivial_star(D2))
    assert not ok


def test_quasi_star_v_conductor():
    QO = QuadraticOrderDomain(-3)
    P2 = QO.frac_from_elems([QO.elem(2), QO.elem(1, 1)])
    ok, mode = is_quasi_star_ideal(P2, v_star(QO))
    assert ok and mode == "exact"


def test_quasi_spectrum_v(D2):
    ps = primes_xy(D2)
    cands = [ps["pX"], ps["pY"], ps["N"]]
    res = quasi_star_spectrum(v_star(D2), cands)
    assert set(res.quasi) == {"pX", "pY"}
    assert set(res.maximals) == {"pX", "pY"}
    assert res.excluded["N"] == "not a quasi-star ideal"
    assert res.label == "relative to candidates"


def test_quasi_spectrum_gcd_split(D2):
    ps = primes_xy(D2)
    cands = [ps["pX"], ps["pY"], ps["pXmY"], ps["N"]]
    res = quasi_star_spectrum(gcd_split_star(D2), cands)
    assert set(res.quasi) == {"pX", "pY", "pXmY", "N"}
    assert res.maximals == ["N"]


def test_quasi_spectrum_identity(D2):
    ps = primes_xy(D2)
    res = quasi_star_spectrum(identity_star(D2), [ps["pX"], ps["N"]])
    assert res.maximals == ["N"]


def test_quasi_spectrum_drops_units():
    Z5 = IntegerDomain(5)
    cands = [
        PrimeIdeal("p3", Z5.frac_from_elems([Fraction(3)]), "integer-prime"),
        PrimeIdeal("p5", Z5.frac_from_elems([Fraction(5)]), "integer-prime"),
    ]
    res = quasi_star_spectrum(v_star(Z5), cands)
    assert res.maximals == ["p5"]
    assert "p3" in res.excluded


# ---------------------------------------------------------------------------
# property checkers
# ---------------------------------------------------------------------------


def _plan(D2):
    X, Y = XY(D2)
    ideals = [
        D2.frac_from_polys([X]),
        D2.frac_from_polys([X, Y]),
        D2.frac_from_polys([X * X, X * Y]),
        D2.frac_from_polys([X * X, Y * Y], den=Y),
    ]
    scalars = [elem(D2, X), elem(D2, Poly.const(2, 3)), elem(D2, Y, X)]
    probes = [
        elem(D2, X), elem(D2, Y), elem(D2, X * Y), elem(D2, X, Y),
        elem(D2, Poly.const(2, 1)), elem(D2, X + Y),
    ]
    enlargements = [D2.frac_from_polys([Y]), D2.frac_from_polys([X + Y])]
    return AxiomPlan(ideals, scalars, probes, enlargements)


def test_axioms_identity(D2):
    rep = check_axioms(identity_star(D2), _plan(D2))
    assert rep["pass"], rep


def test_axioms_v(D2):
    rep = check_axioms(v_star(D2), _plan(D2))
    assert rep["pass"], rep


def test_axioms_gcd_split(D2):
    rep = check_axioms(gcd_split_star(D2), _plan(D2))
    assert rep["pass"], rep


def test_axioms_spectral_stability(D2):
    ps = primes_xy(D2)
    sp = spectral_star(D2, [ps["pX"]])
    rep = check_axioms(sp, _plan(D2))
    assert rep["pass"], rep
    assert rep["stable"]["ok"]


def test_eab_counterexample_for_identity(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X, Y])
    F = E.mul(E)
    G = D2.frac_from_polys([X * X, Y * Y])
    rep = check_eab(identity_star(D2), [(E, F, G)])
    assert not rep["pass"]
    assert rep["violations"]


def test_eab_vacuous_and_family(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X, Y])
    F = D2.frac_from_polys([X * X])
    rep = check_eab(identity_star(D2), [(E, F, F)])
    assert rep["pass"]
    fam = valuation_family_star(
        D2,
        [ValuationSpec("wY", "dvr", (Y,)), ValuationSpec("w11", "monomial_weight",
                                                         ((Fraction(1), Fraction(1)),))],
    )
    G = D2.frac_from_polys([X * X, Y * Y])
    rep2 = check_eab(fam, [(E, E.mul(E), G), (E, F, G), (G, E, E)])
    assert rep2["pass"]


def test_compare_d_le_v(D2):
    X, Y = XY(D2)
    ideals = [D2.frac_from_polys([X, Y]), D2.frac_from_polys([X * X, X * Y])]
    out = compare_ops(identity_star(D2), v_star(D2), ideals)
    assert out["verdict"] == "<="
    assert out["strictness"] is not None


def test_compare_gcd_split_vs_a_lower(D2):
    X, Y = XY(D2)
    star = gcd_split_star(D2)
    alow = star_a_lower_op(star, {"power": 1, "aux": [D2.frac_from_polys([X, Y])]})
    E = D2.frac_from_polys([X * X, X * Y])
    out = compare_ops(star, alow, [E])
    # X*(X,Y) sits strictly inside (X).
    assert out["verdict"] == "<="
    assert out["strictness"]["witness"] == "X"


def test_closure_contains_ideal_absorption(D2):
    X, Y = XY(D2)
    v = v_star(D2)
    A = D2.frac_from_polys([X, Y])
    B = D2.frac_from_polys([X * X, X * Y])
    # B^v = (X) is inside A^v = D, not conversely.
    assert closure_contains_ideal(v, A, B)
    assert not closure_contains_ideal(v, B, A)


# ---------------------------------------------------------------------------
# star-valuation overrings
# ---------------------------------------------------------------------------


def test_star_valuation_overring_spectral(D2):
    X, Y = XY(D2)
    ps = primes_xy(D2)
    tilde = spectral_star(D2, [ps["pX"]])
    Fs = [D2.frac_from_polys([X]), D2.frac_from_polys([X, Y])]
    sats = [elem(D2, Y), elem(D2, X - Y), elem(D2, X + Y)]
    bad = is_star_valuation_overring(ValuationSpec("wY", "dvr", (Y,)), tilde, Fs, sats)
    assert not bad["holds"]
    assert bad["witness"]["F"] == "(X)"
    good = is_star_valuation_overring(
        ValuationSpec("w10", "monomial_weight", ((Fraction(1), Fraction(0)),)), tilde, Fs, sats
    )
    assert good["holds"] and good["mode"] == "structural"


def test_star_valuation_overring_identity(D2):
    X, Y = XY(D2)
    out = is_star_valuation_overring(
        ValuationSpec("w11", "monomial_weight", ((Fraction(1), Fraction(1)),)),
        identity_star(D2),
        [D2.frac_from_polys([X, Y])],
    )
    assert out["holds"]
