"""Nagata / Kronecker membership tests with hand-derived frozen verdicts."""

from fractions import Fraction

import pytest

from semistar.domains import (
    IntegerDomain,
    PolyLocalDomain,
    PolyRat,
    PrimeIdeal,
    QuadraticOrderDomain,
    ValuationSpec,
)
from semistar.function_rings import (
    FunctionRingError,
    content_ideal,
    element_over,
    extend_contract_kr,
    extend_contract_na,
    fn_elem,
    fn_from_coeffs,
    fn_render,
    fn_variable,
    in_multiplicative_set_N,
    kr_bezout_combine,
    kr_content_poly,
    kr_member,
    lift_poly,
    na_equal_iff_M,
    na_maximal_trace,
    na_member,
    spread_from_ideal,
)
from semistar.newton import newton_closure_monomial
from semistar.operations import (
    finite_type_closure,
    gcd_split_star,
    identity_star,
    make_builtin,
    star_w_of,
    tilde_of,
    v_star,
)
from semistar.polys import Poly


@pytest.fixture
def D2():
    return PolyLocalDomain(("X", "Y"), "monomial")


def XY(dom):
    return Poly.variable(dom.nvars, 0), Poly.variable(dom.nvars, 1)


def XYT(dom):
    # Lifted variables plus the function variable.
    X, Y = XY(dom)
    return lift_poly(X), lift_poly(Y), fn_variable(dom)


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
# contents and N(star)
# ---------------------------------------------------------------------------


def test_content_ideal_examples(D2):
    X, Y, T = XYT(D2)
    f = X * X + Y * Y * T
    C = content_ideal(D2, f)
    Xb, Yb = XY(D2)
    assert C.eq(D2.frac_from_polys([Xb * Xb, Yb * Yb]))
    with pytest.raises(FunctionRingError):
        content_ideal(D2, Poly.zero(3))


def test_content_ideal_integers():
    Z = IntegerDomain()
    f = fn_from_coeffs(Z, {0: Fraction(3)})
    assert content_ideal(Z, f).num == 3


def test_content_ideal_quadratic():
    QO = QuadraticOrderDomain(-3)
    f = fn_from_coeffs(QO, {0: QO.elem(2), 1: QO.elem(1, 1)})
    C = content_ideal(QO, f)
    assert C.eq(QO.frac_from_elems([QO.elem(2), QO.elem(1, 1)]))


def test_in_N_for_one(D2):
    one = fn_from_coeffs(D2, {0: Poly.const(2, 1)})
    for star in (identity_star(D2), v_star(D2), gcd_split_star(D2)):
        assert in_multiplicative_set_N(star, one)


def test_in_N_content_maximal(D2):
    X, Y, T = XYT(D2)
    h = X + Y * T
    assert in_multiplicative_set_N(v_star(D2), h)
    assert not in_multiplicative_set_N(identity_star(D2), h)


def test_N_multiplicative_saturated(D2):
    # h1*h2 in N iff both factors are (sampled instances).
    X, Y, T = XYT(D2)
    v = v_star(D2)
    h1 = X + Y * T
    h2 = Y + X * T
    both = h1 * h2
    assert in_multiplicative_set_N(v, h1) and in_multiplicative_set_N(v, h2)
    assert in_multiplicative_set_N(v, both)
    bad = lift_poly(XY(D2)[0]) * h1  # content picks up a factor of X
    assert not in_multiplicative_set_N(v, bad)


# ---------------------------------------------------------------------------
# na_member
# ---------------------------------------------------------------------------


def test_na_member_trivial_quotient(D2):
    X, Y, T = XYT(D2)
    g = X + Y * T
    z = fn_elem(D2, (X * T + Y * Y) * g, g)
    cert = na_member(identity_star(D2), z)
    assert cert.verdict == "yes"


def test_na_member_one_over_content_poly(D2):
    X, Y, T = XYT(D2)
    one = fn_from_coeffs(D2, {0: Poly.const(2, 1)})
    g = X + Y * T
    z = fn_elem(D2, one, g)
    assert na_member(v_star(D2), z).verdict == "yes"
    cert = na_member(identity_star(D2), z)
    assert cert.verdict == "no"
    assert cert.route == "colon-content"


def test_na_member_colon_witness_reverifies(D2):
    X, Y, T = XYT(D2)
    # X*Y / (X^2 + Y^2*T): in Na(D, v)? The colon content is (X, Y)-adjacent.
    f = X * Y
    g = X * X + Y * Y * T
    cert = na_member(v_star(D2), fn_elem(D2, f, g))
    # (g : f) has content whose v-closure is D, so membership holds with an
    # explicit degree-spread witness.
    assert cert.verdict == "yes"
    assert cert.witness and "h" in cert.witness


def test_na_member_strictness_element(D2):
    # The classical witness for Na != Kr under d: XY/(X^2 + Y^2*T).
    X, Y, T = XYT(D2)
    z = fn_elem(D2, X * Y, X * X + Y * Y * T)
    assert na_member(identity_star(D2), z).verdict == "no"


def test_na_member_quadratic_constant_denominator():
    QO = QuadraticOrderDomain(-3)
    v = v_star(QO)
    # (1+w)/2 has colon ideal (2, 1+w) whose v-closure misses 1.
    half = fn_from_coeffs(QO, {0: QO.elem(1, 1)})
    two = fn_from_coeffs(QO, {0: QO.elem(2)})
    cert = na_member(v, fn_elem(QO, half, two))
    assert cert.verdict == "no"
    # 3/w is fine: (w)/3... w*w = -3, so 3/w = -w, integral.
    three = fn_from_coeffs(QO, {0: QO.elem(3)})
    womega = fn_from_coeffs(QO, {0: QO.omega()})
    assert na_member(v, fn_elem(QO, three, womega)).verdict == "yes"


def test_na_member_quadratic_content_route():
    QO = QuadraticOrderDomain(-3)
    v = v_star(QO)
    # Denominator 2 + (1+w)Xt has content the conductor prime: not in N(v).
    g = fn_from_coeffs(QO, {0: QO.elem(2), 1: QO.elem(1, 1)})
    one = fn_from_coeffs(QO, {0: QO.elem(1)})
    cert = na_member(v, fn_elem(QO, one, g))
    assert cert.verdict in ("no", "unknown")
    # Multiples of the denominator reduce and come back "yes".
    f = fn_from_coeffs(QO, {0: QO.elem(0, 3), 1: QO.elem(5)})
    from semistar.function_rings import fn_mul

    cert2 = na_member(v, fn_elem(QO, fn_mul(QO, f, g), g))
    assert cert2.verdict == "yes"


# ---------------------------------------------------------------------------
# kr_member
# ---------------------------------------------------------------------------


def test_kr_member_polynomial(D2):
    X, Y, T = XYT(D2)
    f = fn_elem(D2, X * T + Y, Poly.const(3, 1))
    assert kr_member(identity_star(D2), f).verdict == "yes"


def test_kr_member_witness_search(D2):
    X, Y, T = XYT(D2)
    z = fn_elem(D2, X * Y, X * X + Y * Y * T)
    cert = kr_member(identity_star(D2), z, {"power": 2})
    assert cert.verdict == "yes"
    assert cert.route in ("witness-search", "h1")


def test_kr_member_valuation_obstruction(D2):
    X, Y, T = XYT(D2)
    z = fn_elem(D2, X, Y)
    v_obstruction = ValuationSpec("w01", "monomial_weight", ((Fraction(0), Fraction(1)),))
    cert = kr_member(identity_star(D2), z,
                     {"power": 1, "obstructions": [v_obstruction]})
    assert cert.verdict == "no"
    assert cert.witness["obstruction"] == "w01"


def test_kr_member_unknown_without_budget(D2):
    X, Y, T = XYT(D2)
    z = fn_elem(D2, X, Y)
    cert = kr_member(identity_star(D2), z, {"power": 1})
    assert cert.verdict == "unknown"


def test_kr_member_valfam(D2):
    X, Y = XY(D2)
    fam = make_builtin(
        D2, "valfam",
        valuations=[ValuationSpec("wY", "dvr", (Y,)),
                    ValuationSpec("vX", "lex_monomial", (((1, 0), (0, 1)),))],
    )
    Xl, Yl, T = XYT(D2)
    ok = fn_elem(D2, Xl * Yl, Xl * Xl + Yl * Yl * T)
    assert kr_member(fam, ok).verdict == "yes"
    bad = fn_elem(D2, Yl, Xl)
    cert = kr_member(fam, bad)
    assert cert.verdict == "no"
    assert cert.witness["obstruction"] == "vX"


def test_na_subset_kr_on_samples(D2):
    X, Y, T = XYT(D2)
    v = v_star(D2)
    samples = [
        fn_elem(D2, X * Y, X * X + Y * Y * T),
        fn_elem(D2, Poly.const(3, 1), X + Y * T),
        fn_elem(D2, X + Y * T, Y + X * T),
    ]
    for z in samples:
        if na_member(v, z).verdict == "yes":
            assert kr_member(v, z, {"power": 2}).verdict == "yes"


# ---------------------------------------------------------------------------
# extension / contraction oracles
# ---------------------------------------------------------------------------


def test_extend_contract_na_closed_ideal(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X])
    oracle = extend_contract_na(identity_star(D2), E)
    assert oracle.contains(elem(D2, X))
    assert not oracle.contains(elem(D2, Y))
    assert not oracle.contains(D2.one())


def test_extend_contract_na_matches_w(D2):
    X, Y = XY(D2)
    v = v_star(D2)
    E = D2.frac_from_polys([X * X, X * Y])
    na_oracle = extend_contract_na(v, E)
    w = star_w_of(v).apply(E).oracle
    probes = [
        elem(D2, X), elem(D2, Y), elem(D2, X * Y), elem(D2, X, Y),
        elem(D2, X * X), D2.one(), elem(D2, X + Y),
    ]
    for z in probes:
        assert na_oracle.contains(z) == w.contains(z)
    assert na_oracle.contains(elem(D2, X))


def test_extend_contract_na_quadratic():
    QO = QuadraticOrderDomain(-3)
    v = v_star(QO)
    P2 = QO.frac_from_elems([QO.elem(2), QO.elem(1, 1)])
    oracle = extend_contract_na(v, P2)
    assert not oracle.contains(QO.one())
    assert oracle.contains(QO.elem(2))


def test_extend_contract_kr_newton_pin(D2):
    X, Y = XY(D2)
    d = identity_star(D2)
    E = D2.frac_from_polys([X * X, Y * Y])
    M = D2.frac_from_polys([X, Y])
    oracle = extend_contract_kr(d, E, {"power": 1, "aux": [M], "upper": "newton"})
    assert oracle.grade == "exact"
    expected = D2.frac_from_polys([X * X, X * Y, Y * Y])
    assert oracle.presentation.eq(expected)
    assert newton_closure_monomial(E.num) == expected.num
    assert oracle.contains(elem(D2, X * Y))


def test_extend_contract_kr_principal(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X * Y])
    oracle = extend_contract_kr(identity_star(D2), E, {"power": 1})
    assert oracle.presentation.eq(E)


def test_extend_contract_kr_gcd_split_pinned_to_t(D2):
    X, Y = XY(D2)
    star = gcd_split_star(D2)
    E = D2.frac_from_polys([X * X, X * Y])
    oracle = extend_contract_kr(star, E, {"power": 1,
                                          "aux": [D2.frac_from_polys([X, Y])],
                                          "upper": "t"})
    assert oracle.grade == "exact"
    assert oracle.presentation.eq(D2.frac_from_polys([X]))


# ---------------------------------------------------------------------------
# maximal trace / bezout / Nagata equality
# ---------------------------------------------------------------------------


def test_na_maximal_trace_v(D2):
    ps = primes_xy(D2)
    out = na_maximal_trace(v_star(D2), [ps["pX"], ps["pY"], ps["N"]])
    assert set(out["maximals"]) == {"pX", "pY"}
    for record in out["verifications"].values():
        assert record["content_poly_outside_N"]
        assert record["extension_misses_1"]


def test_na_maximal_trace_gcd_split(D2):
    ps = primes_xy(D2)
    out = na_maximal_trace(gcd_split_star(D2),
                           [ps["pX"], ps["pY"], ps["pXmY"], ps["N"]])
    assert out["maximals"] == ["N"]


def test_na_maximal_trace_integers():
    Z5 = IntegerDomain(5)
    cands = [
        PrimeIdeal("p3", Z5.frac_from_elems([Fraction(3)]), "integer-prime"),
        PrimeIdeal("p5", Z5.frac_from_elems([Fraction(5)]), "integer-prime"),
    ]
    out = na_maximal_trace(v_star(Z5), cands)
    assert out["maximals"] == ["p5"]


def test_na_maximal_trace_quadratic():
    QO = QuadraticOrderDomain(-3)
    cands = [
        PrimeIdeal("p2", QO.frac_from_elems([QO.elem(2), QO.elem(1, 1)]), "norm-form"),
        PrimeIdeal("p3", QO.frac_from_elems([QO.omega()]), "norm-form"),
        PrimeIdeal("p5", QO.frac_from_elems([QO.elem(5)]), "norm-form"),
    ]
    out = na_maximal_trace(v_star(QO), cands)
    assert set(out["maximals"]) == {"p2", "p3", "p5"}
    for record in out["verifications"].values():
        assert record["content_poly_outside_N"] and record["extension_misses_1"]


def test_kr_bezout_combine(D2):
    X, Y, T = XYT(D2)
    out = kr_bezout_combine(X, Y, identity_star(D2), {"power": 2})
    assert out["content_sum"]
    assert out["f_over_h"].verdict == "yes"
    assert out["g_over_h"].verdict == "yes"


def test_na_equal_iff_M_equal_case(D2):
    ps = primes_xy(D2)
    cands = [ps["pX"], ps["pY"], ps["pXmY"], ps["N"]]
    X, Y, T = XYT(D2)
    samples = [
        fn_elem(D2, X * Y, X * X + Y * Y * T),
        fn_elem(D2, Poly.const(3, 1), Poly.const(3, 1) + X * T),
    ]
    out = na_equal_iff_M(identity_star(D2), gcd_split_star(D2), cands, samples)
    assert out["equal"]
    assert out["sampled_agreement"]


def test_na_equal_iff_M_separated(D2):
    ps = primes_xy(D2)
    cands = [ps["pX"], ps["pY"], ps["N"]]
    out = na_equal_iff_M(identity_star(D2), v_star(D2), cands)
    assert not out["equal"]
    sep = out["separator"]
    assert sep is not None
    assert sep["verdicts"]["d"] == "no"
    assert sep["verdicts"]["v"] == "yes"
    assert sep["prime"] == "N"


def test_spread_from_ideal_roundtrip(D2):
    X, Y = XY(D2)
    E = D2.frac_from_polys([X, Y])
    f = spread_from_ideal(D2, E)
    assert content_ideal(D2, f).eq(E)
    assert kr_content_poly(D2, E) is not None
