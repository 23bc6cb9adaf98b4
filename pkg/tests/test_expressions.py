from fractions import Fraction

import pytest

from semistar.domains import (
    FractionalIdeal,
    PolyLocalDomain,
    PrimeIdeal,
    QuadraticOrderDomain,
    ValuationSpec,
)
from semistar.expressions import (
    Context,
    ExpressionError,
    parse_element,
    parse_expression,
    parse_fn_element,
    parse_ideal,
    parse_operation,
)
from semistar.operations import SemistarOp
from semistar.polys import Poly


@pytest.fixture
def ctx():
    dom = PolyLocalDomain(("X", "Y"), "monomial")
    c = Context(dom)
    X = Poly.variable(2, 0)
    Y = Poly.variable(2, 1)
    c.names["pX"] = PrimeIdeal("pX", dom.frac_from_polys([X]), "principal-irreducible")
    c.names["pY"] = PrimeIdeal("pY", dom.frac_from_polys([Y]), "principal-irreducible")
    c.names["wY"] = ValuationSpec("wY", "dvr", (Y,))
    return c


def test_parse_ideal(ctx):
    E = parse_ideal("ideal(X^2, X*Y)", ctx)
    X = Poly.variable(2, 0)
    Y = Poly.variable(2, 1)
    assert E.eq(ctx.domain.frac_from_polys([X * X, X * Y]))


def test_parse_frac_ideal(ctx):
    E = parse_ideal("frac(ideal(X^2, X*Y), X)", ctx)
    X = Poly.variable(2, 0)
    Y = Poly.variable(2, 1)
    assert E.eq(ctx.domain.frac_from_polys([X, Y]))


def test_parse_element_arithmetic(ctx):
    z = parse_element("(X + Y)^2 / (2*X)", ctx)
    X = Poly.variable(2, 0)
    Y = Poly.variable(2, 1)
    expected_num = (X + Y) * (X + Y)
    assert (z.num * X.scale(2)) == (expected_num * z.den)


def test_parse_negative_power(ctx):
    z = parse_element("X^-1", ctx)
    assert z.num.is_constant()
    assert z.den == Poly.variable(2, 0)


def test_parse_fn_element(ctx):
    e = parse_fn_element("(X*Y)/(X^2 + Y^2*Xt)", ctx)
    assert e.num.nvars == 3
    assert e.den.degree_in(2) == 1


def test_fn_variable_rejected_in_ideal(ctx):
    with pytest.raises(ExpressionError):
        parse_ideal("ideal(Xt)", ctx)


def test_parse_ops(ctx):
    for text in ("d", "v", "t", "b", "ex53", "w(v)", "fin(v)", "a(d, budget=2)",
                 "tilde(v, [pX, pY])", "spectral([pX])", "extend(localize(pX))",
                 "extend(localize(X))", "valfam([wY], primes=[pY])"):
        op = parse_operation(text, ctx)
        assert isinstance(op, SemistarOp), text
    assert parse_operation("fin(v)", ctx).name == "t"


def test_parse_dual(ctx):
    E = parse_ideal("dual(ideal(X, Y))", ctx)
    assert E.eq(ctx.domain.one_ideal())


def test_parse_errors(ctx):
    with pytest.raises(ExpressionError):
        parse_expression("ideal(X,, Y)", ctx)
    with pytest.raises(ExpressionError):
        parse_expression("unknown_fn(X)", ctx)
    with pytest.raises(ExpressionError):
        parse_expression("Z + 1", ctx)
    with pytest.raises(ExpressionError):
        parse_expression("X +", ctx)
    with pytest.raises(ExpressionError):
        parse_expression("1/0", ctx)
    from semistar.operations import OperationError

    with pytest.raises(OperationError):
        parse_operation("tilde(v, [])", ctx)


def test_quadratic_context():
    dom = QuadraticOrderDomain(-3)
    ctx = Context(dom)
    z = parse_element("(1 + w)/2", ctx)
    assert z.x == Fraction(1, 2) and z.y == Fraction(1, 2)
    E = parse_ideal("ideal(2, 1 + w)", ctx)
    assert E.num.index() == 2
    w2 = parse_element("w^2", ctx)
    assert w2.x == -3 and w2.y == 0
    fn = parse_fn_element("(1 + w)/(2 + w*Xt)", ctx)
    assert fn.render()


def test_operation_flags_surface(ctx):
    fam = parse_operation("valfam([wY], primes=[pY])", ctx)
    assert fam.flags.eab_claimed
    sp = parse_operation("spectral([pX])", ctx)
    assert sp.flags.stable_claimed
