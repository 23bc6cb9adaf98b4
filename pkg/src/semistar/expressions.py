"""Expression grammar for the workbench CLI and scenario files.

Recursive-descent parser over a small token stream.  Expressions denote
field elements (rational expressions in the backend variables, `w` for
the quadratic generator, `Xt` for the function-ring variable), ideals
(`ideal(X^2, X*Y)`, `frac(ideal(...), X)`), or operations (`v`, `t`,
`d`, `b`, `ex53`, `w(v)`, `fin(s)`, `tilde(s, [p1,p2])`, `a(s, budget=2)`,
`spectral([p1])`, `extend(localize(X))`, `valfam([w1], primes=[p1])`).
Names for primes, valuations and previously defined operations come from
the scenario context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .domains import Domain, FractionalIdeal, PolyRat, PrimeIdeal, ValuationSpec
from .function_rings import (
    RationalFunctionElem,
    fn_elem,
    fn_from_coeffs,
    fn_is_zero,
    fn_mul,
    fn_variable,
    fn_xt_degree,
    lift_poly,
)
from .operations import (
    OperationError,
    SemistarOp,
    extension_star,
    finite_type_closure,
    make_builtin,
    spectral_star,
    star_a_lower_op,
    star_w_of,
    tilde_of,
    valuation_family_star,
)
from .polys import Poly


class ExpressionError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()\[\],=]))")


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExpressionError(f"parse error at position {pos}: {text[pos:pos+12]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num), pos))
        elif name is not None:
            out.append(("name", name, pos))
        else:
            out.append(("op", "^" if op == "**" else op, pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class FnVal:
    """Rational expression over D[Xt] during evaluation: a num/den pair of
    function-ring polynomials for the backend."""

    __slots__ = ("domain", "num", "den")

    def __init__(self, domain: Domain, num, den):
        if fn_is_zero(domain, den):
            raise ExpressionError("division by zero")
        self.domain = domain
        self.num = num
        self.den = den

    @classmethod
    def const(cls, domain: Domain, c: Fraction) -> "FnVal":
        return cls(domain, _fn_const(domain, c), _fn_one(domain))

    def add(self, other: "FnVal", sign: int = 1) -> "FnVal":
        d = self.domain
        left = fn_mul(d, self.num, other.den)
        right = fn_mul(d, other.num, self.den)
        if sign < 0:
            right = _fn_negate(d, right)
        return FnVal(d, _fn_sum(d, left, right), fn_mul(d, self.den, other.den))

    def mul(self, other: "FnVal") -> "FnVal":
        d = self.domain
        return FnVal(d, fn_mul(d, self.num, other.num), fn_mul(d, self.den, other.den))

    def div(self, other: "FnVal") -> "FnVal":
        if fn_is_zero(other.domain, other.num):
            raise ExpressionError("division by zero")
        d = self.domain
        return FnVal(d, fn_mul(d, self.num, other.den), fn_mul(d, self.den, other.num))

    def neg(self) -> "FnVal":
        return FnVal(self.domain, _fn_negate(self.domain, self.num), self.den)

    def pow(self, k: int) -> "FnVal":
        out = FnVal.const(self.domain, Fraction(1))
        base = self
        if k < 0:
            base = FnVal(self.domain, self.den, self.num)
            k = -k
        for _ in range(k):
            out = out.mul(base)
        return out

    def uses_fn_variable(self) -> bool:
        return fn_xt_degree(self.domain, self.num) > 0 or fn_xt_degree(self.domain, self.den) > 0

    def to_element(self):
        """Collapse to a backend field element (no Xt allowed)."""
        if self.uses_fn_variable():
            raise ExpressionError("the function-ring variable cannot appear here")
        d = self.domain
        if d.kind == "poly_local":
            return PolyRat(self.num.drop_last_vars(1), self.den.drop_last_vars(1))
        num = _coeff0(d, self.num)
        den = _coeff0(d, self.den)
        if d.kind == "quadratic_order":
            return num / den
        return Fraction(num) / Fraction(den)

    def to_fn_elem(self) -> RationalFunctionElem:
        return fn_elem(self.domain, self.num, self.den)


def _fn_one(domain: Domain):
    return _fn_const(domain, Fraction(1))


def _fn_const(domain: Domain, c: Fraction):
    if domain.kind == "poly_local":
        return Poly.const(domain.nvars + 1, c)
    if domain.kind == "quadratic_order":
        return {0: domain.elem(c)} if c != 0 else {}
    return {0: Fraction(c)} if c != 0 else {}


def _fn_sum(domain: Domain, a, b):
    if domain.kind == "poly_local":
        return a + b
    out = dict(a)
    for k, c in b.items():
        prev = out.get(k)
        s = c if prev is None else prev + c
        out[k] = s
    if domain.kind == "quadratic_order":
        return {k: c for k, c in out.items() if not c.is_zero()}
    return {k: c for k, c in out.items() if c != 0}


def _fn_negate(domain: Domain, a):
    if domain.kind == "poly_local":
        return -a
    return {k: -c for k, c in a.items()}


def _coeff0(domain: Domain, f):
    if not f:
        return domain.elem(0) if domain.kind == "quadratic_order" else Fraction(0)
    return f.get(0, domain.elem(0) if domain.kind == "quadratic_order" else Fraction(0))


@dataclass
class Context:
    """Name bindings for expression evaluation."""

    domain: Domain
    names: dict = field(default_factory=dict)  # primes, valuations, ops, ideals
    default_aux: list = field(default_factory=list)
    budgets: dict = field(default_factory=dict)

    def lookup(self, name: str):
        return self.names.get(name)


_BUILTIN_OPS = {"d", "v", "t", "b", "ex53", "triv"}


class Parser:
    def __init__(self, text: str, context: Context):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.ctx = context

    # -- token plumbing ----------------------------------------------------

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, op: str):
        kind, val, at = self.advance()
        if kind != "op" or val != op:
            raise ExpressionError(f"expected {op!r} at position {at} in {self.text!r}")

    def at_op(self, *ops) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    # -- grammar -------------------------------------------------------------

    def parse(self):
        value = self.expr()
        kind, _, at = self.peek()
        if kind != "end":
            raise ExpressionError(f"trailing input at position {at} in {self.text!r}")
        return value

    def expr(self):
        value = self.product()
        while self.at_op("+", "-"):
            _, op, _ = self.advance()
            rhs = self.product()
            value = self._as_fnval(value).add(self._as_fnval(rhs), 1 if op == "+" else -1)
        return value

    def product(self):
        value = self.power()
        while self.at_op("*", "/"):
            _, op, _ = self.advance()
            rhs = self.power()
            left, right = self._as_fnval(value), self._as_fnval(rhs)
            value = left.mul(right) if op == "*" else left.div(right)
        return value

    def power(self):
        value = self.unary()
        if self.at_op("^"):
            self.advance()
            sign = 1
            if self.at_op("-"):
                self.advance()
                sign = -1
            kind, k, at = self.advance()
            if kind != "int":
                raise ExpressionError(f"expected integer exponent at position {at}")
            value = self._as_fnval(value).pow(sign * k)
        return value

    def unary(self):
        if self.at_op("-"):
            self.advance()
            return self._as_fnval(self.unary()).neg()
        return self.atom()

    def atom(self):
        kind, val, at = self.advance()
        if kind == "int":
            return FnVal.const(self.ctx.domain, Fraction(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "[":
            items = []
            if not self.at_op("]"):
                items.append(self.expr())
                while self.at_op(","):
                    self.advance()
                    items.append(self.expr())
            self.expect("]")
            return items
        if kind == "name":
            if self.at_op("("):
                return self.call(val, at)
            return self.name_value(val, at)
        raise ExpressionError(f"unexpected token at position {at} in {self.text!r}")

    def call_args(self):
        self.expect("(")
        args, kwargs = [], {}
        if not self.at_op(")"):
            while True:
                kind, val, _ = self.peek()
                if kind == "name" and self.tokens[self.pos + 1][:2] == ("op", "="):
                    self.advance()
                    self.advance()
                    kwargs[val] = self.expr()
                else:
                    args.append(self.expr())
                if self.at_op(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        return args, kwargs

    # -- name and call semantics ----------------------------------------------

    def name_value(self, name: str, at: int):
        dom = self.ctx.domain
        bound = self.ctx.lookup(name)
        if bound is not None:
            return bound
        if name in _BUILTIN_OPS:
            return make_builtin(dom, name)
        if name == "Xt":
            if dom.kind == "poly_local":
                return FnVal(dom, fn_variable(dom), _fn_one(dom))
            one = _fn_one(dom)
            xt = fn_from_coeffs(dom, {1: _coeff0(dom, one)})
            return FnVal(dom, xt, one)
        if dom.kind == "poly_local" and name in dom.var_names:
            idx = dom.var_names.index(name)
            var = lift_poly(Poly.variable(dom.nvars, idx))
            return FnVal(dom, var, _fn_one(dom))
        if dom.kind == "quadratic_order" and name == "w":
            return FnVal(dom, fn_from_coeffs(dom, {0: dom.omega()}), _fn_one(dom))
        raise ExpressionError(f"unbound name {name!r} at position {at}")

    def call(self, name: str, at: int):
        dom = self.ctx.domain
        args, kwargs = self.call_args()
        if name == "ideal":
            elems = [self._as_fnval(a).to_element() for a in args]
            if not elems:
                raise ExpressionError("ideal() needs at least one generator")
            return dom.frac_from_elems(elems)
        if name == "dual":
            E = args[0]
            if not isinstance(E, FractionalIdeal):
                raise ExpressionError("dual(...) needs an ideal")
            return E.dual()
        if name == "frac":
            E = args[0]
            if not isinstance(E, FractionalIdeal):
                raise ExpressionError("frac(ideal, den) needs an ideal first")
            den = self._as_fnval(args[1]).to_element()
            return dom.frac_from_elems(E.gens_elems(), den=den)
        if name == "w":
            return star_w_of(self._as_op(args[0]))
        if name == "fin":
            return finite_type_closure(self._as_op(args[0]))
        if name == "tilde":
            star = self._as_op(args[0])
            mset = self._as_primes(args[1] if len(args) > 1 else [])
            return tilde_of(star, mset, provenance=f"expression {self.text!r}")
        if name == "a":
            star = self._as_op(args[0])
            power = kwargs.get("budget", args[1] if len(args) > 1 else None)
            power_int = self._as_int(power) if power is not None else 2
            return star_a_lower_op(star, {"power": power_int, "aux": list(self.ctx.default_aux)})
        if name == "spectral":
            return spectral_star(dom, self._as_primes(args[0]))
        if name == "extend":
            target = args[0]
            if isinstance(target, tuple) and target[0] == "localize":
                return extension_star(dom, [target[1]])
            raise ExpressionError("extend(...) expects localize(...)")
        if name == "localize":
            return ("localize", self._as_prime(args[0]))
        if name == "valfam":
            vals = args[0]
            if not isinstance(vals, list) or not all(isinstance(v, ValuationSpec) for v in vals):
                raise ExpressionError("valfam needs a list of valuations")
            primes = self._as_primes(kwargs.get("primes", []))
            return valuation_family_star(dom, vals, primes)
        raise ExpressionError(f"unknown function {name!r} at position {at}")

    # -- coercions ---------------------------------------------------------------

    def _as_fnval(self, value) -> FnVal:
        if isinstance(value, FnVal):
            return value
        raise ExpressionError(f"expected an element expression, got {type(value).__name__}")

    def _as_op(self, value) -> SemistarOp:
        if isinstance(value, SemistarOp):
            return value
        raise ExpressionError(f"expected an operation, got {type(value).__name__}")

    def _as_int(self, value) -> int:
        if isinstance(value, FnVal):
            elem = value.to_element()
            if isinstance(elem, PolyRat):
                if elem.num.is_constant() and elem.den.is_constant():
                    elem = elem.num.constant_coeff() / elem.den.constant_coeff()
            elif not isinstance(elem, Fraction):  # quadratic element
                if elem.y == 0:
                    elem = elem.x
            if isinstance(elem, Fraction) and elem.denominator == 1:
                return int(elem)
        raise ExpressionError("expected an integer argument")

    def _as_prime(self, value) -> PrimeIdeal:
        if isinstance(value, PrimeIdeal):
            return value
        if isinstance(value, tuple) and value and value[0] == "localize":
            return value[1]
        if isinstance(value, FnVal):
            elem = value.to_element()
            dom = self.ctx.domain
            prime = PrimeIdeal(f"({dom.elem_render(elem)})",
                               dom.frac_from_elems([elem]), "principal-irreducible")
            if not prime.verify():
                raise ExpressionError("cannot certify the localization center as prime")
            return prime
        raise ExpressionError(f"expected a prime, got {type(value).__name__}")

    def _as_primes(self, value) -> list[PrimeIdeal]:
        if not isinstance(value, list):
            raise ExpressionError("expected a list of primes")
        return [self._as_prime(v) for v in value]


def parse_expression(text: str, context: Context):
    """Parse to an element (FnVal), ideal, operation, prime or valuation."""
    return Parser(text, context).parse()


def parse_element(text: str, context: Context):
    value = parse_expression(text, context)
    if isinstance(value, FnVal):
        return value.to_element()
    return _fail_kind(text, value, "element")


def parse_fn_element(text: str, context: Context) -> RationalFunctionElem:
    value = parse_expression(text, context)
    if isinstance(value, FnVal):
        return value.to_fn_elem()
    return _fail_kind(text, value, "rational function")


def parse_ideal(text: str, context: Context) -> FractionalIdeal:
    value = parse_expression(text, context)
    if isinstance(value, FractionalIdeal):
        return value
    if isinstance(value, FnVal):
        return context.domain.frac_from_elems([value.to_element()])
    return _fail_kind(text, value, "ideal")


def parse_operation(text: str, context: Context) -> SemistarOp:
    value = parse_expression(text, context)
    if isinstance(value, SemistarOp):
        return value
    return _fail_kind(text, value, "operation")


def _fail_kind(text, value, wanted):
    raise ExpressionError(f"{text!r} is a {type(value).__name__}, expected {wanted}")
