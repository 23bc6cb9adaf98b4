"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a finite map from exponent vectors to nonzero rational
coefficients:

    Poly.terms : dict[tuple[int, ...], Fraction]

One slot per variable; the zero polynomial has an empty term map.  All
coefficient arithmetic is exact (``fractions.Fraction``), so equality of
polynomials and of the ideals built from them is fully reliable.

Monomial orders are value objects (lex, degrevlex, elimination block
orders).  An order exposes a sort ``key`` on exponent vectors such that
the leading monomial is the one with the largest key.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

Exponent = tuple[int, ...]


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms", "_key")

    def __init__(self, nvars: int, terms: dict[Exponent, Fraction]):
        self.nvars = nvars
        cleaned: dict[Exponent, Fraction] = {}
        for exp, coeff in terms.items():
            if len(exp) != nvars:
                raise ValueError(f"exponent arity {len(exp)} != {nvars}")
            if coeff != 0:
                cleaned[exp] = Fraction(coeff)
        self.terms = cleaned
        self._key: tuple | None = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        c = Fraction(value)
        return cls(nvars, {} if c == 0 else {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "Poly":
        if not 0 <= idx < nvars:
            raise ValueError(f"variable index {idx} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[idx] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Exponent, coeff=1) -> "Poly":
        return cls(len(exp), {tuple(exp): Fraction(coeff)})

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def degree_in(self, idx: int) -> int:
        if not self.terms:
            return -1
        return max(exp[idx] for exp in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self, order: "MonomialOrder | None" = None) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending monomial order (degrevlex by default)."""
        order = order or DEGREVLEX
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def iter_terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(sorted(self.terms.items()))

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_monomial(self, exp: Exponent, coeff=1) -> "Poly":
        """Multiply by a single monomial (cheaper than full product)."""
        c = Fraction(coeff)
        return Poly(
            self.nvars,
            {tuple(x + y for x, y in zip(e, exp)): k * c for e, k in self.terms.items()},
        )

    # -- leading data ------------------------------------------------

    def lead(self, order: "MonomialOrder") -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def monic(self, order: "MonomialOrder") -> "Poly":
        _, c = self.lead(order)
        return self.scale(Fraction(1) / c)

    # -- exact division ----------------------------------------------

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        """Return self / divisor if the division is exact, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = DEGREVLEX if divisor.nvars > 0 else LEX
        quotient = Poly.zero(self.nvars)
        rem = self
        dexp, dcoeff = divisor.lead(order)
        while not rem.is_zero():
            rexp, rcoeff = rem.lead(order)
            qexp = tuple(a - b for a, b in zip(rexp, dexp))
            if any(e < 0 for e in qexp):
                return None
            piece = Poly.monomial(qexp, rcoeff / dcoeff)
            quotient = quotient + piece
            rem = rem - divisor * piece
        return quotient

    def divides(self, other: "Poly") -> bool:
        return other.exact_div(self) is not None

    # -- variable plumbing -------------------------------------------

    def prepend_vars(self, k: int) -> "Poly":
        """Add k fresh zero-exponent slots at the front."""
        return Poly(self.nvars + k, {(0,) * k + e: c for e, c in self.terms.items()})

    def drop_front_vars(self, k: int) -> "Poly":
        """Remove the first k slots; they must all carry exponent 0."""
        for exp in self.terms:
            if any(exp[i] != 0 for i in range(k)):
                raise ValueError("polynomial actually involves a dropped variable")
        return Poly(self.nvars - k, {e[k:]: c for e, c in self.terms.items()})

    def append_vars(self, k: int) -> "Poly":
        return Poly(self.nvars + k, {e + (0,) * k: c for e, c in self.terms.items()})

    def drop_last_vars(self, k: int) -> "Poly":
        for exp in self.terms:
            if any(exp[self.nvars - 1 - i] != 0 for i in range(k)):
                raise ValueError("polynomial actually involves a dropped variable")
        return Poly(self.nvars - k, {e[: self.nvars - k]: c for e, c in self.terms.items()})

    # -- hashing / equality / repr -----------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.nvars, tuple(sorted(self.terms.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.key())

    def to_str(self, names: tuple[str, ...]) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                frag = str(coeff)
            elif coeff == 1:
                frag = body
            elif coeff == -1:
                frag = f"-{body}"
            else:
                frag = f"{coeff}*{body}"
            parts.append(frag)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self.to_str(tuple(f'x{i}' for i in range(self.nvars)))})"


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------


def _degrevlex_key(exp: Iterable[int]) -> tuple:
    exp = tuple(exp)
    return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative order on exponent vectors.

    kind: "lex", "degrevlex", or "elim" with a block split index; an
    elimination order compares the first `split` slots (degrevlex) and
    breaks ties on the remaining slots (degrevlex).
    """

    kind: str
    split: int = 0

    def key(self, exp: Exponent) -> tuple:
        if self.kind == "lex":
            return tuple(exp)
        if self.kind == "degrevlex":
            return _degrevlex_key(exp)
        if self.kind == "elim":
            return (_degrevlex_key(exp[: self.split]), _degrevlex_key(exp[self.split:]))
        raise ValueError(f"unknown order kind {self.kind!r}")

    def greater(self, a: Exponent, b: Exponent) -> bool:
        return self.key(a) > self.key(b)

    def cache_token(self) -> tuple:
        return (self.kind, self.split)


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def elimination_order(split: int) -> MonomialOrder:
    return MonomialOrder("elim", split)


# ---------------------------------------------------------------------------
# Monomial helpers shared by the Groebner engine
# ---------------------------------------------------------------------------


def exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_divides(a: Exponent, b: Exponent) -> bool:
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))
