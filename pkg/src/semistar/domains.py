"""Concrete integral-domain backends and their fractional ideals.

Three backends, one protocol:

* ``IntegerDomain``       -- Z, or Z localized at a prime.  Every finitely
  generated fractional ideal is principal; arithmetic is gcd arithmetic.
* ``QuadraticOrderDomain`` -- Z[w] with w = sqrt(d), d a non-square.
  Ideals are rank-2 lattices in Hermite normal form (:mod:`quadratic`).
* ``PolyLocalDomain``     -- a polynomial ring over Q, optionally localized
  at a certified prime center (the monomial maximal ideal or a principal
  prime).  Ideal services run through the Groebner engine.

A ``FractionalIdeal`` stores an integral numerator plus a denominator
element; all comparisons clear denominators and are exact.  Membership of
a field element z in E*D_P (localize-and-contract) reduces to a colon
ideal not being contained in P, which each backend decides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Optional

from .ideals import PolyIdeal, poly_gcd, poly_gcd_many
from .newton import newton_closure_monomial
from .polys import DEGREVLEX, Poly
from .quadratic import QuadElem, QuadLattice


class DomainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------


class PolyRat:
    """Element num/den of the rational function field of a poly backend."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def reduced(self) -> "PolyRat":
        if self.num.is_zero():
            return PolyRat(Poly.zero(self.num.nvars), Poly.const(self.den.nvars, 1))
        g = poly_gcd(self.num, self.den)
        num = self.num.exact_div(g)
        den = self.den.exact_div(g)
        lead = den.lead(DEGREVLEX)[1]
        return PolyRat(num.scale(Fraction(1) / lead), den.scale(Fraction(1) / lead))

    def __add__(self, other: "PolyRat") -> "PolyRat":
        return PolyRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "PolyRat") -> "PolyRat":
        return PolyRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "PolyRat":
        return PolyRat(-self.num, self.den)

    def __mul__(self, other: "PolyRat") -> "PolyRat":
        return PolyRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "PolyRat") -> "PolyRat":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero element")
        return PolyRat(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "PolyRat":
        if n < 0:
            return PolyRat(self.den, self.num) ** (-n)
        return PolyRat(self.num ** n, self.den ** n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRat) and (self.num * other.den) == (other.num * self.den)

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.num.key(), r.den.key()))

    def __repr__(self) -> str:
        return f"PolyRat({self.num!r}/{self.den!r})"


# ---------------------------------------------------------------------------
# Fractional ideals (payload is backend-specific)
# ---------------------------------------------------------------------------


@dataclass
class FractionalIdeal:
    """(1/den) * (integral numerator ideal); exact semantics via the domain."""

    domain: "Domain"
    num: object  # PolyIdeal | QuadLattice | Fraction
    den: object  # Poly | int | Fraction(1)

    # Convenience delegates: the domain owns the semantics.

    def mul(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return self.domain.frac_mul(self, other)

    def add(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return self.domain.frac_add(self, other)

    def intersect(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return self.domain.frac_intersect(self, other)

    def colon(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return self.domain.frac_colon(self, other)

    def dual(self) -> "FractionalIdeal":
        return self.domain.frac_dual(self)

    def scale(self, z) -> "FractionalIdeal":
        return self.domain.frac_scale(self, z)

    def power(self, n: int) -> "FractionalIdeal":
        out = self.domain.one_ideal()
        for _ in range(n):
            out = out.mul(self)
        return out

    def normalize(self) -> "FractionalIdeal":
        return self.domain.frac_normalize(self)

    def contains_elem(self, z) -> bool:
        return self.domain.frac_contains_elem(self, z)

    def contains_ideal(self, other: "FractionalIdeal") -> bool:
        return self.domain.frac_contains_ideal(self, other)

    def eq(self, other: "FractionalIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_integral(self) -> bool:
        return self.domain.frac_is_integral(self)

    def gens_elems(self) -> list:
        return self.domain.frac_gens_elems(self)

    def render(self) -> str:
        return self.domain.frac_render(self)

    def __repr__(self) -> str:
        return f"FractionalIdeal({self.render()})"


@dataclass
class PrimeIdeal:
    """Certified prime of the backend; asserted primes are surfaced as such."""

    name: str
    ideal: FractionalIdeal
    certificate: str
    provenance: str = ""

    def verify(self) -> bool:
        return self.ideal.domain.verify_prime(self)


@dataclass
class IdealOracle:
    """Membership procedure for a D-submodule of K, with optional presentation.

    grade "exact": membership answers are definitive and the presentation
    (when given) generates exactly the represented module.  grade
    "lower-bound": yes-answers are certified, the true module may be larger.
    """

    domain: "Domain"
    member: Callable[[object], bool]
    presentation: Optional[FractionalIdeal] = None
    grade: str = "exact"
    all_K: bool = False
    tag: str = ""
    note: str = ""

    def contains(self, z) -> bool:
        if self.all_K:
            return True
        return self.member(z)

    @classmethod
    def from_ideal(cls, E: FractionalIdeal, tag: str = "") -> "IdealOracle":
        return cls(E.domain, E.contains_elem, presentation=E, grade="exact", tag=tag)

    @classmethod
    def whole_field(cls, domain: "Domain") -> "IdealOracle":
        return cls(domain, lambda z: True, presentation=None, grade="exact", all_K=True, tag="all-of-K")


# ---------------------------------------------------------------------------
# Valuations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValuationSpec:
    """Computable valuation overring of a poly or integer backend.

    kinds: "monomial_weight" (payload: tuple of Fractions, values in Q),
    "lex_monomial" (payload: two integer weight rows, values in Z^2 lex),
    "dvr" (payload: principal prime element, values in Z).
    """

    name: str
    kind: str
    payload: tuple

    def render(self) -> str:
        return f"{self.name}:{self.kind}"


def _poly_weight_min(p: Poly, weights: tuple[Fraction, ...]):
    return min(sum(w * e for w, e in zip(weights, exp)) for exp in p.terms)


def _poly_lex_min(p: Poly, rows) -> tuple:
    r1, r2 = rows
    return min(
        (sum(a * e for a, e in zip(r1, exp)), sum(a * e for a, e in zip(r2, exp)))
        for exp in p.terms
    )


def _poly_ord_along(p: Poly, f: Poly) -> int:
    order = 0
    current = p
    while True:
        q = current.exact_div(f)
        if q is None:
            return order
        order += 1
        current = q


def valuation_value(domain: "Domain", spec: ValuationSpec, z):
    """Exact value of a nonzero field element under the valuation."""
    if domain.kind == "integers":
        if z == 0:
            raise DomainError("valuation of zero")
        (p,) = spec.payload
        return Fraction(_int_ord(z, p))
    if not isinstance(z, PolyRat) or z.is_zero():
        raise DomainError("valuation of zero or foreign element")
    if spec.kind == "monomial_weight":
        (weights,) = spec.payload
        return _poly_weight_min(z.num, weights) - _poly_weight_min(z.den, weights)
    if spec.kind == "lex_monomial":
        (rows,) = spec.payload
        a = _poly_lex_min(z.num, rows)
        b = _poly_lex_min(z.den, rows)
        return (a[0] - b[0], a[1] - b[1])
    if spec.kind == "dvr":
        (f,) = spec.payload
        return _poly_ord_along(z.num, f) - _poly_ord_along(z.den, f)
    raise DomainError(f"unknown valuation kind {spec.kind}")


def _value_zero_like(value):
    return (0, 0) if isinstance(value, tuple) else 0


def valuation_nonnegative(domain, spec, z) -> bool:
    v = valuation_value(domain, spec, z)
    return v >= _value_zero_like(v)


def valuation_min_over_ideal(domain: "Domain", spec: ValuationSpec, E: FractionalIdeal):
    """Value of E*V: the minimum value over generators."""
    return min(valuation_value(domain, spec, g) for g in E.gens_elems())


def _int_ord(z: Fraction, p: int) -> int:
    z = Fraction(z)
    if z == 0:
        raise DomainError("order of zero")
    k = 0
    num, den = z.numerator, z.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


# ---------------------------------------------------------------------------
# Backends
# ---------------------------------------------------------------------------


class Domain:
    kind = "abstract"
    name = "D"

    # -- subclass protocol (elements) ---------------------------------
    def one(self):
        raise NotImplementedError

    def elem_in_D(self, z) -> bool:
        raise NotImplementedError

    def elem_is_unit(self, z) -> bool:
        raise NotImplementedError

    def elem_is_zero(self, z) -> bool:
        raise NotImplementedError

    def elem_render(self, z) -> str:
        raise NotImplementedError

    # -- subclass protocol (ideals) ------------------------------------
    def frac_from_elems(self, gens: list, den=None) -> FractionalIdeal:
        raise NotImplementedError

    def one_ideal(self) -> FractionalIdeal:
        return self.frac_from_elems([self.one()])

    # Every other frac_* method is backend-specific below.

    def verify_prime(self, prime: PrimeIdeal) -> bool:
        raise NotImplementedError

    def localize_contract(self, E: FractionalIdeal, P: PrimeIdeal) -> IdealOracle:
        """The module E*D_P with exact membership; presentation = contraction
        to D when the backend can certify it."""
        raise NotImplementedError

    def render(self) -> str:
        return self.name


# -- integers ---------------------------------------------------------------


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class IntegerDomain(Domain):
    """Z, or Z_(p) when localized at a prime p; ideals are principal."""

    kind = "integers"

    def __init__(self, localize_at: int | None = None):
        if localize_at is not None and not _is_prime_int(localize_at):
            raise DomainError(f"localization center {localize_at} is not prime")
        self.p = localize_at
        self.name = f"Z_({localize_at})" if localize_at else "Z"

    def one(self):
        return Fraction(1)

    def elem_is_zero(self, z) -> bool:
        return Fraction(z) == 0

    def elem_in_D(self, z) -> bool:
        z = Fraction(z)
        if self.p is None:
            return z.denominator == 1
        return z.denominator % self.p != 0

    def elem_is_unit(self, z) -> bool:
        z = Fraction(z)
        if z == 0:
            return False
        if self.p is None:
            return abs(z) == 1
        return _int_ord(z, self.p) == 0

    def elem_render(self, z) -> str:
        return str(Fraction(z))

    def _canonical_gen(self, gens: list[Fraction]) -> Fraction:
        gens = [Fraction(g) for g in gens if g != 0]
        if not gens:
            raise DomainError("zero ideal")
        if self.p is not None:
            k = min(_int_ord(g, self.p) for g in gens)
            return Fraction(self.p) ** k
        lcm_den = 1
        for g in gens:
            lcm_den = lcm_den * g.denominator // gcd(lcm_den, g.denominator)
        num = 0
        for g in gens:
            num = gcd(num, int(g * lcm_den))
        return Fraction(num, lcm_den)

    def frac_from_elems(self, gens, den=None) -> FractionalIdeal:
        gens = [Fraction(g) for g in gens]
        if den is not None:
            d = Fraction(den)
            gens = [g / d for g in gens]
        return FractionalIdeal(self, self._canonical_gen(gens), Fraction(1))

    def frac_mul(self, E, F):
        return FractionalIdeal(self, self._canonical_gen([E.num * F.num]), Fraction(1))

    def frac_add(self, E, F):
        return FractionalIdeal(self, self._canonical_gen([E.num, F.num]), Fraction(1))

    def frac_intersect(self, E, F):
        if self.p is not None:
            k = max(_int_ord(E.num, self.p), _int_ord(F.num, self.p))
            return FractionalIdeal(self, Fraction(self.p) ** k, Fraction(1))
        a, b = E.num, F.num
        l = abs(a * b) / self._canonical_gen([a, b])
        return FractionalIdeal(self, l, Fraction(1))

    def frac_colon(self, E, F):
        return FractionalIdeal(self, self._canonical_gen([E.num / F.num]), Fraction(1))

    def frac_dual(self, E):
        return FractionalIdeal(self, self._canonical_gen([1 / E.num]), Fraction(1))

    def frac_scale(self, E, z):
        return FractionalIdeal(self, self._canonical_gen([E.num * Fraction(z)]), Fraction(1))

    def frac_normalize(self, E):
        return FractionalIdeal(self, self._canonical_gen([E.num]), Fraction(1))

    def frac_contains_elem(self, E, z) -> bool:
        return self.elem_in_D(Fraction(z) / E.num)

    def frac_contains_ideal(self, E, F) -> bool:
        return self.frac_contains_elem(E, F.num)

    def frac_is_integral(self, E) -> bool:
        return self.elem_in_D(E.num)

    def frac_gens_elems(self, E) -> list:
        return [E.num]

    def frac_render(self, E) -> str:
        return f"({E.num})"

    def verify_prime(self, prime: PrimeIdeal) -> bool:
        g = prime.ideal.num
        if prime.certificate == "integer-prime":
            return g.denominator == 1 and _is_prime_int(int(g))
        return prime.certificate == "user-asserted"

    def _prime_int(self, P: PrimeIdeal) -> int:
        return int(P.ideal.num)

    def ideal_in_prime(self, E: FractionalIdeal, P: PrimeIdeal) -> bool:
        return _int_ord(E.num, self._prime_int(P)) >= 1

    def localize_contract(self, E, P) -> IdealOracle:
        q = self._prime_int(P)
        k = _int_ord(E.num, q)

        def member(z) -> bool:
            return Fraction(z) != 0 and _int_ord(Fraction(z), q) >= k

        pres = FractionalIdeal(self, Fraction(q) ** k, Fraction(1))
        return IdealOracle(self, member, presentation=pres, grade="exact", tag=f"localize@{q}")


# -- quadratic order --------------------------------------------------------


class QuadraticOrderDomain(Domain):
    """Z[w], w = sqrt(d); ideals are HNF lattices over {1, w}."""

    kind = "quadratic_order"

    def __init__(self, d: int):
        if d == 0 or d == 1 or (d > 0 and isqrt(d) ** 2 == d):
            raise DomainError(f"d = {d} is a square; not a quadratic order")
        self.d = d
        self.name = f"Z[sqrt({d})]"

    def elem(self, x, y=0) -> QuadElem:
        return QuadElem.make(self.d, x, y)

    def one(self):
        return self.elem(1)

    def omega(self):
        return self.elem(0, 1)

    def elem_is_zero(self, z) -> bool:
        return z.is_zero()

    def elem_in_D(self, z: QuadElem) -> bool:
        return z.is_integral()

    def elem_is_unit(self, z: QuadElem) -> bool:
        return z.is_integral() and abs(z.norm()) == 1

    def elem_render(self, z) -> str:
        return z.render("w")

    def frac_from_elems(self, gens, den=None) -> FractionalIdeal:
        gens = [g for g in gens if not g.is_zero()]
        if den is not None and not den.is_zero():
            gens = [g / den for g in gens]
        lat, d0 = QuadLattice.from_elements(self.d, gens)
        return self._normalized(lat, d0)

    def _normalized(self, lat: QuadLattice, den: int) -> FractionalIdeal:
        g = gcd(gcd(lat.a, gcd(lat.b, lat.c)), den)
        if g > 1:
            lat = QuadLattice(self.d, lat.a // g, lat.b // g, lat.c // g)
            den //= g
        return FractionalIdeal(self, lat, den)

    def frac_mul(self, E, F):
        return self._normalized(E.num.mul(F.num), E.den * F.den)

    def frac_add(self, E, F):
        a = E.num.scale_int(F.den)
        b = F.num.scale_int(E.den)
        return self._normalized(a.add(b), E.den * F.den)

    def frac_intersect(self, E, F):
        a = E.num.scale_int(F.den)
        b = F.num.scale_int(E.den)
        return self._normalized(a.intersect(b), E.den * F.den)

    def frac_colon(self, E, F):
        """(E : F) = intersection of w^{-1}E over lattice generators w of F."""
        out = None
        for w in F.num.basis_elems():
            piece = self.frac_scale(E, self.elem(F.den) / w)
            out = piece if out is None else self.frac_intersect(out, piece)
        return out

    def frac_dual(self, E):
        return self.frac_colon(self.one_ideal(), E)

    def frac_scale(self, E, z: QuadElem):
        if z.is_zero():
            raise DomainError("scaling by zero")
        cols = [b * z for b in E.num.basis_elems()]
        lat, extra = QuadLattice.from_elements(self.d, cols)
        return self._normalized(lat, E.den * extra)

    def frac_normalize(self, E):
        return self._normalized(E.num, E.den)

    def frac_contains_elem(self, E, z: QuadElem) -> bool:
        if z.is_zero():
            return True
        scaled = z * E.den
        return E.num.contains_point(scaled.x, scaled.y)

    def frac_contains_ideal(self, E, F) -> bool:
        return all(self.frac_contains_elem(E, g) for g in self.frac_gens_elems(F))

    def frac_is_integral(self, E) -> bool:
        return all(self.elem_in_D(g) for g in self.frac_gens_elems(E))

    def frac_gens_elems(self, E) -> list:
        return [b * Fraction(1, E.den) for b in E.num.basis_elems()]

    def frac_render(self, E) -> str:
        gens = ", ".join(self.elem_render(g) for g in self.frac_gens_elems(E))
        return f"<{gens}>"

    def verify_prime(self, prime: PrimeIdeal) -> bool:
        E = prime.ideal
        if not self.frac_is_integral(E) or E.den != 1:
            return False
        lat: QuadLattice = E.num
        if prime.certificate == "norm-form":
            idx = lat.index()
            if _is_prime_int(idx):
                return True
            # Inert rational prime: (p) with x^2 - d irreducible mod p.
            root = isqrt(idx)
            if root * root == idx and _is_prime_int(root) and lat == QuadLattice(self.d, root, 0, root):
                p = root
                if p == 2:
                    return False
                return all((x * x - self.d) % p != 0 for x in range(p))
            return False
        return prime.certificate == "user-asserted"

    def ideal_in_prime(self, E: FractionalIdeal, P: PrimeIdeal) -> bool:
        return P.ideal.contains_ideal(E)

    def colon_elem_in_D(self, E: FractionalIdeal, z: QuadElem) -> FractionalIdeal:
        """(E : z) cap D as an integral ideal (lattice arithmetic)."""
        shifted = self.frac_scale(E, z.inverse())
        return self.frac_intersect(shifted, self.one_ideal())

    def localize_contract(self, E, P) -> IdealOracle:
        def member(z: QuadElem) -> bool:
            if z.is_zero():
                return True
            C = self.colon_elem_in_D(E, z)
            return not self.ideal_in_prime(C, P)

        return IdealOracle(self, member, presentation=None, grade="exact", tag=f"localize@{P.name}")


# -- polynomial backends -----------------------------------------------------


class PolyLocalDomain(Domain):
    """Q[vars], optionally localized at the monomial center or a principal prime."""

    kind = "poly_local"

    def __init__(self, var_names: tuple[str, ...], center=None):
        if not var_names:
            raise DomainError("need at least one variable")
        if len(set(var_names)) != len(var_names):
            raise DomainError("duplicate variable names")
        self.var_names = tuple(var_names)
        self.nvars = len(var_names)
        # center: None | ("monomial",) | ("principal", Poly)
        if center is None:
            self.center = None
            self.name = f"Q[{','.join(var_names)}]"
        elif center == "monomial" or center == ("monomial",):
            self.center = ("monomial",)
            self.name = f"Q[{','.join(var_names)}]_({','.join(var_names)})"
        else:
            f = center[1] if isinstance(center, tuple) else center
            if f.total_degree() < 1 or f.constant_coeff() != 0:
                raise DomainError("principal center must be a nonunit through the origin")
            if f.total_degree() > 1:
                raise DomainError(
                    "cannot certify primality of a higher-degree center without factorization"
                )
            self.center = ("principal", f.monic(DEGREVLEX))
            self.name = f"Q[{','.join(var_names)}]_(f)"

    # -- elements -------------------------------------------------------

    def var(self, idx: int) -> PolyRat:
        return PolyRat(Poly.variable(self.nvars, idx), Poly.const(self.nvars, 1))

    def const(self, c) -> PolyRat:
        return PolyRat(Poly.const(self.nvars, c), Poly.const(self.nvars, 1))

    def one(self):
        return self.const(1)

    def elem_is_zero(self, z: PolyRat) -> bool:
        return z.is_zero()

    def poly_is_unit(self, p: Poly) -> bool:
        """Units of D among polynomials."""
        if p.is_zero():
            return False
        if self.center is None:
            return p.is_constant()
        if self.center[0] == "monomial":
            return p.constant_coeff() != 0
        return not self.center[1].divides(p)

    def poly_in_center(self, p: Poly) -> bool:
        if self.center is None:
            raise DomainError("global ring has no center")
        if self.center[0] == "monomial":
            return p.constant_coeff() == 0
        return self.center[1].divides(p)

    def elem_in_D(self, z: PolyRat) -> bool:
        z = z.reduced()
        if z.is_zero():
            return True
        return self.poly_is_unit(z.den)

    def elem_is_unit(self, z: PolyRat) -> bool:
        if z.is_zero():
            return False
        z = z.reduced()
        return self.poly_is_unit(z.den) and self.poly_is_unit(z.num)

    def elem_render(self, z: PolyRat) -> str:
        z = z.reduced()
        num = z.num.to_str(self.var_names)
        if z.den == Poly.const(self.nvars, 1):
            return num
        return f"({num})/({z.den.to_str(self.var_names)})"

    # -- ideal plumbing ---------------------------------------------------

    def frac_from_elems(self, gens: list[PolyRat], den: PolyRat | None = None) -> FractionalIdeal:
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise DomainError("zero ideal")
        if den is not None:
            gens = [g / den for g in gens]
        common = Poly.const(self.nvars, 1)
        for g in gens:
            common = common * g.reduced().den
        polys = []
        for g in gens:
            r = g.reduced()
            q = common.exact_div(r.den)
            polys.append(r.num * q)
        return self.frac_normalize(FractionalIdeal(self, PolyIdeal(polys), common))

    def frac_from_polys(self, gens: list[Poly], den: Poly | None = None) -> FractionalIdeal:
        return FractionalIdeal(self, PolyIdeal(gens), den or Poly.const(self.nvars, 1))

    def frac_mul(self, E, F):
        return FractionalIdeal(self, E.num.mul(F.num), E.den * F.den)

    def frac_add(self, E, F):
        num = E.num.mul_poly(F.den).add(F.num.mul_poly(E.den))
        return FractionalIdeal(self, num, E.den * F.den)

    def frac_intersect(self, E, F):
        num = E.num.mul_poly(F.den).intersect(F.num.mul_poly(E.den))
        return FractionalIdeal(self, num, E.den * F.den)

    def frac_colon(self, E, F):
        """(E : F) = intersection of E * (1/g) over generators g of F."""
        out = None
        for g in F.num.gens:
            piece = FractionalIdeal(self, E.num.mul_poly(F.den), E.den * g)
            out = piece if out is None else self.frac_intersect(out, piece)
        return self.frac_normalize(out)

    def frac_dual(self, E):
        return self.frac_colon(self.one_ideal(), E)

    def frac_scale(self, E, z: PolyRat):
        if z.is_zero():
            raise DomainError("scaling by zero")
        z = z.reduced()
        return self.frac_normalize(
            FractionalIdeal(self, E.num.mul_poly(z.num), E.den * z.den)
        )

    def frac_normalize(self, E):
        num: PolyIdeal = E.num
        den: Poly = E.den
        g = poly_gcd(poly_gcd_many(list(num.gens)), den)
        if g.total_degree() > 0:
            num = PolyIdeal([p.exact_div(g) for p in num.gens])
            den = den.exact_div(g)
        lead = den.lead(DEGREVLEX)[1]
        den = den.scale(Fraction(1) / lead)
        return FractionalIdeal(self, PolyIdeal(num.groebner()), den)

    def frac_contains_elem(self, E, z: PolyRat) -> bool:
        if z.is_zero():
            return True
        # z in (1/e)I*D  iff  (I*q : p*e) is not inside the center.
        C = E.num.mul_poly(z.den).colon_poly(z.num * E.den)
        return self._ideal_escapes_center(C)

    def _ideal_escapes_center(self, C: PolyIdeal) -> bool:
        """True if C contains a unit of D (tested on generators)."""
        if self.center is None:
            return C.is_unit_ideal()
        return any(self.poly_is_unit(g) for g in C.gens)

    def frac_contains_ideal(self, E, F) -> bool:
        return all(
            self.frac_contains_elem(E, PolyRat(g, F.den)) for g in F.num.gens
        )

    def frac_is_integral(self, E) -> bool:
        return all(self.elem_in_D(PolyRat(g, E.den)) for g in E.num.gens)

    def integral_poly_ideal(self, E) -> PolyIdeal:
        """E*D cap the polynomial ring, for integral E: (num : den)."""
        if E.den.is_constant():
            return PolyIdeal([g.scale(Fraction(1) / E.den.constant_coeff()) for g in E.num.gens])
        return E.num.colon_poly(E.den)

    def frac_gens_elems(self, E) -> list:
        return [PolyRat(g, E.den) for g in E.num.gens]

    def frac_render(self, E) -> str:
        gens = ", ".join(g.to_str(self.var_names) for g in E.num.gens)
        if E.den.is_constant() and E.den.constant_coeff() == 1:
            return f"({gens})"
        return f"(1/{E.den.to_str(self.var_names)})*({gens})"

    # -- primes -----------------------------------------------------------

    def center_ideal(self) -> FractionalIdeal:
        if self.center is None:
            raise DomainError("global ring has no center ideal")
        if self.center[0] == "monomial":
            gens = [Poly.variable(self.nvars, i) for i in range(self.nvars)]
            return self.frac_from_polys(gens)
        return self.frac_from_polys([self.center[1]])

    def verify_prime(self, prime: PrimeIdeal) -> bool:
        E = prime.ideal
        if not self.frac_is_integral(E):
            return False
        if prime.certificate == "monomial-maximal":
            return self.center == ("monomial",) and E.eq(self.center_ideal())
        if prime.certificate == "principal-irreducible":
            J = self.integral_poly_ideal(E)
            gb = J.groebner()
            if len(gb) != 1:
                return False
            f = gb[0]
            # Degree-1 polynomials through the origin are irreducible nonunits.
            return f.total_degree() == 1 and f.constant_coeff() == 0
        return prime.certificate == "user-asserted"

    def prime_principal_gen(self, P: PrimeIdeal) -> Poly | None:
        J = self.integral_poly_ideal(P.ideal)
        gb = J.groebner()
        if len(gb) == 1:
            return gb[0]
        return None

    def ideal_in_prime(self, C_or_E, P: PrimeIdeal) -> bool:
        """Containment in a prime, decided on generators."""
        if isinstance(C_or_E, PolyIdeal):
            gens = [PolyRat(g, Poly.const(self.nvars, 1)) for g in C_or_E.gens]
        else:
            gens = self.frac_gens_elems(C_or_E)
        return all(P.ideal.contains_elem(g) for g in gens)

    def localize_member(self, E: FractionalIdeal, P: PrimeIdeal, z: PolyRat) -> bool:
        """z in E*D_P  iff  (E.num*q : p*E.den) escapes P."""
        if z.is_zero():
            return True
        C = E.num.mul_poly(z.den).colon_poly(z.num * E.den)
        return not self.ideal_in_prime(C, P)

    def localize_contract(self, E, P) -> IdealOracle:
        def member(z):
            return self.localize_member(E, P, z)

        presentation = self._localize_presentation(E, P)
        return IdealOracle(
            self,
            member,
            presentation=presentation,
            grade="exact",
            tag=f"localize@{P.name}",
        )

    def _localize_presentation(self, E, P) -> FractionalIdeal | None:
        # Localizing at the center of a local ring changes nothing.
        if self.center == ("monomial",) and P.certificate == "monomial-maximal":
            return E
        f = self.prime_principal_gen(P)
        if f is None or not self.frac_is_integral(E):
            return None
        J = self.integral_poly_ideal(E)
        # Saturate by the product of the f-deflated generators, to a fixpoint.
        while True:
            deflated = []
            for g in J.groebner():
                k = _poly_ord_along(g, f)
                deflated.append(g.exact_div(f ** k) if k else g)
            s = Poly.const(self.nvars, 1)
            for q in deflated:
                s = s * q
            if s.is_constant():
                break
            J2 = J.saturate(s)
            if J2 == J:
                break
            J = J2
        candidate = self.frac_from_polys(list(J.groebner()))
        # Soundness gate: every claimed generator must pass exact membership.
        for g in candidate.num.gens:
            if not self.localize_member(E, P, PolyRat(g, Poly.const(self.nvars, 1))):
                return None
        return candidate


# ---------------------------------------------------------------------------
# make_domain
# ---------------------------------------------------------------------------


def make_domain(spec: dict) -> Domain:
    """Build a backend from a descriptor dict (the scenario-file format)."""
    kind = spec.get("kind")
    if kind == "integers":
        return IntegerDomain(spec.get("localize_at"))
    if kind == "quadratic_order":
        return QuadraticOrderDomain(int(spec["d"]))
    if kind == "poly_local":
        vars_ = tuple(spec["vars"])
        center = spec.get("center")
        if center in (None, "none"):
            return PolyLocalDomain(vars_, None)
        if center in ("maximal", "monomial"):
            return PolyLocalDomain(vars_, "monomial")
        # principal center given as a variable name
        if isinstance(center, str) and center in vars_:
            f = Poly.variable(len(vars_), vars_.index(center))
            return PolyLocalDomain(vars_, ("principal", f))
        raise DomainError(f"unsupported center spec {center!r}")
    raise DomainError(f"unknown domain kind {kind!r}")
