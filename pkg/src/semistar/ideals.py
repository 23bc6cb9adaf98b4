"""Buchberger Groebner engine and integral-ideal operations.

Everything here works at the level of the plain polynomial ring over Q;
localized interpretations live in :mod:`semistar.domains`.  The engine
uses the normal selection strategy (pairs sorted by lcm degree), always
exact rational arithmetic, and produces the unique reduced basis for a
fixed monomial order.  Reduced bases are cached on the ideal, keyed by
the order.
"""

from __future__ import annotations

from fractions import Fraction

from .polys import (
    DEGREVLEX,
    MonomialOrder,
    Poly,
    elimination_order,
    exp_divides,
    exp_lcm,
    exp_sub,
)


def normal_form(p: Poly, basis: list[Poly], order: MonomialOrder) -> Poly:
    """Fully reduce p modulo basis: no remainder term is divisible by any lead."""
    if not basis:
        return p
    leads = [g.lead(order) for g in basis]
    remainder = Poly.zero(p.nvars)
    work = p
    while not work.is_zero():
        wexp, wcoeff = work.lead(order)
        for g, (gexp, gcoeff) in zip(basis, leads):
            if exp_divides(gexp, wexp):
                factor = Poly.monomial(exp_sub(wexp, gexp), wcoeff / gcoeff)
                work = work - g * factor
                break
        else:
            remainder = remainder + Poly.monomial(wexp, wcoeff)
            work = work - Poly.monomial(wexp, wcoeff)
    return remainder


def s_poly(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    fexp, fcoeff = f.lead(order)
    gexp, gcoeff = g.lead(order)
    lcm = exp_lcm(fexp, gexp)
    return f.shift_monomial(exp_sub(lcm, fexp), Fraction(1) / fcoeff) - g.shift_monomial(
        exp_sub(lcm, gexp), Fraction(1) / gcoeff
    )


def groebner_basis(gens: list[Poly], order: MonomialOrder = DEGREVLEX) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by gens.

    Deterministic for a fixed input and order: generators are normalized
    monic, pairs are processed by (lcm total degree, lcm key), and the
    reduced basis is returned sorted by ascending leading monomial.
    """
    arities = {g.nvars for g in gens}
    if len(arities) > 1:
        raise ValueError("generators have mismatched arities")
    basis = []
    seen = set()
    for g in sorted((g for g in gens if not g.is_zero()), key=lambda p: p.key()):
        m = g.monic(order)
        if m.key() not in seen:
            seen.add(m.key())
            basis.append(m)
    if not basis:
        raise ValueError("no nonzero generators")

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_rank(pair):
        i, j = pair
        lcm = exp_lcm(basis[i].lead(order)[0], basis[j].lead(order)[0])
        return (sum(lcm), order.key(lcm), i, j)

    while pairs:
        i, j = min(pairs, key=pair_rank)
        pairs.discard((i, j))
        ei = basis[i].lead(order)[0]
        ej = basis[j].lead(order)[0]
        # Buchberger's coprime criterion: disjoint leads reduce to zero.
        if exp_lcm(ei, ej) == tuple(a + b for a, b in zip(ei, ej)):
            continue
        rem = normal_form(s_poly(basis[i], basis[j], order), basis, order)
        if not rem.is_zero():
            basis.append(rem.monic(order))
            k = len(basis) - 1
            pairs.update((i2, k) for i2 in range(k))

    return _reduce_basis(basis, order)


def _reduce_basis(basis: list[Poly], order: MonomialOrder) -> list[Poly]:
    # Minimalize: drop elements whose lead is divisible by another lead.
    minimal: list[Poly] = []
    for i, g in enumerate(basis):
        gexp = g.lead(order)[0]
        keep = True
        for j, h in enumerate(basis):
            if i == j:
                continue
            hexp = h.lead(order)[0]
            if exp_divides(hexp, gexp) and (hexp != gexp or j < i):
                keep = False
                break
        if keep:
            minimal.append(g)
    # Interreduce: each element fully reduced against the others.
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda p: order.key(p.lead(order)[0]))
    return reduced


class PolyIdeal:
    """Ideal of Q[x1..xn] given by generators, with cached reduced bases."""

    __slots__ = ("nvars", "gens", "_gb_cache")

    def __init__(self, gens: list[Poly] | tuple[Poly, ...]):
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("ideal needs at least one nonzero generator")
        arities = {g.nvars for g in gens}
        if len(arities) > 1:
            raise ValueError("generators have mismatched arities")
        self.nvars = gens[0].nvars
        uniq: dict[tuple, Poly] = {}
        for g in gens:
            m = g.monic(DEGREVLEX)
            uniq.setdefault(m.key(), m)
        self.gens = tuple(sorted(uniq.values(), key=lambda p: p.key()))
        self._gb_cache: dict[tuple, list[Poly]] = {}

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> list[Poly]:
        token = order.cache_token()
        if token not in self._gb_cache:
            self._gb_cache[token] = groebner_basis(list(self.gens), order)
        return self._gb_cache[token]

    # -- membership and comparison ------------------------------------

    def contains(self, p: Poly, order: MonomialOrder = DEGREVLEX) -> bool:
        if p.nvars != self.nvars:
            raise ValueError("arity mismatch")
        if p.is_zero():
            return True
        return normal_form(p, self.groebner(order), order).is_zero()

    def contains_ideal(self, other: "PolyIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyIdeal)
            and self.nvars == other.nvars
            and self.contains_ideal(other)
            and other.contains_ideal(self)
        )

    def __hash__(self) -> int:
        # Hash on the reduced degrevlex basis, the canonical form.
        return hash(tuple(g.key() for g in self.groebner()))

    def __repr__(self) -> str:
        return f"PolyIdeal({len(self.gens)} gens, {self.nvars} vars)"

    def is_unit_ideal(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def canonical_gens(self) -> tuple[Poly, ...]:
        return tuple(self.groebner())

    # -- arithmetic -----------------------------------------------------

    def add(self, other: "PolyIdeal") -> "PolyIdeal":
        return PolyIdeal(list(self.gens) + list(other.gens))

    def mul(self, other: "PolyIdeal") -> "PolyIdeal":
        return PolyIdeal([a * b for a in self.gens for b in other.gens])

    def mul_poly(self, p: Poly) -> "PolyIdeal":
        return PolyIdeal([g * p for g in self.gens])

    def power(self, n: int) -> "PolyIdeal":
        if n < 0:
            raise ValueError("negative ideal power")
        if n == 0:
            return PolyIdeal([Poly.const(self.nvars, 1)])
        out = self
        for _ in range(n - 1):
            out = out.mul(self)
        return out

    def intersect(self, other: "PolyIdeal") -> "PolyIdeal":
        """I cap J via the tag-variable trick: eliminate t from t*I + (1-t)*J."""
        n = self.nvars
        t = Poly.variable(n + 1, 0)
        one_minus_t = Poly.const(n + 1, 1) - t
        lifted = [t * g.prepend_vars(1) for g in self.gens]
        lifted += [one_minus_t * g.prepend_vars(1) for g in other.gens]
        gb = groebner_basis(lifted, elimination_order(1))
        kept = [g.drop_front_vars(1) for g in gb if g.degree_in(0) == 0]
        if not kept:
            raise ValueError("empty intersection of nonzero ideals over a domain")
        return PolyIdeal(kept)

    def colon_poly(self, f: Poly) -> "PolyIdeal":
        """(I : f) = (1/f) * (I cap (f))."""
        if f.is_zero():
            raise ValueError("colon by zero")
        meet = self.intersect(PolyIdeal([f]))
        quotients = []
        for g in meet.gens:
            q = g.exact_div(f)
            if q is None:
                raise AssertionError("intersection with (f) produced a non-multiple of f")
            quotients.append(q)
        return PolyIdeal(quotients)

    def colon(self, other: "PolyIdeal") -> "PolyIdeal":
        """(I : J) as the intersection of (I : g) over the generators of J."""
        out: PolyIdeal | None = None
        for g in other.gens:
            piece = self.colon_poly(g)
            out = piece if out is None else out.intersect(piece)
        assert out is not None
        return out

    def saturate(self, f: Poly) -> "PolyIdeal":
        """(I : f^infinity): iterate the colon until the chain stabilizes."""
        if f.is_zero():
            raise ValueError("saturation by zero")
        current = self
        while True:
            nxt = current.colon_poly(f)
            if nxt == current:
                return current
            current = nxt


# ---------------------------------------------------------------------------
# GCD / LCM in Q[x1..xn] through principal-ideal intersections
# ---------------------------------------------------------------------------


def poly_lcm(f: Poly, g: Poly) -> Poly:
    """Monic lcm: the single reduced generator of (f) cap (g)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("lcm with zero")
    meet = PolyIdeal([f]).intersect(PolyIdeal([g]))
    gb = meet.groebner()
    if len(gb) != 1:
        raise AssertionError("intersection of principal ideals was not principal")
    return gb[0]


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd via f*g / lcm(f, g)."""
    if f.is_zero():
        return g.monic(DEGREVLEX) if not g.is_zero() else g
    if g.is_zero():
        return f.monic(DEGREVLEX)
    product = f * g
    quotient = product.exact_div(poly_lcm(f, g))
    if quotient is None:
        raise AssertionError("lcm does not divide the product")
    return quotient.monic(DEGREVLEX)


def poly_gcd_many(polys: list[Poly]) -> Poly:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero polynomials")
    acc = nonzero[0]
    for p in nonzero[1:]:
        if acc.is_constant():
            break
        acc = poly_gcd(acc, p)
    return acc.monic(DEGREVLEX)
