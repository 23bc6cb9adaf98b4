"""Seeded, pool-restricted sample plans.

Scenario checks are candidate-relative: prime spectra, tilde operations
and Nagata memberships are computed against declared prime lists, so the
sampled elements keep their denominators (and ideal contents) supported
on those same declared primes plus units.  Each sampler owns one seeded
RNG; identical seeds reproduce identical draws.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .domains import Domain, FractionalIdeal, PolyRat, PrimeIdeal
from .function_rings import RationalFunctionElem, fn_elem, fn_from_coeffs
from .operations import AxiomPlan
from .polys import Poly


class Sampler:
    def __init__(self, domain: Domain, seed: int, primes: list[PrimeIdeal] | None = None):
        self.domain = domain
        self.rng = random.Random(seed)
        self.primes = list(primes or [])
        self._atoms = self._build_atoms()

    # -- building blocks ------------------------------------------------

    def _build_atoms(self):
        dom = self.domain
        if dom.kind == "poly_local":
            atoms = [Poly.variable(dom.nvars, i) for i in range(dom.nvars)]
            for P in self.primes:
                g = dom.prime_principal_gen(P)
                if g is not None and g not in atoms:
                    atoms.append(g)
            return atoms
        if dom.kind == "quadratic_order":
            atoms = [dom.elem(2), dom.omega(), dom.elem(1, 1), dom.elem(1, -1), dom.elem(5)]
            for P in self.primes:
                atoms.extend(g for g in P.ideal.gens_elems() if not g.is_zero())
            return atoms
        base = [Fraction(p) for p in (2, 3, 5)]
        for P in self.primes:
            base.append(Fraction(P.ideal.num))
        return base

    def _unit(self):
        dom = self.domain
        c = Fraction(self.rng.choice([1, 1, 2, 3, -1]))
        if dom.kind == "poly_local":
            return PolyRat(Poly.const(dom.nvars, c), Poly.const(dom.nvars, 1))
        if dom.kind == "quadratic_order":
            return dom.elem(c if c != 0 else 1)
        return c

    def _atom_product(self, max_factors: int):
        """Product of pool atoms: nonunit part of numerators/denominators."""
        dom = self.domain
        k = self.rng.randint(0, max_factors)
        if dom.kind == "poly_local":
            out = Poly.const(dom.nvars, 1)
        elif dom.kind == "quadratic_order":
            out = dom.elem(1)
        else:
            out = Fraction(1)
        for _ in range(k):
            out = out * self.rng.choice(self._atoms)
        return out

    # -- elements ---------------------------------------------------------

    def element(self, with_denominator: bool = True, max_factors: int = 2):
        """Nonzero field element with pool-supported factors."""
        dom = self.domain
        num = self._atom_product(max_factors)
        den = self._atom_product(max_factors if with_denominator else 0)
        if dom.kind == "poly_local":
            unit = self._unit()
            z = PolyRat(num, den) * unit
            return z
        if dom.kind == "quadratic_order":
            return (num / den) * self._unit()
        return Fraction(num) / Fraction(den) * self._unit()

    def integral_element(self, max_factors: int = 2):
        return self.element(with_denominator=False, max_factors=max_factors)

    def scalar(self):
        return self.element(max_factors=1)

    def probes(self, n: int) -> list:
        out = [self.domain.one()]
        while len(out) < n:
            out.append(self.element())
        return out

    # -- ideals ------------------------------------------------------------

    def integral_ideal(self, max_gens: int = 3, max_factors: int = 2) -> FractionalIdeal:
        dom = self.domain
        gens = [self.integral_element(max_factors) for _ in range(self.rng.randint(1, max_gens))]
        gens = [g for g in gens if not dom.elem_is_zero(g)]
        if not gens:
            gens = [dom.one()]
        return dom.frac_from_elems(gens)

    def frac_ideal(self, max_gens: int = 3) -> FractionalIdeal:
        E = self.integral_ideal(max_gens)
        if self.rng.random() < 0.5:
            den = self._atom_product(1)
            if self.domain.kind == "poly_local":
                if not den.is_constant():
                    return E.scale(PolyRat(Poly.const(self.domain.nvars, 1), den))
            elif self.domain.kind == "quadratic_order":
                if not self.domain.elem_is_unit(den):
                    return E.scale(den.inverse())
            else:
                if abs(den) != 1:
                    return E.scale(Fraction(1) / den)
        return E

    # -- function-ring elements --------------------------------------------

    def _fn_poly(self, max_deg: int = 2, max_factors: int = 2):
        dom = self.domain
        coeffs = {}
        for k in range(max_deg + 1):
            if self.rng.random() < 0.6 or k == 0:
                c = self._atom_product(max_factors)
                if dom.kind == "poly_local":
                    c = c.scale(Fraction(self.rng.choice([1, 1, 2, -1])))
                else:
                    c = c * Fraction(self.rng.choice([1, 1, 2, -1]))
                coeffs[k] = c
        if dom.kind == "poly_local":
            coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}
            if not coeffs:
                coeffs = {0: Poly.const(dom.nvars, 1)}
            from .function_rings import fn_variable, lift_poly

            total = Poly.zero(dom.nvars + 1)
            xt = fn_variable(dom)
            for k, c in coeffs.items():
                total = total + lift_poly(c) * xt ** k
            return total
        coeffs = {k: c for k, c in coeffs.items() if not self.domain.elem_is_zero(c)} \
            if dom.kind == "quadratic_order" else {k: c for k, c in coeffs.items() if c != 0}
        if not coeffs:
            coeffs = {0: dom.one()}
        return fn_from_coeffs(dom, coeffs)

    def fn_element(self, max_deg: int = 2) -> RationalFunctionElem:
        num = self._fn_poly(max_deg)
        den = self._fn_poly(max_deg if self.rng.random() < 0.7 else 0)
        return fn_elem(self.domain, num, den)

    def fn_elements(self, n: int, max_deg: int = 2) -> list[RationalFunctionElem]:
        return [self.fn_element(max_deg) for _ in range(n)]

    # -- composite plans -----------------------------------------------------

    def axiom_plan(self, n_ideals: int = 8, n_scalars: int = 3, n_probes: int = 8) -> AxiomPlan:
        ideals = [self.frac_ideal() for _ in range(n_ideals)]
        scalars = []
        while len(scalars) < n_scalars:
            z = self.scalar()
            if not self.domain.elem_is_zero(z):
                scalars.append(z)
        probes = self.probes(n_probes)
        enlargements = [self.integral_ideal(max_gens=1) for _ in range(2)]
        return AxiomPlan(ideals, scalars, probes, enlargements)
