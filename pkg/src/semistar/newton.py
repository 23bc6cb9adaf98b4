"""Integral closure of monomial ideals via the Newton polyhedron.

A monomial x^e lies in the closure of the monomial ideal generated by
x^{s_1}, ..., x^{s_k} exactly when e is in conv{s_i} + R_{>=0}^n.  The
membership test is exact linear-inequality feasibility over Q, decided
by Fourier-Motzkin elimination on the convex-combination weights; no
floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .ideals import PolyIdeal
from .polys import Poly

# A linear inequality a.x <= b over the lambda variables is stored as
# (coeffs tuple, bound).
_Ineq = tuple[tuple[Fraction, ...], Fraction]


def _normalize(ineq: _Ineq) -> _Ineq:
    coeffs, bound = ineq
    scale = None
    for c in coeffs:
        if c != 0:
            scale = abs(c)
            break
    if scale is None:
        scale = abs(bound) if bound != 0 else Fraction(1)
    return (tuple(c / scale for c in coeffs), bound / scale)


def _fm_feasible(ineqs: list[_Ineq], nvars: int) -> bool:
    """Decide whether {x : a.x <= b for all (a, b)} is nonempty."""
    system = list(ineqs)
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, bound in system:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, bound))
            elif c < 0:
                neg.append((coeffs, bound))
            else:
                rest.append((coeffs, bound))
        combined: dict[tuple, Fraction] = {}
        for pc, pb in pos:
            for nc, nb in neg:
                cp = pc[var]
                cn = -nc[var]
                coeffs = tuple(cn * a + cp * b for a, b in zip(pc, nc))
                bound = cn * pb + cp * nb
                key_coeffs, key_bound = _normalize((coeffs, bound))
                if key_coeffs in combined:
                    combined[key_coeffs] = min(combined[key_coeffs], key_bound)
                else:
                    combined[key_coeffs] = key_bound
        system = rest + [(c, b) for c, b in combined.items()]
    return all(bound >= 0 for coeffs, bound in system)


def in_newton_region(e: tuple[int, ...], exponents: list[tuple[int, ...]]) -> bool:
    """True iff e lies in conv(exponents) + positive orthant."""
    n = len(e)
    k = len(exponents)
    if k == 1:
        return all(a >= b for a, b in zip(e, exponents[0]))
    # Variables: lambda_1 .. lambda_{k-1}; lambda_k = 1 - sum of the rest.
    last = exponents[-1]
    ineqs: list[_Ineq] = []
    for i in range(k - 1):
        coeffs = [Fraction(0)] * (k - 1)
        coeffs[i] = Fraction(-1)
        ineqs.append((tuple(coeffs), Fraction(0)))  # lambda_i >= 0
    ineqs.append((tuple(Fraction(1) for _ in range(k - 1)), Fraction(1)))  # sum <= 1
    for j in range(n):
        coeffs = tuple(Fraction(exponents[i][j] - last[j]) for i in range(k - 1))
        ineqs.append((coeffs, Fraction(e[j] - last[j])))
    return _fm_feasible(ineqs, k - 1)


def newton_closure_monomial(ideal: PolyIdeal) -> PolyIdeal:
    """Monomial integral closure: all lattice points of the Newton region.

    Enumeration runs over the box spanned by the componentwise maxima of
    the generator exponents (minimal closure generators cannot exceed it)
    and the result is minimalized under divisibility.
    """
    exponents = []
    for g in ideal.gens:
        if not g.is_monomial():
            raise ValueError(f"non-monomial generator {g!r}")
        exponents.append(next(iter(g.terms)))
    exponents = sorted(set(exponents))
    n = ideal.nvars
    box = tuple(max(s[j] for s in exponents) for j in range(n))

    hull_points = [
        e
        for e in product(*(range(b + 1) for b in box))
        if in_newton_region(e, exponents)
    ]
    minimal = [
        e
        for e in hull_points
        if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in hull_points)
    ]
    return PolyIdeal([Poly.monomial(e) for e in sorted(minimal)])
