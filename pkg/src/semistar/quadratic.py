"""Rank-2 lattice arithmetic for quadratic orders Z[w], w = sqrt(d).

Ideals and fractional ideals of the order are integer lattices over the
basis {1, w}, stored in Hermite normal form together with a positive
integer denominator:

    (1/den) * ( Z*a  +  Z*(b + c*w) )      a, c > 0,  0 <= b < a.

Closure under multiplication by w is imposed at construction time by
adjoining w*g for every generator, so every stored lattice is a module
over the order.  All arithmetic (products, duals, colons, intersections)
reduces to integer column operations; nothing here is approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def column_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Integer kernel basis of the matrix with the given rows.

    Column-style elimination with a tracked unimodular transform; the
    transform columns matching eliminated (zero) matrix columns span the
    kernel.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    cols = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    trans = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    pivot = 0
    for row in range(nrows):
        nonzero = [k for k in range(pivot, ncols) if cols[k][row] != 0]
        if not nonzero:
            continue
        k0 = nonzero[0]
        cols[pivot], cols[k0] = cols[k0], cols[pivot]
        trans[pivot], trans[k0] = trans[k0], trans[pivot]
        for k in range(pivot + 1, ncols):
            b = cols[k][row]
            if b == 0:
                continue
            a = cols[pivot][row]
            g, s, t = xgcd(a, b)
            u, v = -(b // g), a // g
            cols[pivot], cols[k] = (
                [s * cols[pivot][i] + t * cols[k][i] for i in range(nrows)],
                [u * cols[pivot][i] + v * cols[k][i] for i in range(nrows)],
            )
            trans[pivot], trans[k] = (
                [s * trans[pivot][i] + t * trans[k][i] for i in range(ncols)],
                [u * trans[pivot][i] + v * trans[k][i] for i in range(ncols)],
            )
        pivot += 1
        if pivot == ncols:
            break
    return [trans[k] for k in range(pivot, ncols)]


@dataclass(frozen=True)
class QuadElem:
    """Element x + y*w of the quadratic field Q(sqrt(d))."""

    x: Fraction
    y: Fraction
    d: int

    @classmethod
    def make(cls, d: int, x, y=0) -> "QuadElem":
        return cls(Fraction(x), Fraction(y), d)

    def __add__(self, other: "QuadElem") -> "QuadElem":
        return QuadElem(self.x + other.x, self.y + other.y, self.d)

    def __sub__(self, other: "QuadElem") -> "QuadElem":
        return QuadElem(self.x - other.x, self.y - other.y, self.d)

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.x, -self.y, self.d)

    def __mul__(self, other) -> "QuadElem":
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.x * other, self.y * other, self.d)
        return QuadElem(
            self.x * other.x + self.d * self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero or degenerate quadratic element")
        return QuadElem(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other: "QuadElem") -> "QuadElem":
        return self * other.inverse()

    def __pow__(self, n: int) -> "QuadElem":
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadElem.make(self.d, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def render(self, symbol: str = "w") -> str:
        if self.y == 0:
            return str(self.x)
        ypart = symbol if self.y == 1 else (f"-{symbol}" if self.y == -1 else f"{self.y}*{symbol}")
        if self.x == 0:
            return ypart
        sign = "+" if self.y > 0 else "-"
        mag = abs(self.y)
        ystr = symbol if mag == 1 else f"{mag}*{symbol}"
        return f"{self.x} {sign} {ystr}"


class QuadLattice:
    """Integral lattice Z*a + Z*(b + c*w) in HNF; always an order module."""

    __slots__ = ("d", "a", "b", "c")

    def __init__(self, d: int, a: int, b: int, c: int):
        if a <= 0 or c <= 0:
            raise ValueError("degenerate lattice")
        self.d = d
        self.a = a
        self.c = c
        self.b = b % a

    @classmethod
    def from_columns(cls, d: int, cols: list[tuple[int, int]]) -> "QuadLattice":
        """HNF of the Z-span of integer columns (x, y) ~ x + y*w."""
        cols = [col for col in cols if col != (0, 0)]
        if not cols:
            raise ValueError("zero lattice")
        # Row 2 (the w-coefficients): accumulate the gcd with its witness vector.
        c_val, vec = 0, (0, 0)
        for x, y in cols:
            if y == 0:
                continue
            g, s, t = xgcd(c_val, y)
            vec = (s * vec[0] + t * x, g)
            c_val = g
        if c_val == 0:
            raise ValueError("lattice has rank < 2 (not an order module)")
        a_val = 0
        for x, y in cols:
            k = y // c_val
            a_val = gcd(a_val, x - k * vec[0])
        if a_val == 0:
            raise ValueError("lattice has rank < 2")
        return cls(d, abs(a_val), vec[0], abs(c_val))

    @classmethod
    def from_elements(cls, d: int, elems: list[QuadElem]) -> tuple["QuadLattice", int]:
        """Order module generated by field elements; returns (lattice, denominator)."""
        elems = [e for e in elems if not e.is_zero()]
        if not elems:
            raise ValueError("no nonzero generators")
        w = QuadElem.make(d, 0, 1)
        full = elems + [e * w for e in elems]
        den = 1
        for e in full:
            den = den * e.x.denominator // gcd(den, e.x.denominator)
            den = den * e.y.denominator // gcd(den, e.y.denominator)
        cols = [(int(e.x * den), int(e.y * den)) for e in full]
        return cls.from_columns(d, cols), den

    # -- basic data ---------------------------------------------------

    def basis_elems(self) -> tuple[QuadElem, QuadElem]:
        return (
            QuadElem.make(self.d, self.a, 0),
            QuadElem.make(self.d, self.b, self.c),
        )

    def index(self) -> int:
        """Index in Z + Z*w (the norm for integral order ideals)."""
        return self.a * self.c

    def contains_point(self, x: Fraction, y: Fraction) -> bool:
        t = y / self.c
        if t.denominator != 1:
            return False
        s = (x - t * self.b) / self.a
        return s.denominator == 1

    def contains_elem(self, e: QuadElem) -> bool:
        return self.contains_point(e.x, e.y)

    def contains_lattice(self, other: "QuadLattice") -> bool:
        return all(self.contains_elem(e) for e in other.basis_elems())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuadLattice)
            and (self.d, self.a, self.b, self.c) == (other.d, other.a, other.b, other.c)
        )

    def __hash__(self) -> int:
        return hash((self.d, self.a, self.b, self.c))

    def __repr__(self) -> str:
        return f"QuadLattice<{self.a}, {self.b}+{self.c}w>"

    # -- arithmetic ----------------------------------------------------

    def scale_int(self, n: int) -> "QuadLattice":
        n = abs(n)
        return QuadLattice(self.d, self.a * n, self.b * n, self.c * n)

    def mul(self, other: "QuadLattice") -> "QuadLattice":
        cols = []
        for e1 in self.basis_elems():
            for e2 in other.basis_elems():
                p = e1 * e2
                cols.append((int(p.x), int(p.y)))
        return QuadLattice.from_columns(self.d, cols)

    def add(self, other: "QuadLattice") -> "QuadLattice":
        e = self.basis_elems() + other.basis_elems()
        return QuadLattice.from_columns(self.d, [(int(g.x), int(g.y)) for g in e])

    def intersect(self, other: "QuadLattice") -> "QuadLattice":
        a1, a2 = self.basis_elems()
        b1, b2 = other.basis_elems()
        rows = [
            [int(a1.x), int(a2.x), -int(b1.x), -int(b2.x)],
            [int(a1.y), int(a2.y), -int(b1.y), -int(b2.y)],
        ]
        cols = []
        for vec in column_kernel(rows):
            u0, u1 = vec[0], vec[1]
            e = a1 * u0 + a2 * u1
            cols.append((int(e.x), int(e.y)))
        return QuadLattice.from_columns(self.d, cols)
