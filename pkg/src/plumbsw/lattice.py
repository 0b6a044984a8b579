"""Exact linear algebra for L, L' and the discriminant group H = L'/L.

Conventions: a vector in E-coordinates x means sum x_v E_v; in dual
coordinates y it means sum y_v E*_v with (E*_v, E_w) = -delta_vw.  Hence
y = -I x and x = -I^{-1} y.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .graph_core import PlumbingGraph, bareiss_det, neg_intersection_block


class NotNegativeDefinite(ValueError):
    pass


def exact_inverse(m: list[list[int]]) -> list[list[Fraction]]:
    """Gauss-Jordan over Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_vec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


@dataclass(frozen=True)
class IntersectionData:
    ids: tuple[str, ...]
    I: tuple[tuple[int, ...], ...]
    det: int
    I_inv: tuple[tuple[Fraction, ...], ...]

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.ids)}

    def pair(self, x, y) -> Fraction:
        """(x, y) for x, y in E-coordinates."""
        return sum(Fraction(xi) * sum(self.I[i][j] * y[j] for j in range(len(y)))
                   for i, xi in enumerate(x))

    def to_E(self, y) -> tuple[Fraction, ...]:
        """Dual coordinates -> E-coordinates."""
        return tuple(-c for c in mat_vec(self.I_inv, [Fraction(t) for t in y]))

    def to_dual(self, x) -> tuple[Fraction, ...]:
        """E-coordinates -> dual coordinates."""
        return tuple(-c for c in mat_vec(self.I, [Fraction(t) for t in x]))

    def dual_E(self, v: str) -> tuple[Fraction, ...]:
        """E-coordinates of E*_v."""
        i = self.index[v]
        return tuple(-self.I_inv[j][i] for j in range(len(self.ids)))


def intersection_data(g: PlumbingGraph) -> IntersectionData:
    neg = neg_intersection_block(g, g.ids)
    for k in range(1, len(neg) + 1):
        if bareiss_det([row[:k] for row in neg[:k]]) <= 0:
            raise NotNegativeDefinite(
                f"leading principal minor of order {k} of -I is not positive")
    I = [[-x for x in row] for row in neg]
    inv = exact_inverse(I)
    return IntersectionData(
        ids=g.ids,
        I=tuple(tuple(r) for r in I),
        det=bareiss_det(neg),
        I_inv=tuple(tuple(r) for r in inv),
    )


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[Fraction, ...]
    basis: str  # 'E' or 'E*'

    def in_E(self, d: IntersectionData) -> 'LatticeVector':
        if self.basis == 'E':
            return self
        return LatticeVector(d.to_E(self.coords), 'E')

    def in_dual(self, d: IntersectionData) -> 'LatticeVector':
        if self.basis == 'E*':
            return self
        return LatticeVector(d.to_dual(self.coords), 'E*')

    def in_L(self, d) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.in_E(d).coords)

    def in_L_dual(self, d) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.in_dual(d).coords)


class NotInDualLattice(ValueError):
    pass


@dataclass(frozen=True)
class DiscriminantGroup:
    """H = Z^V / I Z^V written in dual coordinates, via U I V = diag(d)."""
    factors: tuple[int, ...]  # nontrivial invariant factors
    U_rows: tuple[tuple[int, ...], ...]  # rows of U for nontrivial factors
    lift_cols: tuple[tuple[int, ...], ...]  # columns of U^{-1}, same rows
    data: IntersectionData

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def class_of(self, y) -> tuple[int, ...]:
        """Class of the element with integer dual coordinates y."""
        ys = []
        for c in y:
            c = Fraction(c)
            if c.denominator != 1:
                raise NotInDualLattice(f"dual coordinate {c} is not integral")
            ys.append(int(c))
        return tuple(sum(u * t for u, t in zip(row, ys)) % d
                     for row, d in zip(self.U_rows, self.factors))

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(h) for h in itertools.product(*(range(d) for d in self.factors))]

    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.factors)

    def add(self, h, k):
        return tuple((a + b) % d for a, b, d in zip(h, k, self.factors))

    def some_lift(self, h) -> tuple[int, ...]:
        """Integer dual coordinates of an element of class h."""
        n = len(self.data.ids)
        return tuple(sum(col[i] * c for col, c in zip(self.lift_cols, h))
                     for i in range(n))

    def representative(self, h) -> tuple[Fraction, ...]:
        """E-coordinates of r_h, all in [0, 1)."""
        x = self.data.to_E(self.some_lift(h))
        return tuple(c - floor(c) for c in x)

    def representative_dual(self, h) -> tuple[int, ...]:
        return tuple(int(c) for c in self.data.to_dual(self.representative(h)))


def discriminant_group(d: IntersectionData) -> DiscriminantGroup:
    A = Matrix(d.I)
    D, U, _ = smith_normal_decomp(A)
    Uinv = U.inv()
    rows, cols, factors = [], [], []
    for i in range(A.rows):
        f = abs(int(D[i, i]))
        if f != 1:
            factors.append(f)
            rows.append(tuple(int(x) for x in U.row(i)))
            cols.append(tuple(int(x) for x in Uinv.col(i)))
    return DiscriminantGroup(tuple(factors), tuple(rows), tuple(cols), d)


def class_of(dg: DiscriminantGroup, v: LatticeVector):
    return dg.class_of(v.in_dual(dg.data).coords)


def representative(dg: DiscriminantGroup, h) -> LatticeVector:
    return LatticeVector(dg.representative(h), 'E')


def canonical_class(d: IntersectionData, g: PlumbingGraph) -> LatticeVector:
    """K with (K, E_v) = -b_v - 2, returned in E-coordinates."""
    dual = [g.euler[v] + 2 for v in d.ids]
    return LatticeVector(d.to_E(dual), 'E')
