"""Seifert invariants of legs and chains, orbifold Euler numbers, I^orb."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .graph_core import PlumbingGraph, VertexClassification, subgraph_det
from .lattice import exact_inverse


class OrbifoldIdentityViolation(RuntimeError):
    pass


def neg_continued_fraction(ks) -> tuple[int, int]:
    """[k1, ..., ks] = k1 - 1/(k2 - ...) as a reduced pair (alpha, omega)."""
    if not ks:
        raise ValueError("empty expansion")
    value = Fraction(ks[-1])
    for k in reversed(ks[:-1]):
        value = k - 1 / value
    return value.numerator, value.denominator


def cf_expansion(alpha: int, omega: int) -> list[int]:
    """Inverse of neg_continued_fraction for 0 < omega < alpha coprime,
    plus the base case omega = 1."""
    if not (0 < omega <= alpha) or gcd(alpha, omega) != 1 or (omega == alpha and alpha != 1):
        raise ValueError(f"invalid Seifert pair ({alpha}, {omega})")
    out = []
    a, w = alpha, omega
    while w:
        k = -(-a // w)  # ceil
        out.append(k)
        a, w = w, k * w - a
    return out


@dataclass(frozen=True)
class LegInvariant:
    node: str
    end: str
    alpha: int
    omega: int
    omega_tilde: int


@dataclass(frozen=True)
class ChainInvariant:
    head: str  # smaller node
    tail: str
    alpha: int
    omega_head: int  # omega_{head, tail}: chain seen as a leg of head
    omega_tail: int  # omega_{tail, head}
    tau: int


def leg_invariants(g: PlumbingGraph, cl: VertexClassification) -> list[LegInvariant]:
    out = []
    for leg in cl.legs:
        vs = leg.vertices
        out.append(LegInvariant(
            node=leg.node, end=leg.end,
            alpha=subgraph_det(g, vs),
            omega=subgraph_det(g, vs[1:]),
            omega_tilde=subgraph_det(g, vs[:-1]),
        ))
    return out


def chain_invariants(g: PlumbingGraph, cl: VertexClassification) -> list[ChainInvariant]:
    out = []
    for c in cl.chains:
        vs = c.interior
        if not vs:
            ci = ChainInvariant(c.head, c.tail, 1, 0, 0, -1)
        else:
            ci = ChainInvariant(
                c.head, c.tail,
                alpha=subgraph_det(g, vs),
                omega_head=subgraph_det(g, vs[1:]),
                omega_tail=subgraph_det(g, vs[:-1]),
                tau=subgraph_det(g, vs[1:-1]) if len(vs) > 1 else 0,
            )
        if ci.omega_head * ci.omega_tail != ci.alpha * ci.tau + 1:
            raise OrbifoldIdentityViolation(f"chain {c.head}-{c.tail}")
        out.append(ci)
    return out


@dataclass(frozen=True)
class OrbifoldData:
    nodes: tuple[str, ...]
    e: dict
    I_orb: tuple[tuple[Fraction, ...], ...]

    def inverse(self) -> list[list[Fraction]]:
        return exact_inverse(self.I_orb)


def omega_toward(chains, n: str, m: str) -> tuple[int, int]:
    """(alpha_{n,m}, omega_{n,m}) for the chain seen as a leg of n."""
    for c in chains:
        if (c.head, c.tail) == (n, m):
            return c.alpha, c.omega_head
        if (c.head, c.tail) == (m, n):
            return c.alpha, c.omega_tail
    raise KeyError((n, m))


def orbifold_data(g: PlumbingGraph, cl: VertexClassification, legs, chains,
                  check: bool = True) -> OrbifoldData:
    nodes = cl.nodes
    e = {}
    for n in nodes:
        val = Fraction(g.euler[n])
        val += sum(Fraction(l.omega, l.alpha) for l in legs if l.node == n)
        for m in cl.node_neighbors[n]:
            a, w = omega_toward(chains, n, m)
            val += Fraction(w, a)
        e[n] = val
    pos = {n: i for i, n in enumerate(nodes)}
    M = [[Fraction(0)] * len(nodes) for _ in nodes]
    for n in nodes:
        M[pos[n]][pos[n]] = e[n]
    for c in chains:
        M[pos[c.head]][pos[c.tail]] = M[pos[c.tail]][pos[c.head]] = Fraction(1, c.alpha)
    od = OrbifoldData(nodes, e, tuple(tuple(r) for r in M))
    if check and nodes:
        _check_orbifold(g, od)
    return od


def frac_det(m) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _check_orbifold(g, od: OrbifoldData):
    if any(v >= 0 for v in od.e.values()):
        raise OrbifoldIdentityViolation("non-negative orbifold Euler number")
    neg = [[-x for x in row] for row in od.I_orb]
    for k in range(1, len(neg) + 1):
        if frac_det([r[:k] for r in neg[:k]]) <= 0:
            raise OrbifoldIdentityViolation("-I^orb is not positive definite")
    rest = [v for v in g.ids if v not in set(od.nodes)]
    lhs = subgraph_det(g, g.ids)
    rhs = frac_det(neg) * subgraph_det(g, rest)
    if lhs != rhs:
        raise OrbifoldIdentityViolation(f"det {lhs} != det(-I^orb) det(rest) = {rhs}")
