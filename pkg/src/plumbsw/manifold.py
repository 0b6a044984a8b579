"""All derived data of a plumbing tree bundled in one immutable object."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graph_core import GraphError, PlumbingGraph, VertexClassification, classify
from .lattice import (DiscriminantGroup, IntersectionData, discriminant_group,
                      intersection_data)
from .seifert_data import (ChainInvariant, LegInvariant, OrbifoldData,
                           chain_invariants, leg_invariants, orbifold_data)


@dataclass(frozen=True, eq=False)
class Plumbed:
    graph: PlumbingGraph
    cl: VertexClassification
    idata: IntersectionData
    dg: DiscriminantGroup
    legs: tuple[LegInvariant, ...]
    chains: tuple[ChainInvariant, ...]
    orb: OrbifoldData

    @classmethod
    def from_graph(cls, g: PlumbingGraph, allow_arrows: bool = False) -> 'Plumbed':
        if g.arrows and not allow_arrows:
            raise GraphError("arrows are only supported by the semigroup tools")
        cl = classify(g)
        idata = intersection_data(g)
        legs = tuple(leg_invariants(g, cl))
        chains = tuple(chain_invariants(g, cl))
        orb = orbifold_data(g, cl, legs, chains)
        return cls(g, cl, idata, discriminant_group(idata), legs, chains, orb)

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.cl.nodes

    @cached_property
    def node_pos(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.nodes)}

    @cached_property
    def leg_of(self) -> dict[str, LegInvariant]:
        return {l.end: l for l in self.legs}

    def legs_at(self, n: str) -> list[LegInvariant]:
        return [l for l in self.legs if l.node == n]

    def chain_between(self, n: str, m: str) -> ChainInvariant:
        for c in self.chains:
            if {c.head, c.tail} == {n, m}:
                return c
        raise KeyError((n, m))

    def alpha_omega(self, n: str, m: str) -> tuple[int, int]:
        """(alpha_{n,m}, omega_{n,m}): the chain from n to m as a leg of n."""
        c = self.chain_between(n, m)
        return (c.alpha, c.omega_head) if c.head == n else (c.alpha, c.omega_tail)

    @cached_property
    def orb_inverse(self) -> list[list[Fraction]]:
        return self.orb.inverse()

    @cached_property
    def node_duals(self) -> dict[str, tuple[Fraction, ...]]:
        """pi_N(E*_n) in node E-coordinates."""
        idx = self.idata.index
        out = {}
        for n in self.nodes:
            col = self.idata.dual_E(n)
            out[n] = tuple(col[idx[m]] for m in self.nodes)
        return out

    def project(self, x_E) -> tuple[Fraction, ...]:
        """pi_N of a vector given in E-coordinates."""
        idx = self.idata.index
        return tuple(Fraction(x_E[idx[n]]) for n in self.nodes)

    @cached_property
    def connector_vertex(self) -> dict[tuple[str, str], str]:
        out = {}
        for c in self.cl.chains:
            out[(c.head, c.tail)] = c.connector
        return out
