"""Reduced lifts, node projections and the affine lattices Z^N(a)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .graph_core import subgraph_det
from .lattice import mat_vec
from .manifold import Plumbed


@dataclass(frozen=True)
class ReducedLift:
    """a = sum a_n E*_n + sum a_u E*_u + sum a_{n_n'} E*_{n_n'}.

    Connector coefficients are keyed by the oriented chain (head, tail);
    chains without interior vertices carry none."""
    node: tuple[tuple[str, int], ...]
    end: tuple[tuple[str, int], ...]
    conn: tuple[tuple[tuple[str, str], int], ...]

    @classmethod
    def build(cls, node: dict, end: dict, conn: dict) -> 'ReducedLift':
        return cls(tuple(sorted(node.items())), tuple(sorted(end.items())),
                   tuple(sorted(conn.items())))

    @property
    def a_node(self) -> dict[str, int]:
        return dict(self.node)

    @property
    def a_end(self) -> dict[str, int]:
        return dict(self.end)

    @property
    def a_conn(self) -> dict[tuple[str, str], int]:
        return dict(self.conn)

    def minus(self, k: dict) -> 'ReducedLift':
        """a - sum k_n E*_n."""
        node = self.a_node
        for n, v in k.items():
            node[n] = node.get(n, 0) - v
        return ReducedLift.build(node, self.a_end, self.a_conn)

    def dual_vector(self, P: Plumbed) -> tuple[int, ...]:
        """Dual coordinates over all vertices."""
        y = dict.fromkeys(P.graph.ids, 0)
        for n, v in self.node:
            y[n] += v
        for u, v in self.end:
            y[u] += v
        for key, v in self.conn:
            y[P.connector_vertex[key]] += v
        return tuple(y[v] for v in P.graph.ids)

    def to_json(self) -> dict:
        return {
            'nodes': {n: v for n, v in self.node},
            'ends': {u: v for u, v in self.end},
            'connectors': {f"{h}->{t}": v for (h, t), v in self.conn},
        }


def zero_lift(P: Plumbed) -> ReducedLift:
    return reduced_transform(P, [0] * len(P.graph.ids))


def reduced_transform(P: Plumbed, y) -> ReducedLift:
    """Reduced transform of l' = sum y_v E*_v (integer dual coordinates)."""
    g = P.graph
    val = {v: int(c) for v, c in zip(g.ids, y)}
    node = {n: val[n] for n in P.nodes}
    end = {}
    conn = {}
    for leg in P.cl.legs:
        vs = leg.vertices
        end[leg.end] = val[leg.end] + sum(
            val[v] * subgraph_det(g, vs[i + 1:]) for i, v in enumerate(vs[:-1]))
    for c in P.cl.chains:
        inner = c.interior
        if not inner:
            continue
        total = val[inner[0]]
        for i in range(1, len(inner)):
            v = inner[i]
            total += val[v] * subgraph_det(g, inner[:i])
            node[c.head] -= val[v] * subgraph_det(g, inner[1:i])
        conn[(c.head, c.tail)] = total
    return ReducedLift.build(node, end, conn)


@dataclass(frozen=True)
class NodeProjection:
    A: tuple[Fraction, ...]
    c: tuple[Fraction, ...]


def A_coefficients(P: Plumbed, a: ReducedLift) -> tuple[Fraction, ...]:
    an, ae, ac = a.a_node, a.a_end, a.a_conn
    out = []
    for n in P.nodes:
        val = Fraction(an.get(n, 0))
        for leg in P.legs_at(n):
            val += Fraction(ae.get(leg.end, 0), leg.alpha)
        for ch in P.chains:
            x = ac.get((ch.head, ch.tail), 0)
            if ch.head == n:
                val += Fraction(ch.omega_head * x, ch.alpha)
            elif ch.tail == n:
                val += Fraction(x, ch.alpha)
        out.append(val)
    return tuple(out)


def node_projection(P: Plumbed, a: ReducedLift) -> NodeProjection:
    A = A_coefficients(P, a)
    neg_inv = [[-x for x in row] for row in P.orb_inverse]
    return NodeProjection(A, mat_vec(neg_inv, A))


def c_vector(P: Plumbed, a: ReducedLift) -> tuple[Fraction, ...]:
    return node_projection(P, a).c


def affine_lattice_member(P: Plumbed, a: ReducedLift, ell) -> bool:
    ac = a.a_conn
    pos = P.node_pos
    for ch in P.chains:
        x = ac.get((ch.head, ch.tail), 0)
        if (ell[pos[ch.head]] + ch.omega_tail * ell[pos[ch.tail]] - x) % ch.alpha:
            return False
    return True


def class_of_lift(P: Plumbed, a: ReducedLift):
    return P.dg.class_of(a.dual_vector(P))


def canonical_lift(P: Plumbed, h) -> ReducedLift:
    return reduced_transform(P, P.dg.representative_dual(h))


def lift_from_dual(P: Plumbed, y) -> ReducedLift:
    return reduced_transform(P, y)


# ------------------------------------------------- Z^N(a) as a point set


def _tree_order(P: Plumbed) -> list[str]:
    cl = P.cl
    order = [cl.root]
    i = 0
    while i < len(order):
        n = order[i]
        order.extend(sorted(m for m in P.nodes if cl.parent.get(m) == n))
        i += 1
    return order


def _child_rule(P: Plumbed, a: ReducedLift, m: str):
    """For non-root m with parent p: ell_m = r(ell_p) mod alpha."""
    p = P.cl.parent[m]
    ch = P.chain_between(p, m)
    x = a.a_conn.get((ch.head, ch.tail), 0)
    alpha = ch.alpha
    inv = pow(ch.omega_tail, -1, alpha) if alpha > 1 else 0
    return p, alpha, lambda lp: (inv * (x - lp)) % alpha if alpha > 1 else 0


def lattice_generators(P: Plumbed) -> list[tuple[int, ...]]:
    """A triangular basis of Z^N(0)."""
    order = _tree_order(P)
    zero = ReducedLift.build({}, {}, {})
    rules = {m: _child_rule(P, zero, m) for m in order[1:]}
    pos = P.node_pos
    out = []
    for m in order:
        vec = [0] * len(P.nodes)
        vec[pos[m]] = 1 if m == P.cl.root else rules[m][1]
        below = {m}
        for d in order:
            if d in rules and rules[d][0] in below:
                p, alpha, r = rules[d]
                vec[pos[d]] = r(vec[pos[p]])
                below.add(d)
        out.append(tuple(vec))
    return out


def base_point(P: Plumbed, a: ReducedLift) -> tuple[int, ...]:
    order = _tree_order(P)
    pos = P.node_pos
    vec = [0] * len(P.nodes)
    for m in order[1:]:
        p, alpha, r = _child_rule(P, a, m)
        vec[pos[m]] = r(vec[pos[p]])
    return tuple(vec)


def lattice_points_in_box(P: Plumbed, a: ReducedLift, lo, hi):
    """All ell in Z^N(a) with lo <= ell <= hi coordinatewise (integers)."""
    order = _tree_order(P)
    pos = P.node_pos
    rules = {m: _child_rule(P, a, m) for m in order[1:]}
    cur = [0] * len(P.nodes)

    def rec(i):
        if i == len(order):
            yield tuple(cur)
            return
        m = order[i]
        j = pos[m]
        if i == 0:
            rng = range(lo[j], hi[j] + 1)
        else:
            p, alpha, r = rules[m]
            res = r(cur[pos[p]])
            start = lo[j] + (res - lo[j]) % alpha
            rng = range(start, hi[j] + 1, alpha)
        for v in rng:
            cur[j] = v
            yield from rec(i + 1)

    yield from rec(0)


def exponent_box(c, bound: int):
    """Integer ell range with 0 <= c + ell <= bound."""
    lo = tuple(ceil(-x) for x in c)
    hi = tuple(floor(bound - x) for x in c)
    return lo, hi
