"""Plumbing trees: parsing, vertex classification, subgraph determinants."""

from __future__ import annotations

import json
import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property


class GraphError(ValueError):
    """Malformed or non-tree plumbing description."""


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]
    arrows: tuple[str, ...] = ()

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.ids)}

    @cached_property
    def euler(self) -> dict[str, int]:
        return dict(self.vertices)

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.ids}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def valency(self, v: str) -> int:
        return len(self.adjacency[v]) + (1 if v in self.arrows else 0)

    def __len__(self) -> int:
        return len(self.vertices)


def _check_tree(ids: list[str], edges: list[tuple[str, str]]) -> None:
    if len(edges) != len(ids) - 1:
        raise GraphError(
            f"not a tree: {len(ids)} vertices but {len(edges)} edges")
    adj: dict[str, list[str]] = {v: [] for v in ids}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {ids[0]}
    todo = [ids[0]]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) != len(ids):
        raise GraphError("not a tree: graph is disconnected")


def make_graph(vertices, edges, arrows=()) -> PlumbingGraph:
    """Validate raw data and build a graph. Edges are deduplicated only when
    they repeat exactly; a repeated pair counts as a cycle otherwise."""
    ids: list[str] = []
    verts: list[tuple[str, int]] = []
    for vid, b in vertices:
        vid = str(vid)
        if vid in ids:
            raise GraphError(f"duplicate vertex id {vid!r}")
        if isinstance(b, bool) or not isinstance(b, int):
            raise GraphError(f"Euler number of {vid!r} must be an integer")
        ids.append(vid)
        verts.append((vid, b))
    if not ids:
        raise GraphError("graph has no vertices")
    known = set(ids)
    es: list[tuple[str, str]] = []
    for a, b in edges:
        a, b = str(a), str(b)
        for x in (a, b):
            if x not in known:
                raise GraphError(f"edge references unknown vertex {x!r}")
        if a == b:
            raise GraphError(f"loop at {a!r}")
        es.append((a, b) if a <= b else (b, a))
    _check_tree(ids, es)
    arr = tuple(str(x) for x in arrows)
    for x in arr:
        if x not in known:
            raise GraphError(f"arrow references unknown vertex {x!r}")
    if len(set(arr)) != len(arr):
        raise GraphError("more than one arrow on a vertex")
    g = PlumbingGraph(tuple(verts), tuple(sorted(es)), arr)
    for v, b in verts:
        if g.valency(v) <= 2 and v not in arr and b > -2:
            warnings.warn(f"vertex {v!r} with valency <= 2 has b = {b} > -2 "
                          "(graph is not minimal)", stacklevel=2)
    return g


def _parse_text(text: str):
    vertices, edges, arrows = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split('#', 1)[0].split()
        if not parts:
            continue
        kind, args = parts[0].lower(), parts[1:]
        try:
            if kind == 'vertex' and len(args) == 2:
                vertices.append((args[0], int(args[1])))
            elif kind == 'edge' and len(args) == 2:
                edges.append((args[0], args[1]))
            elif kind == 'arrow' and len(args) == 1:
                arrows.append(args[0])
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: bad integer in {raw.strip()!r}")
    return vertices, edges, arrows


def _parse_json(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or 'vertices' not in data:
        raise GraphError("JSON graph must be an object with 'vertices'")
    try:
        vertices = [(v['id'], v['b']) for v in data['vertices']]
        edges = [tuple(e) for e in data.get('edges', [])]
    except (KeyError, TypeError):
        raise GraphError("malformed vertex or edge entry") from None
    if any(len(e) != 2 for e in edges):
        raise GraphError("edges must be pairs")
    return vertices, edges, list(data.get('arrows', []))


def parse_plumbing(text: str) -> PlumbingGraph:
    """Parse the JSON format or the line-based text format."""
    stripped = text.lstrip()
    if stripped.startswith('{'):
        parts = _parse_json(text)
    else:
        parts = _parse_text(text)
    return make_graph(*parts)


def load_plumbing(path) -> PlumbingGraph:
    with open(path, encoding='utf-8') as fh:
        return parse_plumbing(fh.read())


def graph_to_json(g: PlumbingGraph) -> dict:
    return {
        'vertices': [{'id': v, 'b': b} for v, b in g.vertices],
        'edges': [list(e) for e in g.edges],
        'arrows': list(g.arrows),
    }


# ---------------------------------------------------------------- paths


def path(g: PlumbingGraph, v: str, w: str) -> tuple[str, ...]:
    """Vertices of the closed path [v, w] in order."""
    if v == w:
        return (v,)
    parent = {v: None}
    todo = deque([v])
    while todo:
        x = todo.popleft()
        if x == w:
            break
        for y in g.adjacency[x]:
            if y not in parent:
                parent[y] = x
                todo.append(y)
    out = [w]
    while out[-1] != v:
        out.append(parent[out[-1]])
    return tuple(reversed(out))


def open_path(g, v, w) -> tuple[str, ...]:
    """(v, w): the path with both endpoints removed; empty when v == w."""
    p = path(g, v, w)
    return p[1:-1] if len(p) > 1 else ()


def half_open_right(g, v, w) -> tuple[str, ...]:
    """(v, w]"""
    return path(g, v, w)[1:]


def half_open_left(g, v, w) -> tuple[str, ...]:
    """[v, w)"""
    return path(g, v, w)[:-1]


# ---------------------------------------------------------- determinants


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free integer determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def neg_intersection_block(g: PlumbingGraph, subset) -> list[list[int]]:
    s = list(subset)
    pos = {v: i for i, v in enumerate(s)}
    m = [[0] * len(s) for _ in s]
    for v, i in pos.items():
        m[i][i] = -g.euler[v]
    for a, b in g.edges:
        if a in pos and b in pos:
            m[pos[a]][pos[b]] = m[pos[b]][pos[a]] = -1
    return m


def subgraph_det(g: PlumbingGraph, subset) -> int:
    """det of -I restricted to the subset; the empty set has det 1."""
    return bareiss_det(neg_intersection_block(g, list(dict.fromkeys(subset))))


def graph_det(g: PlumbingGraph) -> int:
    return subgraph_det(g, g.ids)


def complement_det(g: PlumbingGraph, removed) -> int:
    gone = set(removed)
    return subgraph_det(g, [v for v in g.ids if v not in gone])


# -------------------------------------------------------- classification


@dataclass(frozen=True)
class Chain:
    """Oriented node-to-node chain: head < tail in the node order."""
    head: str
    tail: str
    interior: tuple[str, ...]  # from head side to tail side

    @property
    def connector(self) -> str:
        """Vertex on the chain adjacent to the head; the tail if empty."""
        return self.interior[0] if self.interior else self.tail


@dataclass(frozen=True)
class Leg:
    node: str
    end: str
    vertices: tuple[str, ...]  # (node, end] from node side


@dataclass(frozen=True)
class VertexClassification:
    nodes: tuple[str, ...]
    ends: tuple[str, ...]
    chains: tuple[Chain, ...]
    legs: tuple[Leg, ...]
    node_neighbors: dict = field(hash=False)
    node_ends: dict = field(hash=False)
    root: str | None
    parent: dict = field(hash=False)

    @property
    def delta_N(self) -> dict[str, int]:
        return {n: len(self.node_neighbors[n]) for n in self.nodes}

    @property
    def delta_E(self) -> dict[str, int]:
        return {n: len(self.node_ends[n]) for n in self.nodes}

    @property
    def high_nodes(self) -> tuple[str, ...]:
        """Nodes joined to at least two other nodes."""
        return tuple(n for n in self.nodes if len(self.node_neighbors[n]) >= 2)

    def less(self, n: str, m: str) -> bool:
        """n < m in the rooted order: m lies farther from the root."""
        x = self.parent.get(m)
        while x is not None:
            if x == n:
                return True
            x = self.parent.get(x)
        return False

    def chain(self, n: str, m: str) -> Chain:
        for c in self.chains:
            if {c.head, c.tail} == {n, m}:
                return c
        raise KeyError((n, m))

    def chains_at(self, n: str) -> list[Chain]:
        return [c for c in self.chains if n in (c.head, c.tail)]


def classify(g: PlumbingGraph) -> VertexClassification:
    nodes = tuple(sorted(v for v in g.ids if g.valency(v) >= 3))
    ends = tuple(sorted(v for v in g.ids if g.valency(v) == 1))
    node_set = set(nodes)
    chains_raw: dict[frozenset, tuple[str, str, tuple[str, ...]]] = {}
    legs: list[Leg] = []
    nbrs: dict[str, list[str]] = {n: [] for n in nodes}
    node_ends: dict[str, list[str]] = {n: [] for n in nodes}
    for n in nodes:
        for first in g.adjacency[n]:
            walk = [first]
            prev, cur = n, first
            while cur not in node_set and g.valency(cur) == 2:
                nxt = [y for y in g.adjacency[cur] if y != prev]
                if not nxt:  # arrow-carrying end of a chain
                    break
                prev, cur = cur, nxt[0]
                walk.append(cur)
            if cur in node_set:
                nbrs[n].append(cur)
                chains_raw.setdefault(frozenset((n, cur)),
                                      (n, cur, tuple(walk[:-1])))
            elif g.valency(cur) == 1:
                node_ends[n].append(cur)
                legs.append(Leg(n, cur, tuple(walk)))
    root = nodes[0] if nodes else None
    parent: dict[str, str | None] = {}
    if root is not None:
        parent[root] = None
        todo = [root]
        while todo:
            n = todo.pop()
            for m in sorted(nbrs[n]):
                if m not in parent:
                    parent[m] = n
                    todo.append(m)
    chains = []
    for a, b, inner in chains_raw.values():
        if parent.get(b) == a:
            chains.append(Chain(a, b, inner))
        else:
            chains.append(Chain(b, a, tuple(reversed(inner))))
    chains.sort(key=lambda c: (c.head, c.tail))
    legs.sort(key=lambda l: (l.node, l.end))
    return VertexClassification(
        nodes=nodes,
        ends=ends,
        chains=tuple(chains),
        legs=tuple(legs),
        node_neighbors={n: tuple(sorted(v)) for n, v in nbrs.items()},
        node_ends={n: tuple(sorted(v)) for n, v in node_ends.items()},
        root=root,
        parent=parent,
    )
