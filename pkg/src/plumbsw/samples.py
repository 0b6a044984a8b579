"""Bundled example graphs and seeded random plumbing trees."""

from __future__ import annotations

import random
from importlib.resources import files

from .graph_core import PlumbingGraph, make_graph, parse_plumbing
from .lattice import NotNegativeDefinite, intersection_data

EXAMPLES = ('gamma_ex', 'gamma_h9')


def load_example(name: str) -> PlumbingGraph:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; have {', '.join(EXAMPLES)}")
    return parse_plumbing(files('plumbsw').joinpath('data', f'{name}.txt').read_text())


def star_graph(center: int, legs) -> PlumbingGraph:
    """One node with the given legs, each a list of Euler numbers read
    outwards from the node."""
    verts = [('n', center)]
    edges = []
    for i, leg in enumerate(legs):
        prev = 'n'
        for j, b in enumerate(leg):
            vid = f"u{i}_{j}"
            verts.append((vid, b))
            edges.append((prev, vid))
            prev = vid
    return make_graph(verts, edges)


def _random_candidate(rng: random.Random, n_nodes: int) -> PlumbingGraph:
    verts, edges = [], []
    nodes = [f"n{i + 1}" for i in range(n_nodes)]
    for n in nodes:
        verts.append((n, rng.choice((-1, -2, -2, -3))))
    for i in range(n_nodes - 1):
        prev = nodes[i]
        for j in range(rng.choice((0, 1, 1, 2))):
            vid = f"c{i + 1}{j + 1}"
            verts.append((vid, rng.choice((-2, -2, -3, -4))))
            edges.append((prev, vid))
            prev = vid
        edges.append((prev, nodes[i + 1]))
    for i, n in enumerate(nodes):
        inner = (i > 0) + (i < n_nodes - 1)
        for j in range(3 - inner + rng.choice((0, 0, 1))):
            prev = n
            for k in range(rng.choice((1, 1, 2))):
                vid = f"v{i + 1}{j + 1}{'abc'[k]}"
                verts.append((vid, rng.choice((-2, -2, -3, -4, -5))))
                edges.append((prev, vid))
                prev = vid
    return make_graph(verts, edges)


def random_tree(seed: int, max_vertices: int = 12, nodes=(2, 3),
                max_det: int = 12) -> PlumbingGraph:
    """A negative definite tree with the requested number of nodes and a
    small determinant, deterministic in `seed`."""
    rng = random.Random(seed)
    for _ in range(10000):
        g = _random_candidate(rng, rng.choice(tuple(nodes)))
        if len(g) > max_vertices:
            continue
        try:
            d = intersection_data(g)
        except NotNegativeDefinite:
            continue
        if d.det <= max_det:
            return g
    raise RuntimeError(f"no admissible tree found for seed {seed}")
