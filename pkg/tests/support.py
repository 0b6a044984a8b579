"""Shared graphs and helpers for the test modules."""

from __future__ import annotations

import warnings
from functools import lru_cache

from plumbsw.lifts import lift_from_dual
from plumbsw.manifold import Plumbed
from plumbsw.samples import load_example, random_tree

RANDOM_SEEDS = (0, 1, 2, 3, 4, 5)
GRAPH_NAMES = ('gamma_ex', 'gamma_h9') + tuple(f'random_{s}' for s in RANDOM_SEEDS)

PIN_EX = ((62, 28, 24), (84, 42, 36), (24, 12, 14))
PIN_H9 = ((21, 6, 6), (12, 6, 6), (6, 3, 9))


@lru_cache(maxsize=None)
def graph(name: str):
    if name.startswith('random_'):
        return random_tree(int(name.split('_')[1]))
    return load_example(name)


@lru_cache(maxsize=None)
def plumbed(name: str) -> Plumbed:
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        return Plumbed.from_graph(graph(name))


def h9_end_lift(P: Plumbed):
    """E*_{v12} + E*_{v32}."""
    return lift_from_dual(P, [int(v in ('v12', 'v32')) for v in P.graph.ids])


def monomials(*exps):
    return sorted((tuple(e), 1) for e in exps)


def as_int_terms(L):
    return sorted((tuple(int(x) for x in e), c) for e, c in L.terms.items())
