"""Truncated expansions and rational forms of the reduced series Z_h."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .laurent import Laurent, RationalSeriesForm
from .lifts import ReducedLift, c_vector, exponent_box
from .manifold import Plumbed
from .monoid import (GeneratorSet, _multiplier_step, _scaled, enumerate_box,
                     graded_holes, nonnegative_points, quasilinear_system,
                     theorem_lifts)


class UnsupportedGraph(ValueError):
    pass


def gen_binom(m: int, j: int) -> int:
    """Generalized binomial coefficient m(m-1)...(m-j+1)/j! for j >= 0."""
    if j < 0:
        return 0
    if m >= 0:
        return comb(m, j)
    return (-1) ** j * comb(j - m - 1, j)


def _require_nodes(P: Plumbed) -> None:
    if not P.nodes:
        raise UnsupportedGraph("graphs without nodes are not supported")


def _nonneg(P: Plumbed, a: ReducedLift, bound: int):
    c = c_vector(P, a)
    lo, hi = exponent_box(c, bound)
    return c, nonnegative_points(P, a, lo, hi)


def _exp(c, ell):
    return tuple(x + y for x, y in zip(c, ell))


def expand_direct(P: Plumbed, a: ReducedLift, bound: int) -> Laurent:
    """Z_h up to per-node exponent bound, summing over S_a."""
    _require_nodes(P)
    dN = P.cl.delta_N
    deltas = [dN[n] for n in P.nodes]
    high = [dN[n] >= 2 for n in P.nodes]
    c, pts = _nonneg(P, a, bound)
    out = Laurent(None, len(P.nodes))
    for ell, vals in pts:
        coef = 1
        for d, hi, v in zip(deltas, high, vals):
            if hi and v > d - 2:
                coef = 0
                break
            coef *= (-1) ** v * gen_binom(d - 2, v)
        if coef:
            out.add_term(_exp(c, ell), coef)
    return out


def expand_alternative(P: Plumbed, a: ReducedLift, bound: int) -> Laurent:
    """Z_h via sum_k (-1)^k binom(delta-1, k) H_{M_a(k)}, M_a(k) = M_{a-k}.

    Since N_{a-k}(l, n) = N_a(l, n) - k_n, each l in M_a contributes
    prod_n sum_{k_n <= N_a(l, n)} (-1)^k binom(delta_n - 1, k); the inner
    sums are taken over the admissible k range of each node."""
    _require_nodes(P)
    dN = P.cl.delta_N
    nodes = P.nodes
    c, pts = _nonneg(P, a, bound)
    out = Laurent(None, len(nodes))
    cache: dict = {}

    def partial_sum(d, v):
        key = (d, v)
        if key not in cache:
            top = min(v, d - 1) if d >= 1 else v
            cache[key] = sum((-1) ** k * gen_binom(d - 1, k) for k in range(top + 1))
        return cache[key]

    for ell, vals in pts:
        coef = 1
        for n, v in zip(nodes, vals):
            coef *= partial_sum(dN[n], v)
            if not coef:
                break
        if coef:
            out.add_term(_exp(c, ell), coef)
    return out


def single_node_generators(P: Plumbed, vector=None) -> GeneratorSet:
    (n,) = P.nodes
    step = _multiplier_step(P, n, strict=True)
    if vector is None:
        return GeneratorSet((_scaled(P, n, step),), (step,), 0, 'proof')
    v = tuple(int(x) for x in vector)
    mu = Fraction(v[0]) / P.node_duals[n][0]
    if mu <= 0 or mu % step:
        raise ValueError(f"{v} is not a positive multiple of {_scaled(P, n, step)}")
    return GeneratorSet((v,), (mu,), 0, 'pinned')


def _single_node_form(P: Plumbed, a: ReducedLift, gens: GeneratorSet) -> RationalSeriesForm:
    v = gens.vectors[0]
    lam = int(gens.multipliers[0])
    Q = quasilinear_system(P, a)
    c = c_vector(P, a)
    num = Laurent(None, 1)
    for ell in enumerate_box(P, a, gens):
        n0 = Q.value(ell, 0)
        j0 = max(0, -(-(-n0) // lam))
        start = _exp(c, (ell[0] + j0 * v[0],))
        C = n0 + 1 + j0 * lam
        num.add_term(start, C)
        num.add_term((start[0] + v[0],), lam - C)
    form = RationalSeriesForm(1)
    form.add(frozenset(), num, [v, v])
    return form


def rational_form(P: Plumbed, a: ReducedLift, gens: GeneratorSet) -> RationalSeriesForm:
    """Closed form of Z_h from graded holes (one node: squared denominator)."""
    _require_nodes(P)
    if len(P.nodes) == 1:
        return _single_node_form(P, a, gens)
    nodes = P.nodes
    dN = P.cl.delta_N
    high = set(P.cl.high_nodes)
    rest = [n for n in nodes if n not in high]
    c = c_vector(P, a)
    form = RationalSeriesForm(len(nodes))
    for k in theorem_lifts(P, a):
        wk = 1
        for n, kn in k.items():
            wk *= (-1) ** kn * comb(dN[n] - 2, kn)
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                I = high | set(extra)
                num = Laurent(None, len(nodes))
                for ell in graded_holes(P, a, gens, k, I):
                    num.add_term(_exp(c, ell), wk * (-1) ** r)
                dens = [gens.vectors[i] for i, n in enumerate(nodes) if n not in I]
                form.add(frozenset(I), num, dens)
    return form


def expand_rational(form: RationalSeriesForm, bound: int) -> Laurent:
    return form.expand(bound)


# ------------------------------------------------- full-variable series


def _factor_coefficient(delta: int, y: int) -> int:
    """Coefficient of T^y in (1 - T)^(delta - 2)."""
    return (-1) ** y * gen_binom(delta - 2, y)


def reduced_series_from_product(P: Plumbed, bound: int) -> dict:
    """Z_h(t_N) for every h by multiplying out prod_v (1 - t^{E*_v})^(delta_v - 2)
    with t_v = 1 off the nodes; exponents with some node coordinate > bound
    are dropped.  Returns {h: Laurent}."""
    _require_nodes(P)
    g = P.graph
    idx = P.idata.index
    node_ix = [idx[n] for n in P.nodes]
    verts = [v for v in g.ids if g.valency(v) != 2]
    dual = {v: P.idata.dual_E(v) for v in verts}
    proj = {v: tuple(dual[v][j] for j in node_ix) for v in verts}
    unit = {v: P.dg.class_of([int(w == v) for w in g.ids]) for v in verts}
    out: dict = {}
    zero_cls = P.dg.zero()

    def rec(i, exp, cls, coef):
        if i == len(verts):
            out.setdefault(cls, Laurent(None, len(node_ix))).add_term(exp, coef)
            return
        v = verts[i]
        d = g.valency(v)
        y = 0
        cur, cc = exp, cls
        while all(x <= bound for x in cur):
            f = _factor_coefficient(d, y)
            if d >= 3 and y > d - 2:
                break
            if f:
                rec(i + 1, cur, cc, coef * f)
            y += 1
            cur = tuple(x + e for x, e in zip(cur, proj[v]))
            cc = P.dg.add(cc, unit[v])

    rec(0, (Fraction(0),) * len(node_ix), zero_cls, 1)
    return out
