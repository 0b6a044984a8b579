"""Polynomial parts by division with remainder, P_h, sw^norm and the
counting-function oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .laurent import Laurent
from .lattice import canonical_class
from .lifts import ReducedLift, c_vector, class_of_lift
from .manifold import Plumbed
from .monoid import GeneratorSet, choose_generators, graded_holes, theorem_lifts
from .series import _single_node_form, gen_binom, single_node_generators


class DivisionError(ValueError):
    pass


class SupportViolation(RuntimeError):
    pass


class OracleError(ValueError):
    pass


def _phi(f, e) -> Fraction:
    return sum((x * y for x, y in zip(f, e)), Fraction(0))


def _product(vs, nvars: int) -> Laurent:
    F = Laurent.one(nvars)
    for v in vs:
        F = F * Laurent({(Fraction(0),) * nvars: 1, tuple(Fraction(x) for x in v): -1}, nvars)
    return F


def divide(W: Laurent, vs, phi) -> tuple[Laurent, Laurent]:
    """W = Q * prod(1 - t^v) + R with phi(R) inside [0, sum phi(v)).

    phi is a linear functional given by its coefficient vector and must be
    positive on every v."""
    nvars = W.nvars
    if not vs:
        return W.copy(), Laurent.zero(nvars)
    if any(_phi(phi, v) <= 0 for v in vs):
        raise DivisionError("division functional must be positive on the divisors")
    F = _product(vs, nvars)
    top = tuple(sum(Fraction(v[i]) for v in vs) for i in range(nvars))
    sign = (-1) ** len(vs)
    D = _phi(phi, top)
    R = W.copy()
    Q = Laurent.zero(nvars)

    def reduce(e, c):
        Q.add_term(e, c)
        for fe, fc in F.terms.items():
            R.add_term(tuple(x + y for x, y in zip(e, fe)), -c * fc)

    while True:
        high = [e for e in R.terms if _phi(phi, e) >= D]
        if not high:
            break
        e = max(high, key=lambda x: _phi(phi, x))
        reduce(tuple(x - y for x, y in zip(e, top)), sign * R.terms[e])
    while True:
        low = [e for e in R.terms if _phi(phi, e) < 0]
        if not low:
            break
        e = min(low, key=lambda x: _phi(phi, x))
        reduce(e, R.terms[e])
    return Q, R


def _unit(nvars: int, j: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == j)) for i in range(nvars))


def decompose_one_var(m, vs, j: int) -> tuple[Laurent, Laurent]:
    """(Pol^n, R^n) for t^m divided by prod(1 - t^v) in the variable j."""
    W = Laurent.monomial(m)
    return divide(W, vs, _unit(len(m), j))


@dataclass
class TwoVarDecomposition:
    pol: Laurent
    r1: Laurent
    r2: Laurent
    r: Laurent


def _component(P: Plumbed, n: str, away: str) -> set[str]:
    """Nodes reachable from n in the node tree without crossing to `away`."""
    seen = {n}
    todo = [n]
    while todo:
        x = todo.pop()
        for y in P.cl.node_neighbors[x]:
            if x == n and y == away:
                continue
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _proportional(x, d) -> bool:
    """x is a positive multiple of d (2-vectors)."""
    return x[0] * d[1] == x[1] * d[0] and x[0] * d[0] + x[1] * d[1] > 0


def decompose_two_var(P: Plumbed, m, I, n: str, n2: str, gens: GeneratorSet,
                      check: bool = True) -> TwoVarDecomposition:
    """Four-part decomposition of t^m along the chain (n, n2)."""
    nvars = len(P.nodes)
    pos = P.node_pos
    iu, iw = pos[n], pos[n2]
    side_n = _component(P, n, n2)
    vecs = {x: gens.vectors[pos[x]] for x in I}
    A = [vecs[x] for x in sorted(I) if x in side_n]
    B = [vecs[x] for x in sorted(I) if x not in side_n]
    alpha = (P.node_duals[n][iu], P.node_duals[n][iw])
    beta = (P.node_duals[n2][iu], P.node_duals[n2][iw])
    for v in A:
        if not _proportional((v[iu], v[iw]), alpha):
            raise DivisionError(f"projection of {v} is not along {alpha}")
    for v in B:
        if not _proportional((v[iu], v[iw]), beta):
            raise DivisionError(f"projection of {v} is not along {beta}")

    def functional(cu, cw):
        f = [Fraction(0)] * nvars
        f[iu], f[iw] = Fraction(cu), Fraction(cw)
        return tuple(f)

    s = functional(beta[1], -beta[0])
    if _phi(s, _pad(alpha, iu, iw, nvars)) < 0:
        s = tuple(-x for x in s)
    r = functional(alpha[1], -alpha[0])
    if _phi(r, _pad(beta, iu, iw, nvars)) < 0:
        r = tuple(-x for x in r)
    u, w = _unit(nvars, iu), _unit(nvars, iw)

    q, rho = divide(Laurent.monomial(m), A, s)
    p0, r2a = divide(q, B, r)
    r1a, rem = divide(rho, B, r)
    p1, r1 = divide(r1a, A, w)
    p2, r2 = divide(r2a, B, u)
    out = TwoVarDecomposition(p0 + p1 + p2, r1, r2, rem)
    if check:
        _check_two_var(out, A, B, iu, iw)
    return out


def _pad(x, iu, iw, nvars):
    out = [Fraction(0)] * nvars
    out[iu], out[iw] = Fraction(x[0]), Fraction(x[1])
    return tuple(out)


def _check_two_var(d: TwoVarDecomposition, A, B, iu, iw) -> None:
    TA = (sum(Fraction(v[iu]) for v in A), sum(Fraction(v[iw]) for v in A))
    TB = (sum(Fraction(v[iu]) for v in B), sum(Fraction(v[iw]) for v in B))
    for e in d.pol.terms:
        if e[iu] < 0 and e[iw] < 0:
            raise SupportViolation(f"Pol term {e} in the negative quadrant")
    for e in d.r1.terms:
        t = e[iw] / TA[1] if TA[1] else None
        if t is None or not (0 <= t < 1) or e[iu] > t * TA[0]:
            raise SupportViolation(f"R1 term {e} outside its region")
    for e in d.r2.terms:
        t = e[iu] / TB[0] if TB[0] else None
        if t is None or not (0 <= t < 1) or e[iw] > t * TB[1]:
            raise SupportViolation(f"R2 term {e} outside its region")
    det = TA[0] * TB[1] - TA[1] * TB[0]
    for e in d.r.terms:
        if not A and not B:
            raise SupportViolation("nonzero remainder without divisors")
        if A and B:
            sa = (e[iu] * TB[1] - e[iw] * TB[0]) / det
            sb = (TA[0] * e[iw] - TA[1] * e[iu]) / det
        elif A:
            sa, sb = e[iu] / TA[0], Fraction(0)
            if e[iu] * TA[1] != e[iw] * TA[0]:
                raise SupportViolation(f"R term {e} off the segment")
        else:
            sa, sb = Fraction(0), e[iw] / TB[1]
            if e[iu] * TB[1] != e[iw] * TB[0]:
                raise SupportViolation(f"R term {e} off the segment")
        if not (0 <= sa < 1 and 0 <= sb < 1):
            raise SupportViolation(f"R term {e} outside the parallelogram")


def chain_pairs(P: Plumbed) -> list[tuple[str, str]]:
    return [(c.head, c.tail) for c in P.chains]


def pol(P: Plumbed, m, I, gens: GeneratorSet) -> Laurent:
    """Pol_{(m, I)}: sum over chains minus (delta_n - 1) times one-variable parts."""
    nvars = len(P.nodes)
    I = sorted(I)
    vs = [gens.vectors[P.node_pos[x]] for x in I]
    out = Laurent.zero(nvars)
    for n, n2 in chain_pairs(P):
        out = out + decompose_two_var(P, m, I, n, n2, gens).pol
    dN = P.cl.delta_N
    for n in P.nodes:
        wt = dN[n] - 1
        if wt:
            out = out - decompose_one_var(m, vs, P.node_pos[n])[0].scale(wt)
    return out


@dataclass
class SWResult:
    h: tuple
    P_h: Laurent
    sw_norm: Fraction
    lift: ReducedLift
    generators: GeneratorSet
    ledger: list = field(default_factory=list)  # (ell, I, k, weight, Pol)
    sw_raw: Fraction | None = None  # sw_{-h*sigma_can}

    @property
    def polynomial_terms(self):
        return self.P_h.sorted_terms()


def assemble_P_h(P: Plumbed, a: ReducedLift, gens: GeneratorSet) -> SWResult:
    """P_h as the signed sum of Pol over graded holes; sw^norm_h = P_h(1)."""
    nodes = P.nodes
    h = class_of_lift(P, a)
    c = c_vector(P, a)
    total = Laurent.zero(len(nodes))
    ledger = []
    if len(nodes) == 1:
        form = _single_node_form(P, a, gens)
        for _, num, dens in form.items():
            for e, coef in num.terms.items():
                q, _ = decompose_one_var(e, dens, 0)
                total = total + q.scale(coef)
        return _finish(P, SWResult(h, total, Fraction(total.at_one()), a, gens, ledger))
    dN = P.cl.delta_N
    high = set(P.cl.high_nodes)
    rest = [n for n in nodes if n not in high]
    for k in theorem_lifts(P, a):
        wk = 1
        for n, kn in k.items():
            wk *= (-1) ** kn * comb(dN[n] - 2, kn)
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                I = high | set(extra)
                comp = [x for x in nodes if x not in I]
                weight = wk * (-1) ** r
                for ell in graded_holes(P, a, gens, k, I):
                    m = tuple(x + y for x, y in zip(c, ell))
                    piece = pol(P, m, comp, gens)
                    ledger.append((ell, tuple(comp), tuple(sorted(k.items())), weight, piece))
                    total = total + piece.scale(weight)
    return _finish(P, SWResult(h, total, Fraction(total.at_one()), a, gens, ledger))


def normalization_shift(P: Plumbed, h) -> Fraction:
    """((K + 2 r_h)^2 + |V|) / 8."""
    K = canonical_class(P.idata, P.graph).coords
    r = P.dg.representative(h)
    Kr = tuple(k + 2 * v for k, v in zip(K, r))
    return (P.idata.pair(Kr, Kr) + len(P.graph.ids)) / 8


def _finish(P: Plumbed, res: SWResult) -> SWResult:
    res.sw_raw = -res.sw_norm - normalization_shift(P, res.h)
    return res


def generators_for(P: Plumbed, a: ReducedLift, strategy: str = 'small',
                   pinned=None, kappa: int = 1) -> GeneratorSet:
    """Generators used by the P_h pipeline; kappa is imposed on the high nodes."""
    if len(P.nodes) == 1:
        return single_node_generators(P, pinned[0] if pinned else None)
    lifts = [a.minus(k) for k in theorem_lifts(P, a)]
    return choose_generators(P, lifts, kappa, strategy, pinned, P.cl.high_nodes)


def compute_sw(P: Plumbed, a: ReducedLift, strategy: str = 'small',
               pinned=None, kappa: int = 1) -> SWResult:
    gens = generators_for(P, a, strategy, pinned, kappa)
    try:
        return assemble_P_h(P, a, gens)
    except (DivisionError, SupportViolation):
        if strategy != 'small':
            raise
    return assemble_P_h(P, a, generators_for(P, a, 'proof', None, kappa))


# ------------------------------------------------------------ oracle


def _pair(P: Plumbed, x, y) -> Fraction:
    return P.idata.pair(x, y)


def oracle_x(P: Plumbed, h, extra: int = 0) -> tuple[Fraction, ...]:
    """A point of -K + int(S') in class h: -K + sum E*_v + s with s a small
    nonnegative combination of duals, shifted by `extra` fundamental cycles."""
    g = P.graph
    ids = g.ids
    K = canonical_class(P.idata, g).coords
    base = [1] * len(ids)  # dual coordinates of sum E*_v
    cls_base = P.dg.class_of(base)
    cls_K = P.dg.class_of([g.euler[v] + 2 for v in ids])
    # class of x = -[K] + [base] + [s] must be h
    need = P.dg.add(h, P.dg.add(cls_K, tuple((-x) % d for x, d in zip(cls_base, P.dg.factors))))
    units = [P.dg.class_of([int(w == v) for w in ids]) for v in ids]
    # BFS for s with small total multiplicity
    start = P.dg.zero()
    prev = {start: None}
    order = [start]
    i = 0
    while need not in prev and i < len(order):
        cur = order[i]
        i += 1
        for j, u in enumerate(units):
            nxt = P.dg.add(cur, u)
            if nxt not in prev:
                prev[nxt] = (cur, j)
                order.append(nxt)
    y = list(base)
    node = need
    while prev[node] is not None:
        node, j = prev[node]
        y[j] += 1
    dualE = P.idata.to_E(y)
    Z = fundamental_cycle(P)
    return tuple(d - k + extra * z for d, k, z in zip(dualE, K, Z))


def fundamental_cycle(P: Plumbed) -> tuple[int, ...]:
    """Laufer's algorithm: the least nonzero element of L with (Z, E_v) <= 0."""
    I = P.idata.I
    n = len(I)
    Z = [1] * n
    while True:
        hits = [v for v in range(n) if sum(I[v][w] * Z[w] for w in range(n)) > 0]
        if not hits:
            return tuple(Z)
        Z[hits[0]] += 1


def counting_function(P: Plumbed, h, x) -> int:
    """Q_h(x): sum of coefficients p_{l'} of Z_h(t) over l' not >= x.

    Expands prod_v (1 - t^{E*_v})^(delta_v - 2) over vertices of valency
    != 2, nodes first; the last factor is an end, whose series has all
    coefficients 1, so its contribution is counted in closed form."""
    g = P.graph
    ids = g.ids
    det = P.idata.det
    X = tuple(int(v * det) for v in x)
    assert all(Fraction(v) * det == Xi for v, Xi in zip(x, X))
    vecs = {v: tuple(int(c * det) for c in P.idata.dual_E(v))
            for v in ids if g.valency(v) != 2}
    # nodes first, then ends by decreasing size; the smallest end goes last
    verts = sorted(vecs, key=lambda v: (g.valency(v) == 1, -sum(vecs[v]), v))
    units = {v: P.dg.class_of([int(w == v) for w in ids]) for v in verts}
    h = tuple(h)
    n = len(ids)
    closed = bool(verts) and g.valency(verts[-1]) == 1
    if closed:
        last = verts.pop()
        lv, lu = vecs[last], units[last]
        # class c needs y = hit[c] mod period extra copies of E*_last
        hit, acc, period = {}, h, 0
        while acc not in hit:
            hit[acc] = period
            acc = P.dg.add(acc, tuple(-t % d for t, d in zip(lu, P.dg.factors)))
            period += 1
    total = 0

    def geq(cur):
        return all(c >= t for c, t in zip(cur, X))

    def close(cur, cls):
        y0 = hit.get(cls)
        if y0 is None:
            return 0
        Y = max(-(-(t - c) // e) for c, t, e in zip(cur, X, lv) if c < t)
        return (Y - y0 + period - 1) // period if y0 < Y else 0

    def rec(i, cur, cls, coef):
        nonlocal total
        if geq(cur):
            return
        if i == len(verts):
            if closed:
                total += coef * close(cur, cls)
            elif cls == h:
                total += coef
            return
        v = verts[i]
        d = g.valency(v)
        y = 0
        pt, cc = cur, cls
        while True:
            if d >= 3 and y > d - 2:
                break
            if geq(pt):
                break
            f = (-1) ** y * gen_binom(d - 2, y)
            if f:
                rec(i + 1, pt, cc, coef * f)
            y += 1
            pt = tuple(p + e for p, e in zip(pt, vecs[v]))
            cc = P.dg.add(cc, units[v])

    rec(0, (0,) * n, P.dg.zero(), 1)
    return total


def oracle_sw_counting(P: Plumbed, h, x=None) -> Fraction:
    """sw^norm_h from the counting function at x in -K + int(S'), [x] = h."""
    g = P.graph
    K = canonical_class(P.idata, g).coords
    if x is None:
        x = oracle_x(P, h)
    x = tuple(Fraction(v) for v in x)
    shifted = P.idata.to_dual(tuple(a + b for a, b in zip(x, K)))
    if any(v < 1 for v in shifted):
        raise OracleError("x is not in -K + int(S')")
    if P.dg.class_of(P.idata.to_dual(x)) != tuple(h):
        raise OracleError("x is not in class h")
    r = P.dg.representative(h)
    nV = len(g.ids)
    Kx = tuple(k + 2 * v for k, v in zip(K, x))
    Kr = tuple(k + 2 * v for k, v in zip(K, r))
    Q = counting_function(P, h, x)
    return Q + (_pair(P, Kx, Kx) + nV) / 8 - (_pair(P, Kr, Kr) + nV) / 8
