"""Quasilinear functions N_a, generators, boxes and holes of the modules M_a."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm

from .laurent import Laurent, RationalSeriesForm
from .lattice import exact_inverse, mat_vec
from .lifts import (ReducedLift, _child_rule, _tree_order, affine_lattice_member,
                    base_point, c_vector, lattice_generators, node_projection)
from .manifold import Plumbed


class PinnedGeneratorsInvalid(ValueError):
    pass


class NotInAffineLattice(ValueError):
    pass


@dataclass(frozen=True)
class QuasilinearSystem:
    """N_a(., n) for every node, with integer-scaled linear parts.

    N_bar(l, n) = (const[n] + sum_j coef[n][j] l_j) / den[n]."""
    den: tuple[int, ...]
    const: tuple[int, ...]
    coef: tuple[tuple[int, ...], ...]
    ends: tuple[tuple[tuple[int, int, int], ...], ...]  # (a_u, omega_u, alpha_u)

    def nbar(self, ell, i: int) -> Fraction:
        s = self.const[i] + sum(c * x for c, x in zip(self.coef[i], ell))
        return Fraction(s, self.den[i])

    def value(self, ell, i: int) -> int:
        d = self.den[i]
        s = self.const[i] + sum(c * x for c, x in zip(self.coef[i], ell))
        x = ell[i]
        for au, w, al in self.ends[i]:
            s -= ((au - w * x) % al) * (d // al)
        q, r = divmod(s, d)
        if r:
            raise NotInAffineLattice(f"N is not integral at {tuple(ell)}")
        return q

    def values(self, ell) -> tuple[int, ...]:
        return tuple(self.value(ell, i) for i in range(len(self.den)))


def quasilinear_system(P: Plumbed, a: ReducedLift) -> QuasilinearSystem:
    nodes = P.nodes
    pos = P.node_pos
    A = node_projection(P, a).A
    ae = a.a_end
    dens, consts, coefs, ends = [], [], [], []
    for i, n in enumerate(nodes):
        lin = [Fraction(0)] * len(nodes)
        lin[i] = -P.orb.e[n]
        for m in P.cl.node_neighbors[n]:
            alpha, _ = P.alpha_omega(n, m)
            lin[pos[m]] -= Fraction(1, alpha)
        legs = P.legs_at(n)
        d = lcm(A[i].denominator, *(x.denominator for x in lin), *(l.alpha for l in legs))
        dens.append(d)
        consts.append(int(A[i] * d))
        coefs.append(tuple(int(x * d) for x in lin))
        ends.append(tuple((ae.get(l.end, 0), l.omega, l.alpha) for l in legs))
    return QuasilinearSystem(tuple(dens), tuple(consts), tuple(coefs), tuple(ends))


def N_eval(P: Plumbed, a: ReducedLift, ell, n: str) -> int:
    return quasilinear_system(P, a).value(ell, P.node_pos[n])


def Nbar_eval(P: Plumbed, a: ReducedLift, ell, n: str) -> Fraction:
    return quasilinear_system(P, a).nbar(ell, P.node_pos[n])


def membership(P: Plumbed, a: ReducedLift, ell) -> str:
    """'member', 'hole' or 'outside' (of the normalization)."""
    if not affine_lattice_member(P, a, ell):
        raise NotInAffineLattice(f"{tuple(ell)} is not in Z^N(a)")
    Q = quasilinear_system(P, a)
    k = range(len(P.nodes))
    if any(Q.nbar(ell, i) < 0 for i in k):
        return 'outside'
    return 'member' if all(Q.value(ell, i) >= 0 for i in k) else 'hole'


# ----------------------------------------------------------- generators


@dataclass(frozen=True)
class GeneratorSet:
    vectors: tuple[tuple[int, ...], ...]  # ordered as P.nodes
    multipliers: tuple[Fraction, ...]  # v_n = multipliers[n] * pi_N(E*_n)
    kappa: int
    strategy: str
    kappa_nodes: tuple[str, ...] = ()  # nodes held to kappa, the rest to 0

    def to_json(self) -> dict:
        return {
            'vectors': [list(v) for v in self.vectors],
            'multipliers': [str(m) for m in self.multipliers],
            'kappa': self.kappa,
            'kappa_nodes': list(self.kappa_nodes),
            'strategy': self.strategy,
        }


def theorem_lifts(P: Plumbed, a: ReducedLift, shift: int = 2) -> list[dict]:
    """Multi-indices k over the high nodes with 0 <= k_n <= delta_n - shift."""
    high = P.cl.high_nodes
    dN = P.cl.delta_N
    ranges = [range(dN[n] - shift + 1) for n in high]
    return [dict(zip(high, ks)) for ks in itertools.product(*ranges)]


def _frac_lcm(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(lcm(x.numerator, y.numerator), gcd(x.denominator, y.denominator))


def _multiplier_step(P: Plumbed, n: str, strict: bool) -> Fraction:
    """Least mu > 0 such that mu * pi(E*_n) is integral, lies in Z^N(0) and
    has coordinates at n' divisible by alpha_u for u in E_n'.  With
    strict=False the coordinate at n itself is exempt."""
    vec = P.node_duals[n]
    need = Fraction(0)
    for j, m in enumerate(P.nodes):
        mod = 1
        if strict or m != n:
            mod = lcm(1, *(l.alpha for l in P.legs_at(m)))
        g = Fraction(mod) / vec[j]
        need = g if not need else _frac_lcm(need, g)
    zero = ReducedLift.build({}, {}, {})
    for k in itertools.count(1):
        if affine_lattice_member(P, zero, _scaled(P, n, need * k)):
            return need * k


def _scaled(P: Plumbed, n: str, mu: Fraction) -> tuple[int, ...]:
    out = []
    for x in P.node_duals[n]:
        y = x * mu
        assert y.denominator == 1
        out.append(int(y))
    return tuple(out)


def proof_generators(P: Plumbed, kappa: int = 1, kappa_nodes=None) -> GeneratorSet:
    mults = []
    for n in P.nodes:
        step = _multiplier_step(P, n, strict=True)
        target = len(P.legs_at(n)) + kappa
        mults.append(step * max(1, -(-target // step)))
    vecs = tuple(_scaled(P, n, mu) for n, mu in zip(P.nodes, mults))
    return GeneratorSet(vecs, tuple(mults), kappa, 'proof', _knodes(P, kappa_nodes))


def _period_check(P: Plumbed, Q: QuasilinearSystem, box, gens, i: int, kappa: int) -> bool:
    """N(l + m v_i, i) >= kappa for every box point l and m >= 1."""
    v = gens[i]
    period = 1
    for _, _, al in Q.ends[i]:
        period = lcm(period, al // gcd(al, v[i]))
    for ell in box:
        for m in range(1, period + 1):
            pt = tuple(x + m * y for x, y in zip(ell, v))
            if Q.value(pt, i) < kappa:
                return False
    return True


def _knodes(P: Plumbed, kappa_nodes) -> tuple[str, ...]:
    return tuple(P.nodes if kappa_nodes is None else sorted(kappa_nodes))


def check_generators(P: Plumbed, lifts, vectors, kappa: int, kappa_nodes=None) -> list[str]:
    """Lemma-style requirements for every lift; returns a list of failures.

    N(l + v_n, n) >= kappa is demanded at kappa_nodes (default: all nodes)
    and N(l + v_n, n) >= 0 elsewhere."""
    strict = set(_knodes(P, kappa_nodes))
    errors = []
    zero = ReducedLift.build({}, {}, {})
    Q0 = quasilinear_system(P, zero)
    for i, n in enumerate(P.nodes):
        v = vectors[i]
        base = P.node_duals[n]
        j = next(j for j, x in enumerate(base) if x)
        mu = Fraction(v[j]) / base[j]
        if mu <= 0 or any(Fraction(x) != mu * y for x, y in zip(v, base)):
            errors.append(f"v_{n} is not a positive multiple of pi(E*_{n})")
            continue
        if not affine_lattice_member(P, zero, v):
            errors.append(f"v_{n} is not in Z^N(0)")
        for m in P.nodes:
            if m == n:
                continue
            for leg in P.legs_at(m):
                if v[P.node_pos[m]] % leg.alpha:
                    errors.append(f"alpha_{leg.end} does not divide v_{n} at {m}")
        if Q0.value(v, i) < 0:
            errors.append(f"N_0(v_{n}, {n}) < 0")
    if errors:
        return errors
    gens = tuple(tuple(v) for v in vectors)
    for b in lifts:
        Q = quasilinear_system(P, b)
        box = enumerate_box(P, b, gens)
        for i, n in enumerate(P.nodes):
            level = kappa if n in strict else 0
            if not _period_check(P, Q, box, gens, i, level):
                errors.append(f"N(l + v_{n}, {n}) < {level} for lift {b.to_json()}")
    return errors


def pinned_generators(P: Plumbed, lifts, vectors, kappa: int = 1, kappa_nodes=None) -> GeneratorSet:
    vectors = tuple(tuple(int(x) for x in v) for v in vectors)
    if len(vectors) != len(P.nodes):
        raise PinnedGeneratorsInvalid("need one vector per node")
    errs = check_generators(P, lifts, vectors, kappa, kappa_nodes)
    if errs:
        raise PinnedGeneratorsInvalid('; '.join(errs))
    mults = []
    for n, v in zip(P.nodes, vectors):
        base = P.node_duals[n]
        j = next(j for j, x in enumerate(base) if x)
        mults.append(Fraction(v[j]) / base[j])
    return GeneratorSet(vectors, tuple(mults), kappa, 'pinned', _knodes(P, kappa_nodes))


def small_generators(P: Plumbed, lifts, kappa: int = 1, kappa_nodes=None) -> GeneratorSet:
    """Best-effort search: grow each multiplier in steps until every lift
    passes the box test."""
    steps = [_multiplier_step(P, n, strict=False) for n in P.nodes]
    mults = list(steps)
    zero = ReducedLift.build({}, {}, {})
    Q0 = quasilinear_system(P, zero)
    for i, n in enumerate(P.nodes):
        while Q0.value(_scaled(P, n, mults[i]), i) < 0:
            mults[i] += steps[i]
    strict = set(_knodes(P, kappa_nodes))
    levels = [kappa if n in strict else 0 for n in P.nodes]
    systems = [quasilinear_system(P, b) for b in lifts]
    while True:
        gens = tuple(_scaled(P, n, mu) for n, mu in zip(P.nodes, mults))
        bad = set()
        for b, Q in zip(lifts, systems):
            box = enumerate_box(P, b, gens)
            for i in range(len(P.nodes)):
                if i not in bad and not _period_check(P, Q, box, gens, i, levels[i]):
                    bad.add(i)
        if not bad:
            return GeneratorSet(gens, tuple(mults), kappa, 'small', tuple(sorted(strict)))
        for i in bad:
            mults[i] += steps[i]


def choose_generators(P: Plumbed, lifts, kappa: int = 1, strategy: str = 'small',
                      pinned=None, kappa_nodes=None) -> GeneratorSet:
    if strategy == 'proof':
        return proof_generators(P, kappa, kappa_nodes)
    if strategy == 'small':
        return small_generators(P, lifts, kappa, kappa_nodes)
    if strategy == 'pinned':
        return pinned_generators(P, lifts, pinned, kappa, kappa_nodes)
    raise ValueError(f"unknown generator strategy {strategy!r}")


# ----------------------------------------------------------------- boxes


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


def enumerate_box(P: Plumbed, a: ReducedLift, gens) -> list[tuple[int, ...]]:
    """(Box - c_a) cap Z^N(a), sorted.

    The box points are in bijection with Z^N(a) modulo the lattice spanned by
    the generators, so we walk that finite group instead of scanning."""
    vecs = gens.vectors if isinstance(gens, GeneratorSet) else gens
    N = len(P.nodes)
    V = [[Fraction(vecs[j][i]) for j in range(N)] for i in range(N)]
    Vinv = exact_inverse(V)
    c = c_vector(P, a)
    start = tuple(_frac(x) for x in mat_vec(Vinv, [ci + pi for ci, pi in zip(c, base_point(P, a))]))
    steps = [tuple(_frac(x) for x in mat_vec(Vinv, b)) for b in lattice_generators(P)]
    seen = {start}
    todo = [start]
    while todo:
        mu = todo.pop()
        for s in steps:
            nxt = tuple(_frac(x + y) for x, y in zip(mu, s))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    out = []
    for mu in seen:
        pt = mat_vec(V, mu)
        ell = tuple(p - ci for p, ci in zip(pt, c))
        assert all(x.denominator == 1 for x in ell)
        out.append(tuple(int(x) for x in ell))
    return sorted(out)


def box_coordinates(gens, c, ell) -> tuple[Fraction, ...]:
    """lambda with c + ell = sum lambda_n v_n."""
    vecs = gens.vectors if isinstance(gens, GeneratorSet) else gens
    N = len(vecs)
    V = [[Fraction(vecs[j][i]) for j in range(N)] for i in range(N)]
    return mat_vec(exact_inverse(V), [x + y for x, y in zip(c, ell)])


def nonnegative_points(P: Plumbed, a: ReducedLift, lo, hi):
    """Yield (ell, N_a(ell)) for ell in Z^N(a), lo <= ell <= hi, with N_a >= 0
    at every node.

    The last node in tree order is solved for: every other N is affine in its
    coordinate, which cuts the innermost range down to an interval."""
    Q = quasilinear_system(P, a)
    order = _tree_order(P)
    pos = P.node_pos
    rules = {m: _child_rule(P, a, m) for m in order[1:]}
    N = len(order)
    jl = pos[order[-1]]
    others = [i for i in range(N) if i != jl]
    cur = [0] * N

    def partial(i):
        d = Q.den[i]
        s = Q.const[i] + sum(Q.coef[i][j] * cur[j] for j in range(N) if j != jl)
        x = cur[i]
        for au, w, al in Q.ends[i]:
            s -= ((au - w * x) % al) * (d // al)
        return s

    def leaf():
        top, bot = hi[jl], lo[jl]
        for i in others:
            s, k = partial(i), Q.coef[i][jl]
            if k == 0:
                if s < 0:
                    return
            elif k < 0:
                top = min(top, s // -k)
            else:
                bot = max(bot, -(s // k))
        if N == 1:
            start = bot
            step = 1
        else:
            p, alpha, r = rules[order[-1]]
            res = r(cur[pos[p]])
            start = bot + (res - bot) % alpha
            step = alpha
        for x in range(start, top + 1, step):
            cur[jl] = x
            vals = Q.values(cur)
            if min(vals) >= 0:
                yield tuple(cur), vals

    def rec(i):
        if i == N - 1:
            yield from leaf()
            return
        m = order[i]
        j = pos[m]
        if i == 0:
            rng = range(lo[j], hi[j] + 1)
        else:
            p, alpha, r = rules[m]
            res = r(cur[pos[p]])
            rng = range(lo[j] + (res - lo[j]) % alpha, hi[j] + 1, alpha)
        for v in rng:
            cur[j] = v
            yield from rec(i + 1)

    yield from rec(0)


# ----------------------------------------------------------------- holes


def hole_sets(P: Plumbed, a: ReducedLift, gens, I) -> list[tuple[int, ...]]:
    """M^-_{a,I}."""
    Q = quasilinear_system(P, a)
    idx = [P.node_pos[n] for n in I]
    return [l for l in enumerate_box(P, a, gens) if all(Q.value(l, i) < 0 for i in idx)]


def graded_holes(P: Plumbed, a: ReducedLift, gens, k: dict, I, J=None) -> list[tuple[int, ...]]:
    """gr_k M^-_{a,I} for the filtration indexed by J (default: high nodes)."""
    J = set(P.cl.high_nodes if J is None else J)
    I = set(I)
    if not J <= I:
        raise ValueError("I must contain the filtration index set")
    Q = quasilinear_system(P, a)
    shifted = a.minus(k)
    out = []
    for l in enumerate_box(P, shifted, gens):
        ok = True
        for n in I:
            v = Q.value(l, P.node_pos[n])
            if (n in J and v != k.get(n, 0)) or (n not in J and v >= 0):
                ok = False
                break
        if ok:
            out.append(l)
    return out


@dataclass
class HoleDecomposition:
    box: list
    holes: dict = field(default_factory=dict)  # frozenset(I) -> list
    graded: dict = field(default_factory=dict)  # (k tuple, frozenset(I)) -> list


def hole_decomposition(P: Plumbed, a: ReducedLift, gens) -> HoleDecomposition:
    Q = quasilinear_system(P, a)
    box = enumerate_box(P, a, gens)
    vals = {l: Q.values(l) for l in box}
    out = HoleDecomposition(box)
    nodes = P.nodes
    for r in range(len(nodes) + 1):
        for I in itertools.combinations(range(len(nodes)), r):
            out.holes[frozenset(nodes[i] for i in I)] = [
                l for l in box if all(vals[l][i] < 0 for i in I)]
    high = set(P.cl.high_nodes)
    rest = [n for n in nodes if n not in high]
    for k in theorem_lifts(P, a):
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                I = high | set(extra)
                out.graded[(tuple(sorted(k.items())), frozenset(I))] = graded_holes(P, a, gens, k, I)
    return out


def hilbert_form(P: Plumbed, a: ReducedLift, gens, mode: str = 'module', k: dict | None = None) -> RationalSeriesForm:
    """Fine Hilbert series of M_a(k) ('module') or gr_k M_a ('graded')."""
    k = k or {}
    vecs = gens.vectors if isinstance(gens, GeneratorSet) else gens
    nodes = P.nodes
    N = len(nodes)
    form = RationalSeriesForm(N)
    if mode == 'module':
        b = a.minus(k)
        for r in range(N + 1):
            for I in itertools.combinations(nodes, r):
                num = Laurent({l: (-1) ** r for l in hole_sets(P, b, vecs, I)}, N)
                form.add(frozenset(I), num, [vecs[i] for i, n in enumerate(nodes) if n not in I])
    elif mode == 'graded':
        high = set(P.cl.high_nodes)
        rest = [n for n in nodes if n not in high]
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                I = high | set(extra)
                num = Laurent({l: (-1) ** r for l in graded_holes(P, a, vecs, k, I)}, N)
                form.add(frozenset(I), num, [vecs[i] for i, n in enumerate(nodes) if n not in I])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return form
