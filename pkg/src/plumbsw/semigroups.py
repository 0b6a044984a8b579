"""Numerical semigroups: Seifert homology spheres and irreducible plane curves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd, prod
from typing import Callable

from .graph_core import GraphError, PlumbingGraph
from .laurent import Laurent
from .lifts import lattice_points_in_box, zero_lift
from .manifold import Plumbed
from .monoid import quasilinear_system


class SemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class NumericalSemigroup:
    """A cofinite submonoid of Z_{>=0}, stored through its gap set."""
    gaps: tuple[int, ...]
    multiplicity: int

    @classmethod
    def from_predicate(cls, member: Callable[[int], bool], bound: int,
                       grow: bool = True) -> 'NumericalSemigroup':
        """Scan 0..bound, growing the bound until a run of `multiplicity`
        consecutive members closes the complement."""
        if not member(0):
            raise SemigroupError("0 must be a member")
        while True:
            flags = [member(s) for s in range(bound + 1)]
            m = next((s for s in range(1, bound + 1) if flags[s]), None)
            if m is not None:
                last_gap = max((s for s in range(bound + 1) if not flags[s]), default=-1)
                if bound - last_gap >= m:
                    gaps = tuple(s for s in range(bound + 1) if not flags[s])
                    return cls(gaps, m)
            if not grow or bound > 10 ** 6:
                raise SemigroupError("complement does not look finite")
            bound *= 2

    @classmethod
    def from_generators(cls, gens) -> 'NumericalSemigroup':
        gens = sorted({int(x) for x in gens if x})
        if not gens or min(gens) < 0:
            raise SemigroupError("generators must be positive integers")
        g = 0
        for x in gens:
            g = gcd(g, x)
        if g != 1:
            raise SemigroupError(f"generators {gens} have common factor {g}")
        # Frobenius number is below (g1 - 1)(g_max - 1) for any generating set
        bound = (gens[0] - 1) * (gens[-1] - 1) + gens[0] + 1
        reach = [False] * (bound + 1)
        reach[0] = True
        for s in range(1, bound + 1):
            reach[s] = any(s >= x and reach[s - x] for x in gens)
        return cls.from_predicate(lambda s: s > bound or reach[s], bound)

    def __contains__(self, s: int) -> bool:
        return s >= 0 and s not in self._gap_set

    @property
    def _gap_set(self) -> frozenset[int]:
        return frozenset(self.gaps)

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def frobenius(self) -> int:
        return self.gaps[-1] if self.gaps else -1

    @property
    def conductor(self) -> int:
        return self.frobenius + 1

    def members_upto(self, bound: int) -> list[int]:
        gs = self._gap_set
        return [s for s in range(bound + 1) if s not in gs]

    def minimal_generators(self) -> tuple[int, ...]:
        """Members that are not sums of two positive members (Hilbert basis)."""
        top = self.conductor + self.multiplicity
        mem = self.members_upto(top)
        ms = set(mem)
        out = []
        for s in mem[1:]:
            if not any(x in ms and s - x in ms for x in mem[1:] if x <= s - x):
                out.append(s)
        return tuple(out)

    def hilbert_series(self, bound: int) -> Laurent:
        out = Laurent(None, 1)
        for s in self.members_upto(bound):
            out.add_term((Fraction(s),), 1)
        return out

    def alexander(self) -> list[int]:
        """Coefficients of (1 - t) H(t) = 1 - (1 - t) sum_gaps t^s."""
        top = self.conductor
        coef = [0] * (top + 1)
        coef[0] = 1
        for s in self.gaps:
            coef[s] -= 1
            coef[s + 1] += 1
        return coef

    def polynomial_part(self) -> Laurent:
        out = Laurent(None, 1)
        for s in self.gaps:
            out.add_term((Fraction(s),), -1)
        return out

    def to_json(self) -> dict:
        return {
            'generators': list(self.minimal_generators()),
            'gaps': list(self.gaps),
            'genus': self.genus,
            'frobenius': self.frobenius,
            'multiplicity': self.multiplicity,
        }


@dataclass(frozen=True)
class CurveInvariants:
    semigroup: NumericalSemigroup

    @property
    def delta(self) -> int:
        return self.semigroup.genus

    @property
    def alexander(self) -> list[int]:
        return self.semigroup.alexander()

    @property
    def P_g(self) -> Laurent:
        return self.semigroup.polynomial_part()

    def to_json(self) -> dict:
        out = self.semigroup.to_json()
        out['delta'] = self.delta
        out['alexander'] = self.alexander
        out['P_g'] = {str(int(e[0])): c for e, c in self.P_g.sorted_terms()}
        return out


def _check_coprime(alphas) -> None:
    for i, x in enumerate(alphas):
        if x < 2:
            raise SemigroupError(f"Seifert weights must exceed 1, got {x}")
        for y in alphas[i + 1:]:
            if gcd(x, y) != 1:
                raise SemigroupError(f"{x} and {y} are not coprime")


def seifert_invariants(alphas) -> tuple[int, tuple[int, ...]]:
    """(b0, omegas) with b0 prod(alpha) + sum omega_i prod_{j != i} alpha_j = -1."""
    alphas = [int(a) for a in alphas]
    _check_coprime(alphas)
    total = prod(alphas)
    omegas = []
    for a in alphas:
        rest = total // a
        omegas.append((-pow(rest, -1, a)) % a)
    num = -1 - sum(w * (total // a) for a, w in zip(alphas, omegas))
    assert num % total == 0
    return num // total, tuple(omegas)


def seifert_semigroup(alphas) -> NumericalSemigroup:
    alphas = sorted(int(a) for a in alphas)
    b0, omegas = seifert_invariants(alphas)

    def member(s: int) -> bool:
        return -b0 * s - sum(ceil(Fraction(w * s, a)) for a, w in zip(alphas, omegas)) >= 0

    return NumericalSemigroup.from_predicate(member, prod(alphas))


def pair_invariants(p: int, a: int) -> tuple[int, int]:
    """(omega_p, omega_a) with p a - omega_p a - omega_a p = 1."""
    if p < 2 or a < 2 or gcd(p, a) != 1:
        raise SemigroupError(f"({p}, {a}) is not a coprime pair of integers >= 2")
    wp = (-pow(a, -1, p)) % p
    wa = (-pow(p, -1, a)) % a
    assert p * a - wp * a - wa * p == 1
    return wp, wa


def curve_semigroup_pair(p: int, a: int) -> CurveInvariants:
    wp, wa = pair_invariants(p, a)

    def member(s: int) -> bool:
        return s - ceil(Fraction(wp * s, p)) - ceil(Fraction(wa * s, a)) >= 0

    return CurveInvariants(NumericalSemigroup.from_predicate(member, p * a))


def linking_pair_generators(pairs) -> tuple[int, ...]:
    """{p_1...p_r, a_i p_{i+1}...p_r, a_r} from linking pairs (p_i, a_i)."""
    ps = [p for p, _ in pairs]
    out = [prod(ps)]
    for i, (_, a) in enumerate(pairs):
        out.append(a * prod(ps[i + 1:]))
    return tuple(out)


# ------------------------------------------------- arrowed resolution graphs


@dataclass(frozen=True)
class CurveGraphData:
    P: Plumbed
    knot_node: str
    filtered: tuple[str, ...]


def curve_graph_data(g: PlumbingGraph) -> CurveGraphData:
    if len(g.arrows) != 1:
        raise GraphError(f"expected exactly one arrow, found {len(g.arrows)}")
    (vr,) = g.arrows
    minus_one = [v for v in g.ids if g.euler[v] == -1]
    if minus_one != [vr]:
        raise GraphError("the arrow must sit on the unique (-1)-vertex")
    P = Plumbed.from_graph(g, allow_arrows=True)
    if vr not in P.nodes:
        raise GraphError(f"arrow vertex {vr!r} is not a node")
    if P.dg.order != 1:
        raise GraphError("an arrowed curve graph must describe S^3 (det 1)")
    # the arrow acts as one more node neighbour of v_r
    dN = P.cl.delta_N
    filtered = tuple(n for n in P.nodes if dN[n] + (n == vr) >= 2)
    return CurveGraphData(P, vr, filtered)


def graded_zero_projection(data: CurveGraphData, bound: int) -> list[int]:
    """v_r coordinates of gr_0 M (filtered nodes at level exactly 0), up to bound.

    Returned with multiplicity so that injectivity can be checked."""
    P = data.P
    a = zero_lift(P)
    Q = quasilinear_system(P, a)
    r = P.node_pos[data.knot_node]
    duals = [P.node_duals[n] for n in P.nodes]
    # members are nonnegative combinations of the node duals
    hi = [int(ceil(bound * max(d[j] / d[r] for d in duals))) for j in range(len(P.nodes))]
    hi[r] = bound
    filt = [P.node_pos[n] for n in data.filtered]
    out = []
    for ell in lattice_points_in_box(P, a, [0] * len(P.nodes), hi):
        vals = Q.values(ell)
        if min(vals) >= 0 and all(vals[i] == 0 for i in filt):
            out.append(ell[r])
    return sorted(out)


def curve_semigroup_graph(g: PlumbingGraph) -> CurveInvariants:
    data = curve_graph_data(g)
    P = data.P
    idx = P.idata.index
    r_col = P.idata.dual_E(data.knot_node)
    bound = 2 * max(int(r_col[idx[v]]) for v in P.graph.ids)
    while True:
        proj = graded_zero_projection(data, bound)
        if len(proj) != len(set(proj)):
            raise SemigroupError("gr_0 projection is not injective")
        members = set(proj)
        try:
            return CurveInvariants(
                NumericalSemigroup.from_predicate(members.__contains__, bound, grow=False))
        except SemigroupError:
            bound *= 2


def curve_semigroup(g=None, pair=None) -> CurveInvariants:
    if (g is None) == (pair is None):
        raise SemigroupError("give exactly one of a graph or a linking pair")
    if pair is not None:
        return curve_semigroup_pair(*pair)
    return curve_semigroup_graph(g)
