import itertools
from fractions import Fraction
from math import floor

import pytest

from plumbsw.laurent import Laurent
from plumbsw.lifts import (c_vector, canonical_lift, exponent_box,
                           lattice_points_in_box, zero_lift)
from plumbsw.monoid import (NotInAffineLattice, N_eval, Nbar_eval,
                            PinnedGeneratorsInvalid, box_coordinates,
                            check_generators, choose_generators, enumerate_box,
                            graded_holes, hilbert_form, hole_decomposition,
                            membership, nonnegative_points, quasilinear_system,
                            theorem_lifts)
from plumbsw.polyparts import generators_for

from support import GRAPH_NAMES, PIN_EX, PIN_H9, h9_end_lift, plumbed


def test_gamma_ex_quasilinear(gamma_ex):
    P = gamma_ex
    a = zero_lift(P)
    for ell in [(0, 0, 0), (12, 6, 7), (31, 14, 12), (9, 0, 0), (-9, 9, 4), (5, 4, 9)]:
        l1, l2, _ = ell
        want = Fraction(8, 9) * l1 - Fraction(1, 9) * l2 + floor(Fraction(-l1, 2)) + floor(Fraction(-l1, 3))
        if (l1 + l2) % 9 == 0 and (ell[1] + ell[2]) % 13 == 0:
            assert N_eval(P, a, ell, 'n1') == want
        assert Nbar_eval(P, a, ell, 'n1') == Fraction(8, 9) * l1 - Fraction(1, 9) * l2 - Fraction(5 * l1, 6)
    assert quasilinear_system(P, a).values((0, 0, 0)) == (0, 0, 0)


def test_h9_values(gamma_h9):
    P = gamma_h9
    a = h9_end_lift(P)
    Q = quasilinear_system(P, a)
    assert Q.values((-1, 1, -1)) == (-1, 0, -1)
    assert Q.values((-14, -4, -8)) == (0, 0, 0)
    assert Q.values((0, 0, 0)) == (0, 0, 0)


@pytest.mark.parametrize('name', GRAPH_NAMES)
def test_floor_correction_range(name):
    P = plumbed(name)
    for h in P.dg.elements()[:3]:
        a = canonical_lift(P, h)
        Q = quasilinear_system(P, a)
        for ell in itertools.islice(lattice_points_in_box(P, a, [-6] * len(P.nodes), [30] * len(P.nodes)), 400):
            for i, n in enumerate(P.nodes):
                gap = Q.nbar(ell, i) - Q.value(ell, i)
                assert 0 <= gap < max(1, len(P.legs_at(n)))
                if not P.legs_at(n):
                    assert gap == 0


def test_pinned_generators(gamma_ex, gamma_h9):
    P = gamma_ex
    a = zero_lift(P)
    lifts = [a.minus(k) for k in theorem_lifts(P, a)]
    gs = choose_generators(P, lifts, 1, 'pinned', PIN_EX, P.cl.high_nodes)
    assert gs.vectors == PIN_EX
    assert gs.multipliers == (Fraction(1, 3), 1, Fraction(1, 3))
    bad = (PIN_EX[0], (42, 21, 18), PIN_EX[2])
    assert N_eval(P, a, (42, 21, 18), 'n2') == 0
    with pytest.raises(PinnedGeneratorsInvalid):
        choose_generators(P, lifts, 1, 'pinned', bad, P.cl.high_nodes)
    assert check_generators(P, lifts, bad, 0, P.cl.high_nodes) == []

    b = h9_end_lift(gamma_h9)
    assert generators_for(gamma_h9, b, 'pinned', PIN_H9).vectors == PIN_H9
    with pytest.raises(PinnedGeneratorsInvalid, match="not a positive multiple"):
        generators_for(gamma_h9, b, 'pinned', ((21, 6, 7), PIN_H9[1], PIN_H9[2]))


def test_small_strategy_finds_listed_vectors(gamma_ex):
    assert generators_for(gamma_ex, zero_lift(gamma_ex)).vectors == PIN_EX


def test_membership(gamma_ex):
    P = gamma_ex
    a = zero_lift(P)
    assert membership(P, a, (0, 0, 0)) == 'member'
    assert membership(P, a, (31, 14, 12)) == 'hole'
    assert membership(P, a, (31 + 84, 14 + 42, 12 + 36)) == 'hole'
    assert membership(P, a, (-9, 0, 0)) == 'outside'
    with pytest.raises(NotInAffineLattice):
        membership(P, a, (1, 0, 0))


def test_box_contains_origin_and_hole_inclusions(gamma_ex):
    P = gamma_ex
    a = zero_lift(P)
    dec = hole_decomposition(P, a, PIN_EX)
    assert (0, 0, 0) in dec.box
    for I, pts in dec.holes.items():
        assert set(pts) <= set(dec.box)
        if len(I) > 1:
            assert set(pts) == set.intersection(*(set(dec.holes[frozenset([n])]) for n in I))
    assert dec.graded[((('n2', 0),), frozenset(P.nodes))] == [(43, 20, 19), (85, 41, 37)]


def test_h9_graded(gamma_h9):
    P = gamma_h9
    a = h9_end_lift(P)
    k = {'n2': 0}
    for I in (('n1', 'n2'), ('n2', 'n3'), ('n1', 'n2', 'n3')):
        assert graded_holes(P, a, PIN_H9, k, I) == [(-1, 1, -1)]
    with pytest.raises(ValueError):
        graded_holes(P, a, PIN_H9, k, ('n1',))


def _region(P, a, B):
    c = c_vector(P, a)
    lo, hi = exponent_box(c, B)
    return c, list(lattice_points_in_box(P, a, lo, hi))


@pytest.mark.parametrize('name', GRAPH_NAMES)
@pytest.mark.parametrize('strategy', ['small', 'proof'])
def test_generator_lemma_properties(name, strategy):
    """N(l + v_n, n') = N(l, n') for n' != n and N(l + v_n, n) >= kappa at
    the high nodes, on every normalization point of a bounded region."""
    P = plumbed(name)
    for h in P.dg.elements()[:3]:
        a = canonical_lift(P, h)
        gens = generators_for(P, a, strategy)
        Q = quasilinear_system(P, a)
        high = set(P.cl.high_nodes)
        B = 2 * max(max(v) for v in gens.vectors) if strategy == 'small' else 60
        c, pts = _region(P, a, B)
        for ell in pts[:3000]:
            if any(Q.nbar(ell, i) < 0 for i in range(len(P.nodes))):
                continue
            base = Q.values(ell)
            for i, v in enumerate(gens.vectors):
                moved = Q.values(tuple(x + y for x, y in zip(ell, v)))
                for j in range(len(P.nodes)):
                    if j != i:
                        assert moved[j] == base[j]
                floor_level = 1 if P.nodes[i] in high else 0
                assert moved[i] >= floor_level


@pytest.mark.parametrize('name', ['gamma_ex', 'gamma_h9', 'random_0', 'random_5'])
def test_monoid_closed_under_addition(name):
    P = plumbed(name)
    a = zero_lift(P)
    gens = generators_for(P, a)
    B = max(max(v) for v in gens.vectors)
    c = c_vector(P, a)
    lo, hi = exponent_box(c, B)
    members = [ell for ell, _ in nonnegative_points(P, a, lo, hi)]
    Q = quasilinear_system(P, a)
    for x, y in itertools.combinations_with_replacement(members[:120], 2):
        s = tuple(p + q for p, q in zip(x, y))
        assert min(Q.values(s)) >= 0


@pytest.mark.parametrize('name', GRAPH_NAMES)
def test_nonnegative_points_match_scan(name):
    P = plumbed(name)
    for h in P.dg.elements()[:4]:
        a = canonical_lift(P, h)
        c = c_vector(P, a)
        lo, hi = exponent_box(c, 40)
        Q = quasilinear_system(P, a)
        brute = [(ell, Q.values(ell)) for ell in lattice_points_in_box(P, a, lo, hi)
                 if min(Q.values(ell)) >= 0]
        assert sorted(nonnegative_points(P, a, lo, hi)) == sorted(brute)


@pytest.mark.parametrize('name', GRAPH_NAMES)
def test_hilbert_forms_expand_to_scans(name):
    P = plumbed(name)
    bound = 60
    for h in P.dg.elements()[:3]:
        a = canonical_lift(P, h)
        gens = generators_for(P, a)
        N = len(P.nodes)
        Q = quasilinear_system(P, a)
        lo, hi = [-1] * N, [bound] * N
        vals = {ell: Q.values(ell) for ell in lattice_points_in_box(P, a, lo, hi)}
        for k in theorem_lifts(P, a):
            module = Laurent({ell: 1 for ell, v in vals.items()
                              if min(v) >= 0 and all(v[P.node_pos[n]] >= kn for n, kn in k.items())},
                             N)
            assert hilbert_form(P, a, gens, 'module', k).expand(bound) == module
            graded = Laurent({ell: 1 for ell, v in vals.items()
                              if min(v) >= 0 and all(v[P.node_pos[n]] == k.get(n, 0) for n in P.cl.high_nodes)},
                             N)
            assert hilbert_form(P, a, gens, 'graded', k).expand(bound) == graded


def test_box_coordinates(gamma_ex):
    half = Fraction(1, 2)
    assert box_coordinates(PIN_EX, (0, 0, 0), (85, 41, 37)) == (half, half, half)
    assert box_coordinates(PIN_EX, (0, 0, 0), (170, 82, 74)) == (1, 1, 1)
