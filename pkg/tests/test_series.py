import pytest
import sympy
from hypothesis import given, strategies as st

from plumbsw.graph_core import make_graph
from plumbsw.laurent import Laurent, one_minus_monomial
from plumbsw.lifts import c_vector, canonical_lift, zero_lift
from plumbsw.manifold import Plumbed
from plumbsw.samples import star_graph
from plumbsw.semigroups import NumericalSemigroup
from plumbsw.series import (UnsupportedGraph, expand_alternative, expand_direct,
                            expand_rational, gen_binom, rational_form,
                            reduced_series_from_product, single_node_generators)
from plumbsw.polyparts import generators_for

from support import plumbed

E8 = [[-2], [-2, -2], [-2, -2, -2, -2]]


@given(st.integers(-12, 12), st.integers(0, 12))
def test_gen_binom_matches_sympy(m, j):
    assert gen_binom(m, j) == sympy.binomial(m, j)


def test_gen_binom_edges():
    assert gen_binom(-2, 3) == -4
    assert gen_binom(1, 2) == 0
    assert gen_binom(3, -1) == 0


def test_e8_series_is_semigroup():
    P = Plumbed.from_graph(star_graph(-2, E8))
    a = zero_lift(P)
    S = NumericalSemigroup.from_generators((6, 10, 15))
    hilb = Laurent({(s,): 1 for s in S.members_upto(90)}, 1)
    # complete intersection with two relations in degree 30: Z = H / (1 - t^30)
    Z = expand_direct(P, a, 90)
    assert (Z * one_minus_monomial((30,))).truncate(90) == hilb
    assert expand_alternative(P, a, 90) == Z
    gens = single_node_generators(P)
    assert gens.vectors == ((30,),)
    assert expand_rational(rational_form(P, a, gens), 90) == Z
    assert reduced_series_from_product(P, 90)[P.dg.zero()] == Z


def test_single_node_pinned_multiple():
    P = Plumbed.from_graph(star_graph(-2, E8))
    a = zero_lift(P)
    gens = single_node_generators(P, (60,))
    assert expand_rational(rational_form(P, a, gens), 130) == expand_direct(P, a, 130)
    with pytest.raises(ValueError):
        single_node_generators(P, (45,))


def test_single_node_with_torsion():
    P = Plumbed.from_graph(star_graph(-1, [[-3], [-3], [-4]]))
    assert P.dg.order == 3
    full = reduced_series_from_product(P, 80)
    for h in P.dg.elements():
        a = canonical_lift(P, h)
        Z = expand_direct(P, a, 80)
        assert Z == full.get(h, Laurent(None, 1))
        gens = generators_for(P, a)
        assert expand_rational(rational_form(P, a, gens), 80) == Z


def test_no_nodes_unsupported():
    g = make_graph([('a', -2), ('b', -3)], [('a', 'b')])
    P = Plumbed.from_graph(g)
    with pytest.raises(UnsupportedGraph):
        expand_direct(P, zero_lift(P), 10)
    with pytest.raises(UnsupportedGraph):
        reduced_series_from_product(P, 10)


@pytest.mark.parametrize('name', ['gamma_ex', 'gamma_h9', 'random_2'])
def test_three_methods_agree(name):
    P = plumbed(name)
    full = reduced_series_from_product(P, 40)
    for h in P.dg.elements():
        a = canonical_lift(P, h)
        Z = expand_direct(P, a, 40)
        assert Z == expand_alternative(P, a, 40)
        assert Z == full.get(h, Laurent(None, len(P.nodes)))
        c = c_vector(P, a)
        assert all(x - y == int(x - y) for e in Z.terms for x, y in zip(e, c))


def test_gamma_ex_leading_terms(gamma_ex):
    Z = expand_direct(gamma_ex, zero_lift(gamma_ex), 40)
    assert Z.terms[(0, 0, 0)] == 1
    assert min(Z.terms) == (0, 0, 0)
