from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbsw import polyparts
from plumbsw.laurent import Laurent
from plumbsw.lifts import canonical_lift, zero_lift
from plumbsw.manifold import Plumbed
from plumbsw.polyparts import (DivisionError, OracleError, compute_sw,
                               decompose_one_var, divide, fundamental_cycle,
                               normalization_shift, oracle_sw_counting, oracle_x)
from plumbsw.samples import star_graph

from support import h9_end_lift

E8 = [[-2], [-2, -2], [-2, -2, -2, -2]]


def _prod(vs, n):
    F = Laurent.one(n)
    for v in vs:
        F = F * Laurent({(0,) * n: 1, tuple(Fraction(x) for x in v): -1}, n)
    return F


terms = st.dictionaries(st.tuples(st.integers(-8, 12), st.integers(-8, 12)),
                        st.integers(-3, 3).filter(bool), max_size=6)


@given(terms)
@settings(max_examples=60, deadline=None)
def test_division_resubstitutes(t):
    W = Laurent({tuple(Fraction(x) for x in e): c for e, c in t.items()}, 2)
    vs = [(2, 1), (1, 3)]
    phi = (1, 1)
    Q, R = divide(W, vs, phi)
    assert Q * _prod(vs, 2) + R == W
    assert all(0 <= e[0] + e[1] < 7 for e in R.terms)


def test_one_variable_example():
    Q, R = decompose_one_var((Fraction(5),), [(2,)], 0)
    assert Q == Laurent({(Fraction(1),): -1, (Fraction(3),): -1}, 1)
    assert R == Laurent({(Fraction(1),): 1}, 1)
    # negative exponents are pushed up into [0, 2)
    Q, R = decompose_one_var((Fraction(-3),), [(2,)], 0)
    assert Q == Laurent({(Fraction(-3),): 1, (Fraction(-1),): 1}, 1)
    assert R == Laurent({(Fraction(1),): 1}, 1)


def test_division_needs_positive_functional():
    with pytest.raises(DivisionError):
        divide(Laurent.one(2), [(1, -2)], (1, 1))


def test_gamma_ex_numbers(gamma_ex):
    res = compute_sw(gamma_ex, zero_lift(gamma_ex))
    assert res.sw_norm == 13 and len(res.P_h) == 13
    assert res.sw_raw == -7
    assert res.sw_raw == -res.sw_norm - normalization_shift(gamma_ex, ())


def test_h9_all_classes(gamma_h9):
    P = gamma_h9
    got = [compute_sw(P, canonical_lift(P, h)).sw_norm for h in P.dg.elements()]
    assert got == [5, 2, 3, 2, 2, 2, 3, 4, 3]
    assert compute_sw(P, h9_end_lift(P)).sw_norm == 4


def test_brieskorn_spheres():
    e8 = Plumbed.from_graph(star_graph(-2, E8))
    res = compute_sw(e8, zero_lift(e8))
    assert res.sw_norm == 0 and res.P_h == 0
    s237 = Plumbed.from_graph(star_graph(-1, [[-2], [-3], [-7]]))
    res = compute_sw(s237, zero_lift(s237))
    assert res.P_h == Laurent({(Fraction(1),): 1}, 1)
    assert oracle_sw_counting(s237, ()) == 1


def test_fundamental_cycle():
    e8 = Plumbed.from_graph(star_graph(-2, E8))
    Z = fundamental_cycle(e8)
    assert dict(zip(e8.graph.ids, Z))['n'] == 6
    assert sum(Z) == 29  # highest root
    I = e8.idata.I
    for v in range(len(Z)):
        assert sum(I[v][w] * Z[w] for w in range(len(Z))) <= 0


def test_fundamental_cycle_anti_nef(gamma_h9):
    Z = fundamental_cycle(gamma_h9)
    I = gamma_h9.idata.I
    assert all(z >= 1 for z in Z)
    assert all(sum(r[w] * Z[w] for w in range(len(Z))) <= 0 for r in I)


def test_oracle_rejects_bad_points(gamma_h9):
    P = gamma_h9
    h = P.dg.elements()[1]
    with pytest.raises(OracleError, match="int"):
        oracle_sw_counting(P, h, (0,) * len(P.graph.ids))
    x = oracle_x(P, P.dg.zero())
    with pytest.raises(OracleError, match="class"):
        oracle_sw_counting(P, h, x)


def test_small_failure_falls_back_to_proof(gamma_ex, monkeypatch):
    real = polyparts.assemble_P_h
    seen = []

    def flaky(P, a, gens):
        seen.append(gens.strategy)
        if gens.strategy == 'small':
            raise polyparts.SupportViolation("forced")
        return real(P, a, gens)

    monkeypatch.setattr(polyparts, 'assemble_P_h', flaky)
    res = compute_sw(gamma_ex, zero_lift(gamma_ex))
    assert seen == ['small', 'proof'] and res.sw_norm == 13


def test_proof_failure_propagates(gamma_ex, monkeypatch):
    def broken(P, a, gens):
        raise polyparts.DivisionError("forced")

    monkeypatch.setattr(polyparts, 'assemble_P_h', broken)
    with pytest.raises(DivisionError):
        compute_sw(gamma_ex, zero_lift(gamma_ex), 'proof')
