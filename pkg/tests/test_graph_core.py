import itertools
import json
import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from plumbsw.graph_core import (GraphError, bareiss_det, classify, graph_det,
                                graph_to_json, half_open_left, half_open_right,
                                make_graph, neg_intersection_block, open_path,
                                parse_plumbing, path, subgraph_det)

from support import GRAPH_NAMES, graph


def cofactor_det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def test_text_and_json_agree(gamma_ex_graph):
    g = gamma_ex_graph
    again = parse_plumbing(json.dumps(graph_to_json(g)))
    assert again == g
    assert len(g) == 10 and graph_det(g) == 1


def test_text_format_comments_and_arrows():
    g = parse_plumbing("""
        # cusp
        vertex a -1   # node
        vertex b -2
        vertex c -3
        edge a b
        edge a c
        arrow a
    """)
    assert g.arrows == ('a',)
    assert g.valency('a') == 3


@pytest.mark.parametrize('text, msg', [
    ("vertex a -2\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a", "not a tree"),
    ("vertex a -2\nvertex b -2", "not a tree"),
    ("vertex a -2\nvertex a -3", "duplicate"),
    ("vertex a -2\nedge a z", "unknown vertex"),
    ("vertex a x", "bad integer"),
    ("node a -2", "cannot parse"),
    ("", "no vertices"),
    ('{"vertices": [{"id": "a"}]}', "malformed"),
    ('{"vertices": [{"id": "a", "b": 1.5}]}', "must be an integer"),
    ('{"vertices": [', "invalid JSON"),
])
def test_parse_errors(text, msg):
    with pytest.raises(GraphError, match=msg):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            parse_plumbing(text)


def test_non_minimal_vertex_warns():
    with pytest.warns(UserWarning, match="not minimal"):
        make_graph([('a', -1), ('b', -2)], [('a', 'b')])


def test_paths(gamma_ex_graph):
    g = gamma_ex_graph
    assert path(g, 'n1', 'n2') == ('n1', 'u1', 'n2')
    assert open_path(g, 'n1', 'n3') == ('u1', 'n2', 'u2')
    assert path(g, 'v11', 'v11') == ('v11',)
    assert open_path(g, 'v11', 'v11') == ()
    assert half_open_left(g, 'n1', 'n1') == ()
    assert half_open_right(g, 'n1', 'n2') == ('u1', 'n2')


@pytest.mark.parametrize('name', GRAPH_NAMES[:4])
def test_subgraph_det_matches_cofactor(name):
    g = graph(name)
    rng = random.Random(name)
    subsets = [()] + [tuple(rng.sample(g.ids, k)) for k in range(1, min(8, len(g)) + 1) for _ in range(4)]
    for s in subsets:
        assert subgraph_det(g, s) == cofactor_det(neg_intersection_block(g, s))


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_bareiss_matches_cofactor(m):
    assert bareiss_det(m) == cofactor_det(m)


def test_classification(gamma_ex_graph):
    cl = classify(gamma_ex_graph)
    assert cl.nodes == ('n1', 'n2', 'n3')
    assert cl.root == 'n1'
    assert [(c.head, c.tail, c.interior) for c in cl.chains] == [
        ('n1', 'n2', ('u1',)), ('n2', 'n3', ('u2',))]
    assert cl.high_nodes == ('n2',)
    assert cl.delta_N == {'n1': 1, 'n2': 2, 'n3': 1}
    assert cl.delta_E == {'n1': 2, 'n2': 1, 'n3': 2}
    assert cl.less('n1', 'n3') and not cl.less('n3', 'n1')


@pytest.mark.parametrize('name', GRAPH_NAMES)
def test_classify_ignores_input_order(name):
    g = graph(name)
    rng = random.Random(7)
    verts = list(g.vertices)
    edges = [e[::-1] if rng.random() < 0.5 else e for e in g.edges]
    rng.shuffle(verts)
    rng.shuffle(edges)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        h = make_graph(verts, edges, g.arrows)
    a, b = classify(g), classify(h)
    assert (a.nodes, a.ends, a.chains, a.legs, a.root) == (b.nodes, b.ends, b.chains, b.legs, b.root)
    assert classify(g) == a


def test_adjacent_nodes_give_empty_chain():
    g = make_graph([('a', -2), ('b', -2), ('x', -2), ('y', -2), ('z', -2), ('w', -2)],
                   [('a', 'b'), ('a', 'x'), ('a', 'y'), ('b', 'z'), ('b', 'w')])
    (c,) = classify(g).chains
    assert c.interior == () and c.connector == 'b'


def test_every_vertex_is_node_chain_or_leg(gamma_ex_graph):
    g = gamma_ex_graph
    cl = classify(g)
    covered = set(cl.nodes)
    for c in cl.chains:
        covered |= set(c.interior)
    for leg in cl.legs:
        covered |= set(leg.vertices)
    assert covered == set(g.ids)
    for a, b in itertools.combinations(cl.legs, 2):
        assert not set(a.vertices) & set(b.vertices)
