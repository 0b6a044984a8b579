import io
import json
from importlib.resources import files

import pytest

from plumbsw.cli import run

EX = str(files('plumbsw').joinpath('data', 'gamma_ex.txt'))
H9 = str(files('plumbsw').joinpath('data', 'gamma_h9.txt'))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_validate_and_info():
    doc = call_json('validate', EX)
    assert doc['valid'] and doc['det'] == 1 and doc['nodes'] == ['n1', 'n2', 'n3']
    assert len(doc['manifest']['input_sha256']) == 64
    doc = call_json('info', H9)
    assert doc['H_order'] == 9 and doc['invariant_factors'] == [3, 3]


def test_polypart_gamma_ex():
    doc = call_json('polypart', EX)
    assert doc['sw_norm'] == '13/1' and doc['sw'] == '-7/1'
    assert len(doc['P_h']) == 13
    assert doc['manifest']['generators'] == [[62, 28, 24], [84, 42, 36], [24, 12, 14]]


def test_polypart_oracle_and_pinned(tmp_path):
    pinned = tmp_path / 'gens.json'
    pinned.write_text(json.dumps({'vectors': [[21, 6, 6], [12, 6, 6], [6, 3, 9]]}))
    ids = call_json('info', H9)['vertices']
    y = ['1' if v in ('v12', 'v32') else '0' for v in ids]
    doc = call_json('polypart', H9, '--lift', 'pinned:' + ','.join(y),
                    '--generators', f'pinned:{pinned}', '--oracle')
    assert doc['sw_norm'] == '4/1' and doc['difference'] == '0/1'
    assert len(doc['P_h']) == 4
    assert doc['manifest']['generator_strategy'] == 'pinned'


def test_bad_pinned_generators_exit_1(tmp_path):
    pinned = tmp_path / 'bad.json'
    pinned.write_text(json.dumps([[62, 28, 24], [42, 21, 18], [24, 12, 14]]))
    code, out, err = call('polypart', EX, '--generators', f'pinned:{pinned}')
    assert code == 1 and out == '' and 'error' in err


@pytest.mark.parametrize('argv', [
    ('polypart', EX, '--generators', 'fancy'),
    ('polypart', EX, '--lift', 'sideways'),
    ('polypart', EX, '--class', '1,2'),
    ('series', '/nonexistent/graph.txt'),
    ('semigroup', '--seifert', '2,3,5', '--pair', '2,3'),
    ('semigroup', '--pair', '2,3,4'),
    ('nosuchcommand',),
])
def test_usage_errors_exit_2(argv):
    code, out, _ = call(*argv)
    assert code == 2 and out == ''


def test_domain_error_exit_1(tmp_path):
    g = tmp_path / 'cycle.txt'
    g.write_text("vertex a -2\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a\n")
    assert call('info', str(g))[0] == 1
    assert call('semigroup', '--seifert', '2,4,5')[0] == 1


def test_series_methods_agree():
    docs = [call_json('series', EX, '--degree', '40', '--method', m)
            for m in ('direct', 'alternative', 'rational')]
    assert docs[0]['terms'] == docs[1]['terms'] == docs[2]['terms']
    assert docs[0]['terms'][0] == [['0/1', '0/1', '0/1'], 1]


def test_sw_all_classes_with_oracle():
    doc = call_json('sw', H9, '--oracle')
    assert [e['sw_norm'] for e in doc['classes']] == [f'{v}/1' for v in (5, 2, 3, 2, 2, 2, 3, 4, 3)]
    assert all(e['difference'] == '0/1' for e in doc['classes'])


def test_holes_and_rational():
    doc = call_json('holes', EX)
    assert [0, 0, 0] in doc['box']
    assert doc['graded']['k=n2:0;I=n1,n2,n3'] == [[43, 20, 19], [85, 41, 37]]
    doc = call_json('rational', EX)
    assert doc['entries']


def test_semigroup_subcommand(tmp_path):
    doc = call_json('semigroup', '--seifert', '2,3,5')
    assert doc['generators'] == [6, 10, 15] and doc['b0'] == -2 and doc['omegas'] == [1, 2, 4]
    doc = call_json('semigroup', '--pair', '3,4')
    assert doc['alexander'] == [1, -1, 0, 1, 0, -1, 1] and doc['delta'] == 3
    g = tmp_path / 'curve.txt'
    g.write_text("vertex v1 -3\nvertex x1 -2\nvertex x2 -3\nvertex v2 -1\nvertex y -2\n"
                 "edge v1 x1\nedge v1 x2\nedge v1 v2\nedge v2 y\narrow v2\n")
    assert call_json('semigroup', '--curve', str(g))['generators'] == [4, 6, 13]


def test_text_format():
    code, out, err = call('info', EX, '--format', 'text')
    assert code == 0 and 'H_order: 1' in out
    assert '|H| = 1' in err
