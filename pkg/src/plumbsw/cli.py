"""Command-line front end: plumbsw <subcommand> ..."""

from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import sympy

from . import __version__
from .graph_core import GraphError, graph_det, parse_plumbing
from .laurent import Laurent
from .lattice import NotInDualLattice, NotNegativeDefinite
from .lifts import ReducedLift, c_vector, canonical_lift, class_of_lift, lift_from_dual
from .manifold import Plumbed
from .monoid import NotInAffineLattice, PinnedGeneratorsInvalid, hole_decomposition
from .polyparts import (DivisionError, OracleError, SupportViolation, compute_sw,
                        generators_for, oracle_sw_counting)
from .seifert_data import OrbifoldIdentityViolation
from .semigroups import (SemigroupError, curve_semigroup, seifert_invariants,
                         seifert_semigroup)
from .series import (UnsupportedGraph, expand_alternative, expand_direct,
                     expand_rational, rational_form)

DOMAIN_ERRORS = (GraphError, NotNegativeDefinite, NotInDualLattice, NotInAffineLattice,
                 PinnedGeneratorsInvalid, UnsupportedGraph, OracleError, SemigroupError,
                 DivisionError, SupportViolation, OrbifoldIdentityViolation)


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    subcommand: str
    input_sha256: str | None = None
    class_spec: str | None = None
    resolved_class: list | None = None
    lift: dict | None = None
    generator_strategy: str | None = None
    generators: list | None = None
    degree: int | None = None
    versions: dict = field(default_factory=lambda: {
        'plumbsw': __version__,
        'python': platform.python_version(),
        'sympy': sympy.__version__,
    })


# ---------------------------------------------------------------- encoding


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def terms_json(L: Laurent) -> list:
    return [[[rat(x) for x in e], int(c) if Fraction(c).denominator == 1 else rat(c)]
            for e, c in L.sorted_terms()]


def _plain(obj):
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _label(I) -> str:
    return ','.join(sorted(I)) or '-'


# ---------------------------------------------------------------- inputs


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _read_graph(path: str):
    try:
        with open(path, 'rb') as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_plumbing(raw.decode('utf-8')), hashlib.sha256(raw).hexdigest()


def _dual_vector(P: Plumbed, text: str, what: str) -> list[int]:
    y = _int_list(text, what)
    if len(y) != len(P.graph.ids):
        raise UsageError(f"{what} needs {len(P.graph.ids)} E*-coordinates "
                         f"(order {','.join(P.graph.ids)})")
    return y


def _resolve_lift(P: Plumbed, args, man: RunManifest) -> ReducedLift:
    h = None
    if args.cls:
        h = P.dg.class_of(_dual_vector(P, args.cls, '--class'))
        man.class_spec = args.cls
    lift = args.lift or 'canonical'
    if lift == 'canonical':
        a = canonical_lift(P, h if h is not None else P.dg.zero())
    elif lift.startswith('pinned:'):
        a = lift_from_dual(P, _dual_vector(P, lift[7:], '--lift'))
        if h is not None and class_of_lift(P, a) != h:
            raise UsageError("--lift vector is not in the class given by --class")
    else:
        raise UsageError(f"--lift must be canonical or pinned:<vector>, got {lift!r}")
    man.resolved_class = list(class_of_lift(P, a))
    man.lift = a.to_json()
    return a


def _pinned_file(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None
    if isinstance(data, dict):
        data = data.get('vectors')
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise UsageError(f"{path}: expected a list of integer vectors")
    return data


def _strategy(args):
    spec = args.generators or 'small'
    if spec in ('proof', 'small'):
        return spec, None
    if spec.startswith('pinned:'):
        return 'pinned', _pinned_file(spec[7:])
    raise UsageError(f"--generators must be proof, small or pinned:<file>, got {spec!r}")


def _load(args, man: RunManifest) -> Plumbed:
    g, digest = _read_graph(args.graph)
    man.input_sha256 = digest
    return Plumbed.from_graph(g)


def _gens(P, a, args, man):
    strategy, pinned = _strategy(args)
    gens = generators_for(P, a, strategy, pinned)
    man.generator_strategy = strategy
    man.generators = [list(v) for v in gens.vectors]
    return strategy, pinned, gens


# ---------------------------------------------------------------- commands


def cmd_validate(args, man):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        g, digest = _read_graph(args.graph)
    man.input_sha256 = digest
    P = Plumbed.from_graph(g, allow_arrows=True)
    out = {
        'valid': True,
        'vertices': len(g),
        'nodes': list(P.nodes),
        'det': graph_det(g),
        'warnings': sorted(str(w.message) for w in caught),
    }
    return out, f"valid plumbing tree, {len(g)} vertices, det {out['det']}"


def cmd_info(args, man):
    P = _load(args, man)
    cl = P.cl
    out = {
        'vertices': list(P.graph.ids),
        'det': P.idata.det,
        'H_order': P.dg.order,
        'invariant_factors': list(P.dg.factors),
        'nodes': list(P.nodes),
        'high_nodes': list(cl.high_nodes),
        'root': cl.root,
        'delta_N': cl.delta_N,
        'delta_E': cl.delta_E,
        'legs': [asdict(l) for l in P.legs],
        'chains': [asdict(c) for c in P.chains],
        'orbifold_euler': {n: rat(e) for n, e in P.orb.e.items()},
        'I_orb': [[rat(x) for x in row] for row in P.orb.I_orb],
    }
    fac = ' + '.join(f"Z{d}" for d in P.dg.factors) or '0'
    return out, f"|H| = {P.dg.order}, H = {fac}, nodes {','.join(P.nodes) or '-'}"


def cmd_series(args, man):
    P = _load(args, man)
    a = _resolve_lift(P, args, man)
    man.degree = args.degree
    method = args.method
    if method == 'direct':
        Z = expand_direct(P, a, args.degree)
    elif method == 'alternative':
        Z = expand_alternative(P, a, args.degree)
    else:
        _, _, gens = _gens(P, a, args, man)
        Z = expand_rational(rational_form(P, a, gens), args.degree)
    out = {'class': man.resolved_class, 'method': method, 'c': [rat(x) for x in c_vector(P, a)],
           'terms': terms_json(Z)}
    return out, f"class {tuple(man.resolved_class)}: {len(Z)} terms up to degree {args.degree}"


def cmd_rational(args, man):
    P = _load(args, man)
    a = _resolve_lift(P, args, man)
    _, _, gens = _gens(P, a, args, man)
    form = rational_form(P, a, gens)
    entries = [{'I': sorted(I), 'numerator': terms_json(num), 'denominators': [list(v) for v in dens]}
               for I, num, dens in sorted(form.items(), key=lambda x: sorted(x[0]))]
    out = {'class': man.resolved_class, 'c': [rat(x) for x in c_vector(P, a)], 'entries': entries}
    return out, f"class {tuple(man.resolved_class)}: {len(entries)} nonzero summands"


def cmd_holes(args, man):
    P = _load(args, man)
    a = _resolve_lift(P, args, man)
    _, _, gens = _gens(P, a, args, man)
    hd = hole_decomposition(P, a, gens)
    out = {
        'class': man.resolved_class,
        'box': [list(l) for l in hd.box],
        'holes': {_label(I): [list(l) for l in sorted(v)] for I, v in hd.holes.items()},
        'graded': {f"k={','.join(f'{n}:{x}' for n, x in k) or '-'};I={_label(I)}":
                   [list(l) for l in sorted(v)] for (k, I), v in hd.graded.items()},
    }
    return out, f"class {tuple(man.resolved_class)}: box of {len(hd.box)} points"


def _sw_entry(P, a, strategy, pinned, oracle: bool):
    res = compute_sw(P, a, strategy, pinned)
    out = {
        'class': list(res.h),
        'P_h': terms_json(res.P_h),
        'sw_norm': rat(res.sw_norm),
        'sw': rat(res.sw_raw),
        'generators': res.generators.to_json(),
    }
    if oracle:
        o = oracle_sw_counting(P, res.h)
        out['oracle'] = rat(o)
        out['difference'] = rat(res.sw_norm - o)
    return out, res


def cmd_polypart(args, man):
    P = _load(args, man)
    a = _resolve_lift(P, args, man)
    strategy, pinned, _ = _gens(P, a, args, man)
    out, res = _sw_entry(P, a, strategy, pinned, args.oracle)
    man.generators = [list(v) for v in res.generators.vectors]
    msg = f"class {tuple(res.h)}: {len(res.P_h)} terms, sw^norm = {res.sw_norm}"
    if args.oracle:
        msg += f", oracle {out['oracle']}"
    return out, msg


def cmd_sw(args, man):
    P = _load(args, man)
    strategy, pinned = _strategy(args)
    man.generator_strategy = strategy
    classes = []
    for h in P.dg.elements():
        entry, _ = _sw_entry(P, canonical_lift(P, h), strategy, pinned, args.oracle)
        classes.append(entry)
    out = {'H_order': P.dg.order, 'classes': classes}
    vals = ', '.join(f"{tuple(e['class'])}: {e['sw_norm']}" for e in classes)
    return out, f"sw^norm by class: {vals}"


def cmd_semigroup(args, man):
    given = [x for x in (args.seifert, args.pair, args.curve) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --seifert, --pair, --curve")
    if args.seifert is not None:
        alphas = _int_list(args.seifert, '--seifert')
        sg = seifert_semigroup(alphas)
        b0, omegas = seifert_invariants(sorted(alphas))
        out = sg.to_json()
        out.update(b0=b0, omegas=list(omegas), alexander=sg.alexander(), delta=sg.genus)
        ci = None
    elif args.pair is not None:
        pair = _int_list(args.pair, '--pair')
        if len(pair) != 2:
            raise UsageError("--pair takes two integers p,a")
        ci = curve_semigroup(pair=tuple(pair))
    else:
        g, digest = _read_graph(args.curve)
        man.input_sha256 = digest
        ci = curve_semigroup(g)
    if ci is not None:
        out = ci.to_json()
        sg = ci.semigroup
    gens = ','.join(map(str, out['generators']))
    return out, f"semigroup <{gens}>, genus {sg.genus}"


COMMANDS = {
    'validate': cmd_validate, 'info': cmd_info, 'series': cmd_series,
    'rational': cmd_rational, 'holes': cmd_holes, 'polypart': cmd_polypart,
    'sw': cmd_sw, 'semigroup': cmd_semigroup,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog='plumbsw', description=(
        "Poincare series, polynomial parts and normalized Seiberg-Witten "
        "invariants of negative definite plumbed 3-manifolds"))
    p.add_argument('--version', action='version', version=__version__)
    sub = p.add_subparsers(dest='command', required=True)

    def graph_cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument('graph', help="plumbing graph file (text or JSON)")
        s.add_argument('--format', choices=('json', 'text'), default='json')
        return s

    def class_opts(s):
        s.add_argument('--class', dest='cls', metavar='Y',
                       help="comma-separated E*-coordinates of any element of the class")
        s.add_argument('--lift', default='canonical', help="canonical | pinned:<vector>")

    def gen_opts(s):
        s.add_argument('--generators', default='small', help="proof | small | pinned:<file>")

    graph_cmd('validate', "parse and check a graph")
    graph_cmd('info', "discriminant group, nodes, Seifert data")
    s = graph_cmd('series', "truncated reduced series Z_h")
    class_opts(s)
    gen_opts(s)
    s.add_argument('--degree', type=int, default=50, help="per-node exponent bound")
    s.add_argument('--method', choices=('direct', 'alternative', 'rational'), default='direct')
    s = graph_cmd('rational', "rational form of Z_h from graded holes")
    class_opts(s)
    gen_opts(s)
    s = graph_cmd('holes', "box points and hole sets")
    class_opts(s)
    gen_opts(s)
    s = graph_cmd('polypart', "polynomial part P_h and sw^norm_h")
    class_opts(s)
    gen_opts(s)
    s.add_argument('--oracle', action='store_true', help="cross-check with the counting function")
    s = graph_cmd('sw', "sw^norm_h for every class")
    gen_opts(s)
    s.add_argument('--oracle', action='store_true', help="cross-check with the counting function")
    s = sub.add_parser('semigroup', help="numerical semigroups")
    s.add_argument('--seifert', metavar='A1,A2,...')
    s.add_argument('--pair', metavar='P,A')
    s.add_argument('--curve', metavar='FILE', help="arrowed resolution graph")
    s.add_argument('--format', choices=('json', 'text'), default='json')
    return p


def _text(obj, indent=0) -> str:
    pad = '  ' * indent
    lines = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    return '\n'.join(l for l in lines if l)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    man = RunManifest(subcommand=args.command)
    if hasattr(args, 'degree'):
        man.degree = args.degree
    try:
        out, summary = COMMANDS[args.command](args, man)
    except UsageError as exc:
        print(f"plumbsw: usage error: {exc}", file=stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"plumbsw: error: {exc}", file=stderr)
        return 1
    doc = _plain(dict(out, manifest=asdict(man)))
    if args.format == 'text':
        print(_text(doc), file=stdout)
    else:
        print(json.dumps(doc, sort_keys=True, indent=1), file=stdout)
    print(summary, file=stderr)
    return 0


def main() -> None:
    sys.exit(run())
