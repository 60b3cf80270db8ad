"""
Command-line interface.

Exit codes: 0 success, 1 validation failure (or invalid input data),
2 usage error.  Object indices on the command line are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .ainf import gram_matrix, hom_cohomology, hom_dims_table, validate_ainf
from .catfile import ParseError, load, serialize
from .generators import KnottedSpec, gen_knotted, random_square_zero_pair
from .knotted import KNOTTED_WORD, run_knotted_pipeline
from .mutation import MutationError, apply_word, parse_word
from .twist import cone, evaluation, hom_complex, object_tw, triangle_euler_check

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(text)


def _dims_str(d: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(d.items())) + "}"


def _gram_str(g) -> str:
    return "[" + ",".join("[" + ",".join(str(int(x)) for x in row) + "]" for row in g) + "]"


def _load(path):
    if not Path(path).exists():
        raise UsageError(f"no such file: {path}")
    return load(path)


def _index(a, i, what):
    if not 1 <= i <= a.m:
        raise UsageError(f"{what} must be between 1 and {a.m}, got {i}")
    return i - 1


# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    a = _load(args.file)
    rep = validate_ainf(a)
    n = len(a.entries())
    doc = {"file": str(args.file), "objects": a.m, "mu_entries": n, **rep.as_dict()}
    if rep.ok:
        text = f"valid directed A∞-category ({a.m} objects, μ-entries: {n})"
    else:
        text = "\n".join([f"invalid: {len(rep.violations)} violation(s)"]
                         + [f"  {v}" for v in rep.violations])
    _emit(args, doc, text)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_cohomology(args) -> int:
    a = _load(args.file)
    if args.pair:
        i, k = _index(a, args.pair[0], "i"), _index(a, args.pair[1], "k")
        table = {(i, k): hom_cohomology(a, i, k)}
    else:
        table = hom_dims_table(a)
    doc = {"pairs": [{"i": i + 1, "k": k + 1, "dims": {str(d): n for d, n in sorted(v.items())}}
                     for (i, k), v in sorted(table.items())]}
    text = "\n".join(f"H(hom({a.names[i]}, {a.names[k]})) [{i + 1},{k + 1}]: {_dims_str(v)}"
                     for (i, k), v in sorted(table.items()))
    _emit(args, doc, text)
    return EXIT_OK


def cmd_gram(args) -> int:
    a = _load(args.file)
    g = gram_matrix(a).tolist()
    _emit(args, {"names": list(a.names), "gram": g}, _gram_str(g))
    return EXIT_OK


def cmd_mutate(args) -> int:
    a = _load(args.file)
    try:
        word = parse_word(args.word)
    except MutationError as exc:
        raise UsageError(str(exc)) from None
    try:
        res = apply_word(a, word, left_to_right=args.left_to_right)
    except MutationError as exc:
        _emit(args, {"ok": False, "error": str(exc)}, f"mutation failed: {exc}")
        return EXIT_INVALID
    out = serialize(res.category)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    doc = {"ok": True, "word": str(word), "left_to_right": args.left_to_right,
           "names": list(res.category.names), "provenance": res.provenance}
    lines = [f"word: {word} ({'left to right' if args.left_to_right else 'rightmost first'})"]
    for step in res.provenance:
        mv = step["move"] or "start"
        lines.append(f"  {mv:<10} {' '.join(step['names'])}  gram {_gram_str(step['gram'])}")
    if not args.output:
        lines.append(out.rstrip())
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_twist(args) -> int:
    a = _load(args.file)
    x, y = _index(a, args.x, "--x"), _index(a, args.y, "--y")
    yo = object_tw(a, y)
    vx, ev = evaluation(x, yo)
    t = cone(ev, vx, yo)
    summands = [{"object": a.names[s.obj], "index": s.obj + 1, "shift": s.shift, "tag": s.tag}
                for s in t.summands]
    delta = [{"from": e + 1, "to": f + 1,
              "components": (a.hom(t.summands[e].obj, t.summands[f].obj).support(v)
                             if t.summands[e].obj != t.summands[f].obj else ["id"])}
             for (e, f), v in sorted(t.delta.items())]
    probes = []
    for i in range(a.m):
        h = hom_complex(object_tw(a, i), t).cohomology()
        tri = triangle_euler_check(ev, vx, yo, object_tw(a, i))
        probes.append({"probe": i + 1, "dims": {str(k): v for k, v in sorted(h.items())},
                       "triangle_ok": tri["ok"]})
    doc = {"x": args.x, "y": args.y, "summands": summands, "delta": delta, "probes": probes}
    lines = [f"T_{{{a.names[x]}}}({a.names[y]}) = " + " + ".join(
        f"{s['object']}[{s['shift']}]" + (f"<{s['tag']}>" if s["tag"] else "") for s in summands)]
    for d in delta:
        lines.append(f"  delta {d['from']} -> {d['to']}: {' + '.join(d['components'])}")
    for p in probes:
        lines.append(f"  H(hom({a.names[p['probe'] - 1]}, T)) = "
                     f"{_dims_str({int(k): v for k, v in p['dims'].items()})}"
                     f"  triangle {'ok' if p['triangle_ok'] else 'FAILED'}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if all(p["triangle_ok"] for p in probes) else EXIT_INVALID


def _read_matrix(path, r):
    if path is None:
        return None
    if not Path(path).exists():
        raise UsageError(f"no such file: {path}")
    mat = np.loadtxt(path, dtype=np.int64, ndmin=2)
    if r == 0:
        mat = mat.reshape(0, 0)
    if mat.shape != (r, r):
        raise UsageError(f"{path}: expected a {r} x {r} matrix, got {mat.shape}")
    return mat % 2


def _spec(args) -> KnottedSpec:
    if args.r < 0:
        raise UsageError("--r must be nonnegative")
    return KnottedSpec(r=args.r, rdeg=args.rdeg, n=args.n,
                       q1=_read_matrix(args.q1, args.r), q2=_read_matrix(args.q2, args.r),
                       degrees=tuple(args.degrees) if args.degrees else None)


def cmd_gen_knotted(args) -> int:
    spec = _spec(args)
    a = gen_knotted(spec, check=not args.no_check)
    out = serialize(a)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    doc = {"r": spec.r, "degrees": list(spec.degrees), "problems": spec.problems(),
           "output": args.output}
    _emit(args, doc, out.rstrip() if not args.output else f"wrote {args.output}")
    return EXIT_OK


def cmd_knotted_pipeline(args) -> int:
    try:
        parse_word(args.word)
    except MutationError as exc:
        raise UsageError(str(exc)) from None
    if args.random:
        rng = np.random.default_rng(args.seed)
        specs = [random_square_zero_pair(rng, args.r, n=args.n, rdeg=args.rdeg)
                 for _ in range(args.random)]
    else:
        specs = [_spec(args)]
    reports = []
    for spec in specs:
        try:
            reports.append(run_knotted_pipeline(spec, args.word))
        except RuntimeError as exc:
            _emit(args, {"ok": False, "error": str(exc)}, f"pipeline failed: {exc}")
            return EXIT_INVALID
    ok = all(r["ok"] for r in reports)
    lines = []
    for rep in reports:
        lines.append(f"r = {rep['r']}: objects {', '.join(rep['names'])}")
        lines.append(f"  engine H(hom(Y1, Y4)) = {_dims_str(rep['engine_dims'])}, "
                     f"total {rep['engine_total']}")
        lines.append(f"  oracle cohomology     = {_dims_str(rep['oracle_dims'])}, "
                     f"total {rep['oracle_total']}")
        lines.append(f"  degree shift {rep['degree_shift']}, dim coker(psi) = "
                     f"{rep['coker_psi']} >= {rep['coker_bound']}: {rep['coker_bound_ok']}")
        lines.append(f"  bigger than H*(S^n) (dim 2): {rep['bigger_than_base']}")
    doc = {"ok": ok, "reports": [{**r, "engine_dims": {str(k): v for k, v in r["engine_dims"].items()},
                                  "oracle_dims": {str(k): v for k, v in r["oracle_dims"].items()}}
                                 for r in reports]}
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_INVALID


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable report")
    p = _Parser(prog="ainfmut", description="Directed A-infinity categories over GF(2): "
                                            "validation, twisted complexes and mutations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="validate a category file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cohomology", parents=[common], help="graded dims of H(hom)")
    s.add_argument("file")
    s.add_argument("--pair", nargs=2, type=int, metavar=("I", "K"))
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("gram", parents=[common], help="Euler (gram) matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("mutate", parents=[common], help="apply a mutation word")
    s.add_argument("file")
    s.add_argument("--word", required=True, help='e.g. "c c r c- r c-" or "shift(1,0,0) c"')
    s.add_argument("-o", "--output")
    s.add_argument("--left-to-right", action="store_true",
                   help="apply the leftmost move first")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("twist", parents=[common], help="twist object T_X(Y)")
    s.add_argument("file")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--y", type=int, required=True)
    s.set_defaults(func=cmd_twist)

    knot = argparse.ArgumentParser(add_help=False)
    knot.add_argument("--r", type=int, required=True, help="dimension of R")
    knot.add_argument("--rdeg", type=int, default=1, help="degree of R (default 1)")
    knot.add_argument("--n", type=int, default=2, help="degree of q1, q2 (default 2)")
    knot.add_argument("--q1", help="file with an r x r 0/1 matrix")
    knot.add_argument("--q2", help="file with an r x r 0/1 matrix")
    knot.add_argument("--degrees", type=int, nargs="+", help="degree of each basis vector of R")

    s = sub.add_parser("gen-knotted", parents=[common, knot], help="write the knotted category")
    s.add_argument("-o", "--output")
    s.add_argument("--no-check", action="store_true",
                   help="skip the commutation check (to build broken test inputs)")
    s.set_defaults(func=cmd_gen_knotted)

    s = sub.add_parser("knotted-pipeline", parents=[common, knot],
                       help="mutate the knotted category and compare with the oracle complex")
    s.add_argument("--word", default=KNOTTED_WORD)
    s.add_argument("--random", type=int, default=0, metavar="K",
                   help="run K random square-zero pairs (q1, q2) instead")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_knotted_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except MutationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
