"""Command-line front end.

Exit codes: 0 the property holds or the command succeeded, 1 the property
is violated (a witness is printed), 2 bad input, 3 certified not decomposable.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .cone import decompose, matroid_cone, sample_gs, verify_certificate
from .errors import ConcordanceError, InputError, NotGSError
from .fileio import format_valuation_text, load_valuation, save_valuation, valuation_to_json
from .matroid import enumerate_matroids, isomorphism_classes, is_matroid_rank_valuation
from .reproduction import (
    counterexample_valuation,
    group_labels,
    reference_certificate,
    submodular_not_gs_function,
    verify_claims,
)
from .subsets import bit, format_set, full_mask, items_of, parse_items, popcount
from .substitutes import check_gs
from .tree import concordant_sum, delta_tensor, extract_tree
from .valuation import _frac

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_NOT_DECOMPOSABLE = 0, 1, 2, 3
DEFAULT_SEED = 0

DUMP_FILES = {
    "counterexample.val": counterexample_valuation,
    "certificate.val": reference_certificate,
    "groups.val": group_labels,
    "submodular_not_gs.val": submodular_not_gs_function,
}


class _Output:
    def __init__(self, args, stream):
        self.json = getattr(args, "json", False) or getattr(args, "format", "text") == "json"
        self.quiet = getattr(args, "quiet", False)
        self.stream = stream

    def emit(self, payload, text):
        if self.quiet:
            return
        if self.json:
            self.stream.write(json.dumps(payload, indent=2) + "\n")
        else:
            self.stream.write(text if text.endswith("\n") else text + "\n")


def _add_common(p, suppress):
    default = (lambda x: argparse.SUPPRESS) if suppress else (lambda x: x)
    p.add_argument("--json", action="store_true", default=default(False), help="emit JSON")
    p.add_argument("--format", choices=("json", "text"), default=default("text"))
    p.add_argument("--quiet", action="store_true", default=default(False), help="exit code only")
    p.add_argument("--seed", type=int, default=default(None),
                   help="RNG seed (falls back to $SEED, then %d)" % DEFAULT_SEED)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError("SEED must be an integer, got %r" % env) from None


# -- check ---------------------------------------------------------------------


def _check_gs(v):
    bad = check_gs(v)
    payload = {
        "property": "gs",
        "holds": not bad,
        "triples_checked": bad.triples_checked,
        "violations": [
            {"S": format_set(b.S), "i": b.i, "j": b.j, "k": b.k,
             "lhs": str(b.lhs), "rhs": str(b.rhs), "kind": b.kind}
            for b in bad
        ],
    }
    lines = ["gs: %s (%d triples checked)" % ("holds" if not bad else "violated", bad.triples_checked)]
    lines += ["  " + b.describe() for b in bad]
    return not bad, payload, lines


def _check_submodular(v):
    vals = v.values
    bad = []
    for S in range(1 << v.n):
        for i, j in combinations(items_of(full_mask(v.n) & ~S), 2):
            bi, bj = bit(i), bit(j)
            x = vals[S | bi | bj] - vals[S | bi] - vals[S | bj] + vals[S]
            if x > 0:
                bad.append({"S": format_set(S), "i": i, "j": j, "d2": str(x)})
    lines = ["submodular: %s" % ("holds" if not bad else "violated")]
    lines += ["  S=%s: d2_{%d,%d} = %s > 0" % (b["S"], b["i"], b["j"], b["d2"]) for b in bad]
    return not bad, {"property": "submodular", "holds": not bad, "violations": bad}, lines


def _rank_witness(v):
    if v.values[0] != 0:
        return "v({}) = %s, expected 0" % v.values[0]
    for S in range(1 << v.n):
        for i in items_of(full_mask(v.n) & ~S):
            gain = v.values[S | bit(i)] - v.values[S]
            if gain not in (0, 1):
                return "marginal of %d at S=%s is %s, expected 0 or 1" % (i, format_set(S), gain)
    bad = check_gs(v)
    if bad:
        return bad[0].describe()
    return "not the rank function of a matroid"


def _check_matroid_rank(v):
    holds = is_matroid_rank_valuation(v)
    witness = None if holds else _rank_witness(v)
    lines = ["matroid-rank: %s" % ("holds" if holds else "violated")]
    if witness:
        lines.append("  " + witness)
    return holds, {"property": "matroid-rank", "holds": holds, "witness": witness}, lines


def cmd_check(args, out):
    v = load_valuation(args.file)
    holds, payload, lines = {
        "gs": _check_gs,
        "submodular": _check_submodular,
        "matroid-rank": _check_matroid_rank,
    }[args.property](v)
    payload["file"] = str(args.file)
    out.emit(payload, "\n".join(lines))
    return EXIT_OK if holds else EXIT_VIOLATED


# -- tree ----------------------------------------------------------------------


def _render_tree(tree):
    lines = ["S=%s" % format_set(tree.S)]

    def walk(X, depth):
        lines.append("%s%s label %s" % ("  " * (depth + 1), format_set(X), tree.label_of(X)))
        kids = [Y for Y, _ in tree.nodes if tree.parent(Y) == X]
        for Y in kids:
            walk(Y, depth + 1)

    walk(tree.nodes[0][0], 0)
    return lines


def cmd_tree(args, out):
    v = load_valuation(args.file)
    d = delta_tensor(v)
    if args.all:
        sets = [S for S in range(1 << v.n) if popcount(full_mask(v.n) & ~S) >= 2]
    else:
        sets = [parse_items(args.set, v.n) if args.set else 0]
    try:
        trees = [extract_tree(d, S) for S in sets]
    except NotGSError as exc:
        out.emit({"gs": False, "error": str(exc)}, "not GS: %s" % exc)
        return EXIT_VIOLATED
    payload = [t.to_json() for t in trees]
    text = []
    for t in trees:
        text.extend(_render_tree(t))
    out.emit(payload if args.all else payload[0], "\n".join(text))
    return EXIT_OK


# -- sum -----------------------------------------------------------------------


def cmd_sum(args, out):
    u, v = load_valuation(args.first), load_valuation(args.second)
    try:
        total = concordant_sum(u, v, _frac_arg(args.alpha), _frac_arg(args.beta))
    except ConcordanceError as exc:
        X, Y = exc.witness
        out.emit(
            {"concordant": False, "S": format_set(exc.S), "crossing": [format_set(X), format_set(Y)]},
            str(exc),
        )
        return EXIT_VIOLATED
    except NotGSError as exc:
        out.emit({"concordant": False, "error": str(exc)}, str(exc))
        return EXIT_VIOLATED
    if args.output:
        save_valuation(total, args.output)
    out.emit({"concordant": True, "sum": valuation_to_json(total)}, format_valuation_text(total))
    return EXIT_OK


def _frac_arg(text):
    try:
        return _frac(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InputError("not a rational number: %r" % text) from None


# -- matroid -------------------------------------------------------------------


def cmd_matroid_enumerate(args, out):
    cat = enumerate_matroids(args.n)
    iso = isomorphism_classes(cat)
    if args.count or args.iso:
        payload, text = {"n": args.n}, []
        if args.count:
            payload["labeled"] = len(cat)
            text.append("labeled matroids on [%d]: %d" % (args.n, len(cat)))
        if args.iso:
            payload["isomorphism_classes"] = iso
            text.append("isomorphism classes on [%d]: %d" % (args.n, iso))
        out.emit(payload, "\n".join(text))
        return EXIT_OK
    records = [
        {"n": m.n, "bases": [format_set(B) for B in m.bases], "iso_class": c}
        for m, c in zip(cat.entries, cat.iso_class)
    ]
    text = ["bases: %s  # class %d" % (" ".join(r["bases"]), r["iso_class"]) for r in records]
    out.emit(records, "\n".join(text))
    return EXIT_OK


# -- cone ----------------------------------------------------------------------


def _cone_for(v, n):
    if n is not None and n != v.n:
        raise InputError("valuation has n=%d but --n %d was given" % (v.n, n))
    if v.n > 5:
        raise InputError("matroid cones are available for n <= 5")
    return matroid_cone(v.n)


def cmd_cone_decompose(args, out):
    v = load_valuation(args.file)
    cone = _cone_for(v, args.n)
    res = decompose(v, cone)
    if res.feasible:
        terms = res.decomposition.terms()
        out.emit(
            {"decomposable": True, "pivots": res.pivots,
             "terms": [{"generator": name, "coefficient": str(a)} for name, a in terms]},
            "\n".join(["decomposable"] + ["  %s * %s" % (a, name) for name, a in terms]),
        )
        return EXIT_OK
    y = res.certificate.y
    if args.output:
        save_valuation(y, args.output)
    out.emit(
        {"decomposable": False, "pivots": res.pivots, "certificate": valuation_to_json(y)},
        "not decomposable; Farkas certificate:\n" + format_valuation_text(y, skip_zero=True),
    )
    return EXIT_NOT_DECOMPOSABLE


def cmd_cone_verify(args, out):
    y, v = load_valuation(args.certificate), load_valuation(args.file)
    if y.n != v.n:
        raise InputError("certificate has n=%d but valuation has n=%d" % (y.n, v.n))
    ok = verify_certificate(y, v, _cone_for(v, args.n))
    out.emit({"valid": ok}, "certificate %s" % ("verifies" if ok else "does not verify"))
    return EXIT_OK if ok else EXIT_VIOLATED


# -- reproduce -----------------------------------------------------------------


def _parse_claims(text):
    if not text:
        return None
    try:
        ids = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise InputError("--claims takes a comma-separated list of integers") from None
    bad = [c for c in ids if not 1 <= c <= 11]
    if bad:
        raise InputError("unknown claim ids %s; valid ids are 1..11" % bad)
    return ids


def cmd_reproduce_verify(args, out):
    reports = verify_claims(_parse_claims(args.claims), seed=_seed(args))
    text = ["%s claim %d: %s" % ("PASS" if r.passed else "FAIL", r.claim_id, r.name) for r in reports]
    out.emit([r.to_json() for r in reports], "\n".join(text))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATED


def cmd_reproduce_dump(args, out):
    target = Path(args.directory)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, make in DUMP_FILES.items():
        save_valuation(make(), target / name)
        written.append(str(target / name))
    out.emit({"written": written}, "\n".join(written))
    return EXIT_OK


# -- sample --------------------------------------------------------------------


def cmd_sample(args, out):
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    vals = sample_gs(args.n, _seed(args), args.count)
    text = []
    for idx, v in enumerate(vals):
        text.append("# sample %d" % idx)
        text.append(format_valuation_text(v))
    out.emit([valuation_to_json(v) for v in vals], "\n".join(text))
    return EXIT_OK


# -- wiring --------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="gscone", description=__doc__.splitlines()[0])
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(container, name, func, **kw):
        p = container.add_parser(name, **kw)
        _add_common(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = leaf(sub, "check", cmd_check, help="test a property of a valuation file")
    p.add_argument("property", choices=("gs", "submodular", "matroid-rank"))
    p.add_argument("file")

    p = leaf(sub, "tree", cmd_tree, help="minimal substitution tree(s)")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--set", help="conditioning set, e.g. 1,2 (default: empty)")
    group.add_argument("--all", action="store_true", help="every conditioning set")

    p = leaf(sub, "sum", cmd_sum, help="alpha*u + beta*v for tree-concordant GS valuations")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--output", help="also write the sum to this file")

    m = sub.add_parser("matroid", help="matroid catalogs").add_subparsers(dest="action", required=True)
    p = leaf(m, "enumerate", cmd_matroid_enumerate, help="all matroids on [n]")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print the labeled count")
    p.add_argument("--iso", action="store_true", help="print the isomorphism-class count")

    c = sub.add_parser("cone", help="matroid cone membership").add_subparsers(dest="action", required=True)
    p = leaf(c, "decompose", cmd_cone_decompose, help="decompose or certify non-membership")
    p.add_argument("file")
    p.add_argument("--n", type=int)
    p.add_argument("--output", help="write the certificate here when not decomposable")
    p = leaf(c, "verify-certificate", cmd_cone_verify, help="check a Farkas certificate")
    p.add_argument("certificate")
    p.add_argument("file")
    p.add_argument("--n", type=int)

    r = sub.add_parser("reproduce", help="the five-item counterexample checks").add_subparsers(
        dest="action", required=True
    )
    p = leaf(r, "verify", cmd_reproduce_verify, help="run the numbered claims")
    p.add_argument("--claims", help="comma-separated claim ids (default: all)")
    p = leaf(r, "dump", cmd_reproduce_dump, help="write the built-in tables as valuation files")
    p.add_argument("directory")

    p = leaf(sub, "sample", cmd_sample, help="seeded random GS valuations for n in 2..4")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run the command, and return its exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args, _Output(args, stdout))
    except InputError as exc:
        stderr.write("error: %s\n" % exc)
        return EXIT_INPUT


def main():
    sys.exit(run())
