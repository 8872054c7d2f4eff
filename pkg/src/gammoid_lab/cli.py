"""Command-line interface.

Exit codes: 0 on success, 2 when the mathematics says no (a dependent set,
an axiom failure, two different matroids, no pattern found), 1 on bad input.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .bimaze import (
    InvalidBimaze,
    m0_matching_of,
    maximal_presentation,
    minimal_presentation,
    mpt_oracle,
    mt_oracle,
)
from .demos import DEMOS
from .dimaze import LinkageError, PathSystem, WalkError, link, ml_oracle
from .duality import DualityError, to_bimaze, to_dimaze
from .formats import (
    DocumentError,
    bimaze_doc,
    bipartite_doc,
    dimaze_doc,
    emit,
    kind_of,
    matching_doc,
    parse,
    paths_doc,
    read_bimaze,
    read_bipartite,
    read_dimaze,
    read_linkage,
    read_pym_input,
    truncation_doc,
)
from .lazy import (
    COMB_KINDS,
    GENERATORS,
    detect_comb,
    detect_fan,
    eliminate_fan_centres,
    generator,
    tnd_truncation,
    topologically_linkable,
    truncate,
    verify_certificate,
    verify_top_result,
)
from .matroid import CAP_ENV, MinorInputError, TooLargeError, check_axioms, enumerate_sets, first_difference, rank
from .pym import PymError, pym_linkage
from .shift import PresentationError, minor_presentation, shift

OK, NO, USAGE = 0, 2, 1


class UsageError(Exception):
    pass


def _read(path: str) -> tuple:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    text, source = _read(path)
    return parse(text, source), source


def _names(arg: Optional[str]) -> list:
    if not arg:
        return []
    return [s.strip() for s in arg.split(",") if s.strip()]


def _oracle(doc, source):
    kind = kind_of(doc)
    if kind == "dimaze":
        return ml_oracle(read_dimaze(doc, source).dimaze)
    if kind == "bimaze":
        return mpt_oracle(read_bimaze(doc, source))
    return mt_oracle(read_bipartite(doc, source))


def _out(doc) -> None:
    sys.stdout.write(emit(doc))


def _require_set(args) -> list:
    if args.set is None:
        raise UsageError("--set is required")
    return _names(args.set)


# ---------------------------------------------------------------------------
# commands


def cmd_axioms(args) -> int:
    doc, source = _load(args.file)
    report = check_axioms(_oracle(doc, source), args.cap)
    _out({"kind": "axiom-report", **report.as_dict()})
    return OK if report.passed else NO


def cmd_link(args) -> int:
    doc, source = _load(args.file)
    D = read_dimaze(doc, source).dimaze
    I = _require_set(args)
    found = link(D, I)
    if isinstance(found, PathSystem):
        _out({"kind": "linkage", "paths": paths_doc(found)})
        return OK
    _out({"kind": "separator", "set": D.ordered(set(I)), "separator": D.ordered(found.vertices)})
    return NO


def cmd_shift(args) -> int:
    doc, source = _load(args.file)
    D = read_dimaze(doc, source).dimaze
    if not args.linkage:
        raise UsageError("--linkage is required")
    ldoc, lsource = _load(args.linkage)
    Q = read_linkage(ldoc, lsource)
    _out(dimaze_doc(shift(D, Q).d1))
    return OK


def cmd_minor(args) -> int:
    doc, source = _load(args.file)
    D = read_dimaze(doc, source).dimaze
    pres = minor_presentation(D, _names(args.contract), _names(args.delete))
    _out({"kind": "minor", "dimaze": dimaze_doc(pres.dimaze), "ground": list(pres.ground), "base": D.ordered(pres.base)})
    return OK


def cmd_pym(args) -> int:
    doc, source = _load(args.file)
    D = read_dimaze(doc, source).dimaze
    if not args.linkage:
        raise UsageError("--linkage is required (a document with keys p and q)")
    ldoc, lsource = _load(args.linkage)
    P, Q = read_pym_input(ldoc, lsource)
    trace = pym_linkage(D, P, Q)
    _out(
        {
            "kind": "pym",
            "linkage": paths_doc(trace.q_inf),
            "rounds": trace.rounds,
            "markers": [[x, trace.f_inf[x]] for x in D.ordered(trace.f_inf)],
        }
    )
    return OK


def cmd_dualize(args) -> int:
    doc, source = _load(args.file)
    if args.to_dimaze:
        _out(dimaze_doc(to_dimaze(read_bimaze(doc, source))))
    else:
        _out(bimaze_doc(to_bimaze(read_dimaze(doc, source).dimaze)))
    return OK


def cmd_mpt(args) -> int:
    doc, source = _load(args.file)
    B = read_bimaze(doc, source)
    if args.set is None:
        M = mpt_oracle(B)
        bases = enumerate_sets(M, "bases", args.cap)
        _out({"kind": "mpt", "rank": rank(M), "bases": [M.ground.ordered(b) for b in bases]})
        return OK
    I = _names(args.set)
    m = m0_matching_of(B, I)
    if m is None:
        _out({"kind": "dependent", "set": B.graph.ordered_left(set(I))})
        return NO
    _out({"kind": "m0-matching", "matching": matching_doc(m, B.graph.left)})
    return OK


def cmd_present_max(args) -> int:
    doc, source = _load(args.file)
    _out(bipartite_doc(maximal_presentation(read_bipartite(doc, source))))
    return OK


def cmd_present_min(args) -> int:
    doc, source = _load(args.file)
    _out(bipartite_doc(minimal_presentation(read_bipartite(doc, source))))
    return OK


def cmd_detect(args) -> int:
    doc, source = _load(args.file)
    T = read_dimaze(doc, source)
    cert = detect_fan(T, args.k) if args.kind == "fan" else detect_comb(T, args.kind, args.k)
    if cert is None:
        _out({"kind": "none", "pattern": args.kind, "k": args.k})
        return NO
    problems = verify_certificate(T, cert, args.k)
    if problems:
        raise RuntimeError("certificate failed re-verification: " + "; ".join(problems))
    _out({"kind": "certificate", "k": args.k, "certificate": cert.as_dict()})
    return OK


def cmd_toplink(args) -> int:
    doc, source = _load(args.file)
    T = read_dimaze(doc, source)
    I = _require_set(args)
    res = topologically_linkable(T, I, args.k)
    problems = verify_top_result(T, I, args.k, res)
    if problems:
        raise RuntimeError("answer failed re-verification: " + "; ".join(problems))
    out = {"kind": "toplink", "status": res.status, "k": args.k}
    if res.status == "yes":
        out["paths"] = [tp.as_dict() for tp in res.paths]
    elif res.status == "no":
        out["separator"] = T.dimaze.ordered(res.separator)
    else:
        out["frontier"] = T.dimaze.ordered(res.frontier)
    _out(out)
    return NO if res.status == "no" else OK


def cmd_eliminate_fans(args) -> int:
    doc, source = _load(args.file)
    _out(truncation_doc(eliminate_fan_centres(read_dimaze(doc, source), args.k)))
    return OK


def cmd_compare(args) -> int:
    a, sa = _load(args.first)
    b, sb = _load(args.second)
    M1, M2 = _oracle(a, sa), _oracle(b, sb)
    if set(M1.ground) != set(M2.ground):
        raise UsageError("the two documents have different ground sets")
    diff = first_difference(M1, M2, args.cap)
    if diff is None:
        _out({"kind": "comparison", "equal": True})
        return OK
    subset, in_first, in_second = diff
    _out(
        {
            "kind": "comparison",
            "equal": False,
            "witness": M1.ground.ordered(subset),
            "independent_in_first": in_first,
            "independent_in_second": in_second,
        }
    )
    return NO


def cmd_demo(args) -> int:
    kwargs = {}
    if args.depth is not None:
        kwargs["levels" if args.id == "tnd" else "depth"] = args.depth
    if args.width is not None and args.id == "tree":
        kwargs["width"] = args.width
    report = DEMOS[args.id](**kwargs)
    _out({"kind": "demo", **report})
    return OK if report["passed"] else NO


def cmd_gen(args) -> int:
    depth = args.depth if args.depth is not None else 5
    width = args.width if args.width is not None else 3
    if args.name == "TND":
        T = tnd_truncation(depth)
        doc = bipartite_doc(T.graph)
        doc["frontier"] = [v for v in T.graph.left if v in T.frontier]
        _out(doc)
        return OK
    _out(truncation_doc(truncate(generator(args.name), depth, width)))
    return OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gammoid-lab", description="Gammoid and transversal matroid workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--cap", dest="global_cap", type=int, default=None, help=f"enumeration cap (default from {CAP_ENV} or 20)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file=True):
        sp = sub.add_parser(name, help=help_text)
        if file:
            sp.add_argument("file", help='input document, or "-" for stdin')
        sp.add_argument("--cap", type=int, default=None, help="enumeration cap")
        sp.set_defaults(func=func)
        return sp

    add("axioms", cmd_axioms, "check the independence axioms by enumeration")
    add("link", cmd_link, "link a set or return a separator").add_argument("--set")
    add("shift", cmd_shift, "shift a dimaze along a linkage").add_argument("--linkage")
    sp = add("minor", cmd_minor, "dimaze presenting a minor")
    sp.add_argument("--contract")
    sp.add_argument("--delete")
    add("pym", cmd_pym, "run the Pym marker construction").add_argument("--linkage")
    add("dualize", cmd_dualize, "convert a dimaze to its bimaze, or back").add_argument("--to-dimaze", action="store_true")
    add("mpt", cmd_mpt, "path-transversal independence of a bimaze").add_argument("--set")
    add("present-max", cmd_present_max, "maximal presentation of a transversal matroid")
    add("present-min", cmd_present_min, "a minimal presentation of a transversal matroid")
    sp = add("detect", cmd_detect, "search for a comb or fan prefix")
    sp.add_argument("--kind", choices=COMB_KINDS + ("fan",), default="outgoing")
    sp.add_argument("--k", type=int, default=5)
    sp = add("toplink", cmd_toplink, "approximate topological linkability")
    sp.add_argument("--set")
    sp.add_argument("--k", type=int, default=5)
    add("eliminate-fans", cmd_eliminate_fans, "turn fan centres into exits").add_argument("--k", type=int, default=5)
    sp = add("compare", cmd_compare, "compare two matroids by enumeration", file=False)
    sp.add_argument("first")
    sp.add_argument("second")
    sp = add("demo", cmd_demo, "run a scripted example", file=False)
    sp.add_argument("id", choices=sorted(DEMOS))
    sp.add_argument("--depth", type=int)
    sp.add_argument("--width", type=int)
    sp = add("gen", cmd_gen, "truncate a built-in generator", file=False)
    sp.add_argument("name", choices=sorted(GENERATORS) + ["TND"])
    sp.add_argument("--depth", type=int)
    sp.add_argument("--width", type=int)
    return p


INPUT_ERRORS = (
    UsageError,
    DocumentError,
    TooLargeError,
    MinorInputError,
    PresentationError,
    LinkageError,
    WalkError,
    DualityError,
    InvalidBimaze,
    ValueError,
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.cap is None:
        args.cap = args.global_cap
    if args.cap is not None and args.cap < 0:
        print("error: --cap must be non-negative", file=sys.stderr)
        return USAGE
    saved = os.environ.get(CAP_ENV)
    if args.cap is not None:
        os.environ[CAP_ENV] = str(args.cap)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except PymError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return USAGE
    finally:
        if saved is None:
            os.environ.pop(CAP_ENV, None)
        else:
            os.environ[CAP_ENV] = saved


if __name__ == "__main__":
    sys.exit(main())
