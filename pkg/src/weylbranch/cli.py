"""Command-line front end.

    weylbranch <verb> <ALGEBRA> [<SUBALGEBRA>] [<WEIGHT>] [--json] [--params a=2,b=3] [--max-rank N]

Exit status is 0 on success, 1 when the computation is refused or fails a
check, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import io
from .branching import ConservationError, GammaError, branch, check_map, default_probes, gamma, verify_catalog
from .branching.core import gamma_of_result
from .metric import index_of
from .orbits import OrbitError, dominant_of, orbit_points, orbit_size
from .projcat import (
    FAMILIES,
    CatalogError,
    ProjectionError,
    ProjectionMap,
    SeriesKey,
    catalog_lookup,
    relate,
    series_matrix,
)
from .rootdata import AlgebraError, ProductAlgebra, parse_algebra, parse_simple

log = logging.getLogger("weylbranch")

DOMAIN_ERRORS = (AlgebraError, OrbitError, CatalogError, ProjectionError, GammaError,
                 ConservationError, io.ParseError, ArithmeticError)


def find_map(source: str, target: str) -> ProjectionMap:
    """Catalog entry if there is one, otherwise a matching general-rank family."""
    try:
        return catalog_lookup(source, target)
    except CatalogError as miss:
        src = parse_simple(source)
        tgt = parse_algebra(target)
        for name, fam in FAMILIES.items():
            if name[0] != src.family:
                continue
            for k in (range(2, src.rank) if fam.needs_k else [None]):
                if fam.valid(src.rank, k) and parse_algebra(fam.target(src.rank, k)) == tgt:
                    return series_matrix(SeriesKey(name, src.rank, k))
        raise miss


def _weight(text: str, params, alg) -> tuple:
    w = io.parse_weight(text, params)
    pa = ProductAlgebra.of(alg)
    if len(w) != pa.rank:
        raise AlgebraError(f"weight {text!r} has {len(w)} coordinates, {pa} has rank {pa.rank}")
    return w


def _matrix_text(m) -> str:
    return "\n".join(" ".join(io.fmt_number(x) for x in row) for row in m)


def _matrix_json(m) -> list[list[str]]:
    return [[io.fmt_number(x) for x in row] for row in m]


def cmd_orbit(args, params):
    alg = parse_algebra(args.algebra)
    w = dominant_of(alg, _weight(args.weight, params, alg))
    orb = orbit_points(alg, w)
    predicted = orbit_size(alg, w)
    text = "\n".join(io.fmt_weight(alg, p) for p in orb.points)
    doc = {
        "query": {"verb": "orbit", "algebra": str(alg), "weight": [io.fmt_number(x) for x in w]},
        "result": {"dominant": [io.fmt_number(x) for x in w], "size": orb.size,
                   "points": [[io.fmt_number(x) for x in p] for p in orb.points]},
        "conservation": {"predicted_size": predicted, "enumerated": orb.size, "ok": predicted == orb.size},
    }
    return text, doc


def cmd_branch(args, params):
    p = find_map(args.algebra, args.subalgebra)
    r = branch(p, _weight(args.weight, params, p.source))
    g = None
    if p.target.semisimple and "subjoining" not in p.tags and any(r.dominant):
        g = gamma_of_result(r)
    doc = io.result_to_dict(r, g)
    doc["query"] = {"verb": "branch", **doc["query"]}
    return io.render_result(r), doc


def cmd_projmat(args, params):
    p = find_map(args.algebra, args.subalgebra)
    check = check_map(p)
    doc = {
        "query": {"verb": "projmat", "source": str(p.source), "target": str(p.target)},
        "result": {"matrix": _matrix_json(p.matrix), "tags": sorted(p.tags),
                   "series": p.series},
        "conservation": {"probes_ok": check.ok, "messages": check.messages},
    }
    if p.printed is not None:
        doc["result"]["transcribed"] = _matrix_json(p.printed)
    if check.gamma is not None:
        doc["gamma"] = io.fmt_number(check.gamma)
    return _matrix_text(p.matrix), doc


def cmd_gamma(args, params):
    p = find_map(args.algebra, args.subalgebra)
    if args.weight:
        probes = [_weight(w, params, p.source) for w in args.weight.split(";")]
    else:
        probes = default_probes(p.source)
    g = gamma(p, probes)
    doc = {
        "query": {"verb": "gamma", "source": str(p.source), "target": str(p.target),
                  "probes": [[io.fmt_number(x) for x in w] for w in probes]},
        "result": io.fmt_number(g),
        "conservation": {"ok": True},
        "gamma": io.fmt_number(g),
    }
    return io.fmt_number(g), doc


def cmd_index(args, params):
    alg = parse_algebra(args.algebra)
    w = dominant_of(alg, _weight(args.weight, params, alg))
    value = index_of(alg, w)
    doc = {
        "query": {"verb": "index", "algebra": str(alg), "weight": [io.fmt_number(x) for x in w]},
        "result": io.fmt_number(value),
        "conservation": {"orbit_size": orbit_size(alg, w)},
    }
    return io.fmt_number(value), doc


def cmd_verify(args, params):
    report = verify_catalog(args.max_rank)
    lines = []
    for e in report.entries:
        status = "ok  " if e.ok else "FAIL"
        g = f"  gamma={e.gamma}" if e.gamma is not None else ""
        lines.append(f"{status} {e.key}{g}" + ("".join(f"\n     {m}" for m in e.messages)))
    lines.append(report.summary())
    doc = {
        "query": {"verb": "verify-catalog", "max_rank": args.max_rank},
        "result": [{"key": e.key, "ok": e.ok, "gamma": None if e.gamma is None else io.fmt_number(e.gamma),
                    "messages": e.messages} for e in report.entries],
        "conservation": {"ok": report.ok, "checked": len(report.entries), "failed": len(report.failures)},
    }
    if not report.ok:
        args.failed = True
    return "\n".join(lines), doc


def cmd_relate(args, params):
    p1 = find_map(args.algebra, args.subalgebra)
    p2 = find_map(args.algebra, args.other)
    m = relate(p1, p2)
    doc = {
        "query": {"verb": "relate", "source": str(p1.source), "from": str(p1.target), "to": str(p2.target)},
        "result": {"matrix": _matrix_json(m)},
        "conservation": None,
        "note": f"{p2.target} is not a subalgebra of {p1.target}; the matrix relates their weights only",
    }
    return _matrix_text(m), doc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--params", metavar="a=2,b=3", help="values for names used in weights")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="weylbranch",
        description="Weyl group orbits and their branching to maximal subalgebras, in exact arithmetic.",
        epilog="Weights are comma-separated rationals or expressions, e.g. 1,0,2 or a,2b,1/2. "
               "Put '--' before a weight that starts with '-'.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    s = sub.add_parser("orbit", parents=[common], help="list the orbit of a weight")
    s.add_argument("algebra")
    s.add_argument("weight")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("branch", parents=[common], help="decompose an orbit under a subalgebra")
    s.add_argument("algebra")
    s.add_argument("subalgebra")
    s.add_argument("weight")
    s.set_defaults(func=cmd_branch)

    s = sub.add_parser("projmat", parents=[common], help="print a projection matrix")
    s.add_argument("algebra")
    s.add_argument("subalgebra")
    s.set_defaults(func=cmd_projmat)

    s = sub.add_parser("gamma", parents=[common], help="index of a semisimple subalgebra")
    s.add_argument("algebra")
    s.add_argument("subalgebra")
    s.add_argument("weight", nargs="?", help="probe weights separated by ';' (default: a, b, c probes)")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("index", parents=[common], help="second-degree index of an orbit")
    s.add_argument("algebra")
    s.add_argument("weight")
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("verify-catalog", parents=[common], help="branch probe orbits of every catalog pair")
    s.add_argument("--max-rank", type=int, default=8, metavar="N")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("relate", parents=[common],
                       help="matrix P(L>L'') P(L>L')^-1 for an equal-rank L' (not an inclusion)")
    s.add_argument("algebra")
    s.add_argument("subalgebra", help="equal-rank subalgebra L'")
    s.add_argument("other", help="second subalgebra L''")
    s.set_defaults(func=cmd_relate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    args.failed = False
    try:
        params = io.parse_params(args.params)
        text, doc = args.func(args, params)
    except DOMAIN_ERRORS as exc:
        print(f"weylbranch {args.verb}: {exc}", file=sys.stderr)
        return 1
    print(io.dumps(doc) if args.json else text)
    return 1 if args.failed else 0


if __name__ == "__main__":
    sys.exit(main())
