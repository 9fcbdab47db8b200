"""Command line entry point: ``forge``.

Exit status is 0 when every check passes, 1 on any verification failure
and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import casebook, golay
from .enumeration import vectors_with_norm
from .lattice import Lattice, LatticeError

OK, FAILED, USAGE = 0, 1, 2

CASE_ALIASES = {name.lower(): name for name in casebook.CASES}


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_golay(args) -> int:
    try:
        code = golay.build_golay()
    except golay.GolayError as exc:
        print(f"golay: self-check failed: {exc}", file=sys.stderr)
        return FAILED
    dist = code.weight_distribution()
    octads = dist.get(8, 0)
    print(f"dimension            {code.dimension}")
    print(f"self-dual            {code.is_self_dual()}")
    print(f"weight distribution  {dist}")
    print(f"octads               {octads}")
    ok = code.dimension == 12 and code.is_self_dual() and dist == golay.GOLAY_WEIGHTS
    return OK if ok else FAILED


def cmd_case(args) -> int:
    rep = casebook.run_case(CASE_ALIASES[args.name.lower()], choice=args.choice)
    _write(rep.to_json() if args.json else rep.to_text(), args.out)
    return OK if rep.status == "pass" else FAILED


def cmd_table2(args) -> int:
    reports = casebook.table2(args.workers)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        print(f"{'case':6} {'G':16} {'p':>3} {'h^2':>4} {'det S':>6}  status")
        for r in reports:
            print(f"{r.case:6} {r.group:16} {r.target_p:>3} {r.h2:>4} {str(r.detS):>6}  {r.status}")
        for r in reports:
            for f in r.failures:
                print(f"{r.case}: FAILED {f}")
    triples = [(r.case, r.target_p, r.h2) for r in reports]
    ok = all(r.status == "pass" for r in reports) and triples == casebook.TABLE2
    return OK if ok else FAILED


def cmd_svp(args) -> int:
    try:
        L = Lattice.from_json(Path(args.file).read_text())
        rep = vectors_with_norm(L, args.norm)
    except (OSError, ValueError, KeyError, LatticeError) as exc:
        print(f"svp: {exc}", file=sys.stderr)
        return USAGE
    print(json.dumps({
        "norm": args.norm,
        "status": rep.status,
        "count": 2 * len(rep),
        "vectors": [list(v) for v, _ in rep.vectors],
    }))
    return OK


def cmd_ns_target(args) -> int:
    try:
        t = casebook.ns_target(args.p)
    except ValueError as exc:
        print(f"ns-target: {exc}", file=sys.stderr)
        return USAGE
    if args.out:
        Path(args.out).write_text(t.lattice.to_json() + "\n")
    print(f"p={t.p} sigma={t.sigma} {t.construction}")
    print(f"rank {t.lattice.rank}  det {t.lattice.det()}  signature {t.lattice.signature()}")
    print(f"q_S  {t.fqf}")
    for k, v in t.checks.items():
        print(f"{k:8} {v}")
    ok = t.lattice.det() == -t.p**2 and t.lattice.signature() == (1, 21, 0)
    return OK if ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("golay", help="Golay code checks")
    p.add_argument("action", choices=["verify"])
    p.set_defaults(func=cmd_golay)

    p = sub.add_parser("case", help="run one case of the invariant-lattice construction")
    p.add_argument("name", type=str.lower, choices=sorted(CASE_ALIASES), metavar="{" + "|".join(casebook.CASES) + "}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--choice", type=int, default=0, help="index of the octad/dodecad used for the orbits")
    p.set_defaults(func=cmd_case)

    p = sub.add_parser("table2", help="run all six cases")
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("svp", help="list lattice vectors of a given norm")
    p.add_argument("--norm", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_svp)

    p = sub.add_parser("ns-target", help="Neron-Severi lattice for p in 5, 7, 11")
    p.add_argument("p", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ns_target)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if getattr(args, "norm", None) == 0:
        print("svp: norm must be nonzero", file=sys.stderr)
        return USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
