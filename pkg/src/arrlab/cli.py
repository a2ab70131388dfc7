"""Command-line front end: ``arrlab gen | verify | diagnose``.

Exit codes: 0 verified / distinguishable, 1 violation / indistinguishable,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import diagnosis as dg
from . import export, verify
from .errors import InvalidParameters, OutOfScope
from .graph import build


def _common(p: argparse.ArgumentParser, need_nk: bool = True) -> None:
    p.add_argument("--n", type=int, required=need_nk, help="number of symbols")
    p.add_argument("--k", type=int, required=need_nk, help="arrangement length")
    p.add_argument("--out", help="write output here instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write A(n,k) as json, dot, edgelist or text")
    _common(gen)
    gen.add_argument("--format", choices=export.FORMATS, default="json")

    ver = sub.add_parser("verify", help="run one verification campaign")
    ver.add_argument("claim", help=", ".join(verify.CLAIMS))
    _common(ver, need_nk=False)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--trials", type=int, default=None)
    ver.add_argument("--max-fault", type=int, default=None)
    ver.add_argument("--long", action="store_true", help="allow long exhaustive sweeps")

    dia = sub.add_parser("diagnose", help="decide whether two fault sets are distinguishable")
    _common(dia)
    dia.add_argument("f1", help="file with one vertex label per line")
    dia.add_argument("f2", help="file with one vertex label per line")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_gen(args) -> int:
    _emit(export.serialize(build(args.n, args.k), args.format), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.claim not in verify.CLAIMS:
        print(f"arrlab: unknown claim {args.claim!r}; choose from {', '.join(verify.CLAIMS)}",
              file=sys.stderr)
        return 2
    if args.claim == "lemma-4.1-equiv":
        g = build(args.n, args.k) if args.n is not None and args.k is not None else None
    else:
        if args.n is None or args.k is None:
            print(f"arrlab: {args.claim} needs --n and --k", file=sys.stderr)
            return 2
        g = build(args.n, args.k)
    options = {"seed": args.seed}
    if args.trials is not None:
        options["trials"] = args.trials
    if args.max_fault is not None:
        options["max_fault"] = args.max_fault
    if args.long:
        options["long"] = True
    report = verify.run_claim(args.claim, g, **options)
    _emit(_dump(report.to_json()), args.out)
    print(f"arrlab: {args.claim} {'verified' if report.ok else 'VIOLATED'} "
          f"in {report.elapsed:.2f}s", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_diagnose(args) -> int:
    g = build(args.n, args.k)
    f1 = export.read_fault_file(g, args.f1)
    f2 = export.read_fault_file(g, args.f2)
    if f1 == f2:
        print("arrlab: the two fault sets are identical", file=sys.stderr)
        return 2
    result = dg.distinguishable_sd(g, f1, f2)
    _emit(_dump(result.to_json(g, f1, f2)), args.out)
    return 0 if result.distinguishable else 1


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    handler = {"gen": cmd_gen, "verify": cmd_verify, "diagnose": cmd_diagnose}[args.command]
    try:
        return handler(args)
    except (InvalidParameters, OutOfScope, ValueError, OSError) as exc:
        print(f"arrlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
