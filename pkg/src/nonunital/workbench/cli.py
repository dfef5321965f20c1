"""Command-line entry point: ``check``, ``gen`` and ``oracle``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import AxiomError, BudgetExceeded
from ..local_units import DEFAULT_BUDGET
from .generate import BASES, KINDS, generate
from .instance import InstanceError, canonical_json, dump_instance, load_instance
from .panels import EXIT_BUDGET, EXIT_INPUT, EXIT_VIOLATED, PANELS, run


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not "infeasible" (argparse's default 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="nonunital", description="Exact checks for rings without units "
                                 "and corings without counits over prime fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="run a panel on an instance file")
    chk.add_argument("file")
    chk.add_argument("--panel", required=True, help=f"one of: {', '.join(sorted(PANELS))}")
    chk.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    chk.add_argument("--side", choices=("left", "right", "both"), default=None)
    chk.add_argument("--target", default=None, help="structure name (default: the first of the needed kind)")
    chk.add_argument("--json-out", default=None)

    gen = sub.add_parser("gen", help="print a seeded random instance")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--p", type=int, default=2)
    gen.add_argument("--variant", default=None, help="construction for dual_pair or coring")
    gen.add_argument("--base", choices=BASES, default=None, help="algebra of generated projective modules")
    gen.add_argument("-o", "--output", default=None)

    orc = sub.add_parser("oracle", help="cross-validate the solvers against brute-force enumeration")
    orc.add_argument("file")
    orc.add_argument("--exhaustive", action="store_true", help="enumerate without a budget cap")
    orc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return ap


def _load(path, validate=True):
    try:
        return load_instance(path, validate=validate), None
    except InstanceError as exc:
        code = EXIT_VIOLATED if exc.kind == "axiom" else EXIT_INPUT
        return None, (code, str(exc))


def _check(args) -> int:
    if args.panel not in PANELS:
        print(f"error: unknown panel {args.panel!r}; available: {', '.join(sorted(PANELS))}", file=sys.stderr)
        return EXIT_INPUT
    inst, err = _load(args.file, validate=args.panel != "laws")
    if err:
        print(f"error: {err[1]}", file=sys.stderr)
        return err[0]
    res = run(args.panel, inst, budget=args.budget, side=args.side, target=args.target)
    print(res)
    if res.fragment is not None:
        print(dump_instance(res.fragment), end="")
    if args.json_out:
        Path(args.json_out).write_text(canonical_json(res.to_dict()), encoding="utf-8")
    return res.exit_code


def _gen(args) -> int:
    try:
        inst = generate(args.kind, args.seed, args.dim, args.p, args.variant, args.base)
    except (ValueError, AxiomError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dump_instance(inst)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return 0


def _oracle(args) -> int:
    inst, err = _load(args.file)
    if err:
        print(f"error: {err[1]}", file=sys.stderr)
        return err[0]
    budget = 2 ** 62 if args.exhaustive else args.budget
    res = run("oracle", inst, budget=budget)
    print(res)
    return res.exit_code


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return {"check": _check, "gen": _gen, "oracle": _oracle}[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
