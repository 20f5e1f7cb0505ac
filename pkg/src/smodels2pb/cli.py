"""Command line driver.

Exit codes:

    0   success
    2   bad usage
    3   smodels input could not be parsed
    4   disjunctive program is not head-cycle-free
    5   recursion over aggregates
    6   translation record missing or malformed
    7   solver output malformed or contradictory
    8   --verify found the answer is not a stable model
    9   external solver could not be run
    10  oracle size cap exceeded
"""

from __future__ import annotations

import argparse
import logging
import os
import shlex
import subprocess
import sys
import tempfile
from pathlib import Path

from . import __version__
from .mapping import RecordError, TranslationRecord, check_stable, decode_objective, to_answer_set, true_original_atoms
from .opb import SolverOutputError, parse_solver_output, read_opb, write_opb
from .program import RecursiveAggregateError
from .smodels import SmodelsParseError, parse_program, write_program
from .transform import NotHeadCycleFree
from .translate import translate

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_NOT_HCF = 4
EXIT_RECURSIVE = 5
EXIT_RECORD = 6
EXIT_SOLVER_OUTPUT = 7
EXIT_VERIFY_FAIL = 8
EXIT_SOLVER = 9
EXIT_CAP = 10

log = logging.getLogger("smodels2pb")


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_program(path: str):
    try:
        return parse_program(_read_input(path))
    except SmodelsParseError as e:
        raise CLIError(EXIT_PARSE, f"parse error: {e}")


def _load_record(path):
    if path is None:
        raise CLIError(EXIT_RECORD, "no translation record given (use --record)")
    try:
        return TranslationRecord.load(path)
    except FileNotFoundError:
        raise CLIError(EXIT_RECORD, f"translation record {path} not found")
    except RecordError as e:
        raise CLIError(EXIT_RECORD, f"bad translation record {path}: {e}")


def _report(text: str, rec: TranslationRecord, program=None, verify=False, show_unnamed=False, out=sys.stdout) -> int:
    try:
        result = parse_solver_output(text)
    except (SolverOutputError, ValueError) as e:
        raise CLIError(EXIT_SOLVER_OUTPUT, f"bad solver output: {e}")
    print(result.status, file=out)
    if result.assignment is None:
        return EXIT_OK
    try:
        names = to_answer_set(result, rec, show_unnamed=show_unnamed)
        atoms = true_original_atoms(result, rec)
    except ValueError as e:
        raise CLIError(EXIT_SOLVER_OUTPUT, str(e))
    print("Answer: " + " ".join(sorted(names)), file=out)
    if rec.levels and result.best_value is not None:
        try:
            values = decode_objective(result.best_value, rec)
        except ValueError as e:
            raise CLIError(EXIT_SOLVER_OUTPUT, str(e))
        print("Optimization: " + " ".join(str(v) for _, v in values), file=out)
    if verify:
        if program is None:
            raise CLIError(2, "--verify needs the original program (--program)")
        ok = check_stable(program, atoms)
        print("Verify: " + ("PASS" if ok else "FAIL"), file=out)
        if not ok:
            return EXIT_VERIFY_FAIL
    return EXIT_OK


def cmd_translate(args) -> int:
    program = _load_program(args.input)
    try:
        tr = translate(program, min_order=args.min_order, negated_literals=args.opb_negated_literals)
    except NotHeadCycleFree as e:
        raise CLIError(EXIT_NOT_HCF, str(e))
    except RecursiveAggregateError as e:
        raise CLIError(EXIT_RECURSIVE, str(e))
    opb = write_opb(tr.theory, tr.objective)

    record_path = args.record
    if record_path is None and args.out:
        record_path = args.out + ".rec"
    if args.out:
        Path(args.out).write_text(opb)
    elif not args.solve:
        sys.stdout.write(opb)
    if record_path:
        Path(record_path).write_text(tr.record.dumps())
    elif not args.solve:
        log.warning("no --record given; the translation record was not written")

    if not args.solve:
        return EXIT_OK
    with tempfile.TemporaryDirectory() as tmp:
        path = args.out or os.path.join(tmp, "theory.opb")
        if not args.out:
            Path(path).write_text(opb)
        cmd = shlex.split(args.solve) + [path]
        try:
            proc = subprocess.run(cmd, capture_output=True, text=True)
        except OSError as e:
            raise CLIError(EXIT_SOLVER, f"could not run solver {cmd[0]!r}: {e}")
    return _report(proc.stdout, tr.record, program, args.verify)


def cmd_map_answer(args) -> int:
    rec = _load_record(args.record)
    text = _read_input(args.input).decode("utf-8", errors="replace")
    program = _load_program(args.program) if args.program else None
    return _report(text, rec, program, args.verify, args.show_unnamed)


def _parse_params(text: str):
    params = {}
    for part in filter(None, (text or "").split(",")):
        k, sep, v = part.partition("=")
        if not sep:
            raise CLIError(2, f"bad parameter {part!r}; expected name=value")
        params[k.strip()] = int(v)
    return params


def cmd_benchgen(args) -> int:
    from .benchgen import FAMILIES, scaled

    params = _parse_params(args.params)
    if args.steps > 1 and not args.scale:
        raise CLIError(2, "--steps needs --scale to name the parameter that grows")
    try:
        if args.steps <= 1:
            instances = [(params, FAMILIES[args.family](**params))]
        else:
            instances = list(scaled(args.family, params, args.steps, args.stride, args.scale))
    except (TypeError, ValueError, KeyError) as e:
        raise CLIError(2, f"bad parameters for {args.family}: {e}")
    for k, (p, prog) in enumerate(instances):
        text = write_program(prog)
        if not args.out:
            sys.stdout.write(text)
            continue
        out = Path(args.out)
        if len(instances) > 1:
            out = out.with_name(f"{out.stem}-{k}{out.suffix}")
        out.write_text(text)
        log.info("wrote %s (%s)", out, ", ".join(f"{a}={b}" for a, b in p.items()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import OracleCapExceeded, enumerate_pb_models, enumerate_stable

    try:
        if args.kind == "stable":
            models = enumerate_stable(_load_program(args.input), cap=args.max_oracle_atoms)
        else:
            theory, objective = read_opb(_read_input(args.input))
            models = enumerate_pb_models(theory, objective, cap=args.max_oracle_atoms)
    except OracleCapExceeded as e:
        raise CLIError(EXIT_CAP, str(e))
    for m in models:
        print(" ".join(map(str, sorted(m))))
    print(f"% {len(models)} model(s)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smodels2pb", description="Translate smodels-format ground programs into OPB.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, metavar="{translate,map-answer,benchgen}")

    t = sub.add_parser("translate", help="translate a ground program into an OPB file plus record")
    t.add_argument("input", nargs="?", default="-", help="smodels file (default: standard input)")
    t.add_argument("--out", help="OPB output file (default: standard output)")
    t.add_argument("--record", help="translation record file (default: OUT.rec when --out is given)")
    t.add_argument("--min-order", choices=("first", "last"), default="last",
                   help="which minimize statement is most significant (default: last)")
    t.add_argument("--opb-negated-literals", action="store_true", help="write ~x literals instead of rewriting them")
    t.add_argument("--solve", metavar="CMD", help="run CMD on the OPB file and map its answer back")
    t.add_argument("--verify", action="store_true", help="with --solve: check the answer is a stable model")
    t.set_defaults(func=cmd_translate)

    m = sub.add_parser("map-answer", help="map PB solver output back to an answer set")
    m.add_argument("input", nargs="?", default="-", help="solver output (default: standard input)")
    m.add_argument("--record", required=False, help="translation record written by 'translate'")
    m.add_argument("--program", help="original smodels program (needed for --verify)")
    m.add_argument("--verify", action="store_true", help="check the answer is a stable model")
    m.add_argument("--show-unnamed", action="store_true", help="also list true atoms without a name, by id")
    m.set_defaults(func=cmd_map_answer)

    b = sub.add_parser("benchgen", help="generate a benchmark instance in smodels format")
    b.add_argument("family", choices=("pigeonhole", "even-colouring", "vertex-cover", "dominating-set"))
    b.add_argument("--params", default="", help="comma separated name=value, e.g. n=5,m=4")
    b.add_argument("--out", help="output file (default: standard output)")
    b.add_argument("--steps", type=int, default=1, help="number of instances in a linearly growing series")
    b.add_argument("--stride", type=int, default=1, help="growth of the scaled parameter per step")
    b.add_argument("--scale", help="parameter that grows along the series")
    b.set_defaults(func=cmd_benchgen)

    o = sub.add_parser("oracle", help=argparse.SUPPRESS)
    o.add_argument("kind", choices=("stable", "pb"))
    o.add_argument("input", nargs="?", default="-")
    o.add_argument("--max-oracle-atoms", type=int, default=20)
    o.set_defaults(func=cmd_oracle)
    # argparse before 3.11 still lists suppressed subcommands
    sub._choices_actions = [a for a in sub._choices_actions if a.help is not argparse.SUPPRESS]
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except CLIError as e:
        print(f"smodels2pb: {e}", file=sys.stderr)
        return e.code
    except OSError as e:
        print(f"smodels2pb: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
