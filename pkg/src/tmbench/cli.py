"""Command-line entry point.

Exit status: 0 on success, 1 for domain errors and failed verdicts, 2 for
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import approx, codec, dovetail, enumeration, experiments, samples
from .approx import FuelPolicy
from .enumeration import format_word, parse_word
from .tm import Machine, TMError, Transition, read_output, run

DEFAULT_FUEL = 10_000


class _Fail(Exception):
    """Verdict failure; the report is already on stdout."""


def _machine_from_args(args) -> Machine:
    if getattr(args, "sample", None):
        return samples.SAMPLES[args.sample]()
    if getattr(args, "encoding", None):
        return codec.decode(args.encoding)
    number = getattr(args, "machine_number", None) or getattr(args, "machine", None)
    if number:
        return codec.machine_from_number(number)
    if getattr(args, "machine_file", None):
        return _load_machine_file(args.machine_file)
    raise argparse.ArgumentTypeError("no machine given")


def _load_machine_file(path: str) -> Machine:
    """JSON ``{"n", "k", "m", "delta": [[p, a, q, b, "L"|"R"|0|1], ...], "finals"}``."""
    raw = json.loads(Path(path).read_text())
    delta = [_transition(t) for t in raw["delta"]]
    return codec.make_machine(raw["n"], raw["k"], raw["m"], delta, raw["finals"])


def _transition(t) -> Transition:
    p, a, q, b, x = t
    return Transition(p, a, q, b, {"L": 0, "R": 1}.get(x, x))


def describe(machine: Machine) -> str:
    lines = [
        f"states\t{machine.n}",
        f"input_symbols\t{machine.k}",
        f"tape_symbols\t{machine.m}",
        f"blank\t{machine.blank}",
        f"finals\t{','.join(map(str, machine.finals))}",
    ]
    for t in machine.delta:
        lines.append(f"delta\t({t.from_state},{t.read}) -> ({t.to_state},{t.write},{t.move.name})")
    lines.append(f"number\t{codec.machine_number(machine)}")
    return "\n".join(lines)


def _add_machine_options(p: argparse.ArgumentParser, number_flag: str = "--machine-number") -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument(number_flag, dest=number_flag.lstrip("-").replace("-", "_"), help="base-5 machine number")
    g.add_argument("--encoding", help="encoding string over 0 1 ( ) ,")
    g.add_argument("--machine-file", help="JSON machine description")
    g.add_argument("--sample", choices=sorted(samples.SAMPLES), help="built-in sample machine")


def cmd_encode(args) -> None:
    print(codec.encode(_machine_from_args(args)))


def cmd_decode(args) -> None:
    print(describe(codec.decode(args.text)))


def cmd_number(args) -> None:
    print(codec.to_number(args.text))


def cmd_unnumber(args) -> None:
    print(codec.from_number(args.digits))


def cmd_validate(args) -> None:
    if args.text is not None:
        try:
            codec.decode(args.text)
        except codec.SemanticError as exc:
            for rule, detail in exc.report.violations:
                print(f"{rule}\t{detail}")
            raise _Fail("invalid")
        print("valid")
        return
    raw = json.loads(Path(args.machine_file).read_text())
    # no canonical re-sorting here: ordering mistakes must be reported
    delta = [_transition(t) for t in raw["delta"]]
    machine = Machine(raw["n"], raw["k"], raw["m"], tuple(delta), tuple(raw["finals"]))
    report = codec.validate(machine)
    if not report.ok:
        for rule, detail in report.violations:
            print(f"{rule}\t{detail}")
        raise _Fail("invalid")
    print("valid")


def cmd_enumerate(args) -> None:
    if args.programs:
        for i in range(args.limit):
            prog = enumeration.program_of(i)
            print(f"{i}\t{codec.machine_number(prog.machine)}\t{format_word(prog.input)}")
        return
    number = args.after
    for _ in range(args.limit):
        number = enumeration.next_valid_number(number)
        print(number)


def cmd_run(args) -> None:
    machine = _machine_from_args(args)
    outcome = run(machine, parse_word(args.input), args.fuel)
    print(f"{'HALTED' if outcome.halted else 'OUT_OF_FUEL'} steps={outcome.steps}")
    if args.base:
        print(f"output\t{read_output(outcome.config, args.base)}")


def cmd_dovetail(args) -> None:
    if args.checkpoint_in:
        state = dovetail.load_checkpoint(args.checkpoint_in)
    else:
        universe = dovetail.read_program_file(args.programs) if args.programs else None
        state = dovetail.start(universe)
    for n in range(state.horizon + 1, args.horizon + 1):
        state = dovetail.advance(state, n, args.workers)
        print(f"{n}\t{state.bits.bits}")
    if args.checkpoint_out:
        dovetail.save_checkpoint(state, args.checkpoint_out)
    if args.stats:
        print(f"simulated_steps\t{state.steps}", file=sys.stderr)
        print(f"program_load_seconds\t{state.load_seconds:.3f}", file=sys.stderr)


def _read_streams(path: str, base: int) -> list[approx.DigitStream]:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    return [approx.DigitStream.from_string(ln, base) for ln in lines]


def cmd_diagonal(args) -> None:
    streams = _read_streams(args.streams, args.base)
    if args.prime:
        print(approx.diagonal_prime(streams, args.n))
    else:
        print(approx.diagonal(streams, args.n, args.base))


def cmd_approx(args) -> None:
    if args.mode == "diagonal":
        if args.streams is None or args.n is None:
            raise _Usage("approx diagonal needs --streams and --n")
        return cmd_diagonal(args)
    if not (args.machine or args.sample or args.encoding):
        raise _Usage(f"approx {args.mode} needs --machine, --encoding or --sample")
    if args.horizon is None:
        raise _Usage(f"approx {args.mode} needs --horizon")
    machine = _machine_from_args(args)
    fuel = FuelPolicy(args.fuel_base, args.fuel_per_n2)
    if args.mode == "check-computable":
        reference = None
        if args.reference:
            text = Path(args.reference).read_text().split()
            reference = approx.DigitStream.from_string(text[0] if text else "", args.base)
        report = approx.check_computable(machine, args.base, args.horizon, reference, fuel)
    else:
        report = approx.check_approaching(
            machine, args.base, args.m, args.horizon, fuel, min_window=args.min_window
        )
    for line in report.lines():
        print(line)
    print(f"verdict\t{report.verdict}")
    if not report.passed:
        raise _Fail(str(report.verdict))


def cmd_experiment(args) -> None:
    params = experiments.read_config(args.config)
    for key, value in args.set or ():
        params[key] = value
    result = experiments.run_experiment(params)
    text = "\n".join(result.lines()) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    sys.stdout.write(text)
    if not result.passed:
        raise _Fail("experiment failed")


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tmbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("encode", help="print the encoding string of a machine")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--machine-file", help="JSON machine description")
    g.add_argument("--sample", choices=sorted(samples.SAMPLES))
    g.add_argument("--machine-number")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="parse an encoding string and describe the machine")
    p.add_argument("text")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("number", help="encoding string -> base-5 machine number")
    p.add_argument("text")
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("unnumber", help="base-5 machine number -> encoding string")
    p.add_argument("digits")
    p.set_defaults(func=cmd_unnumber)

    p = sub.add_parser("validate", help="list violated machine rules")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("text", nargs="?")
    g.add_argument("--machine-file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="list valid machine numbers (or programs) in order")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--after", help="start strictly after this machine number")
    p.add_argument("--programs", action="store_true", help="list index<TAB>machine_number<TAB>input_word")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("run", help="simulate a machine with a step budget")
    _add_machine_options(p)
    p.add_argument("--input", default="", help="input word, one base-36 digit per symbol")
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help=f"step budget (default {DEFAULT_FUEL})")
    p.add_argument("--base", type=int, help="also print the output digits in this base")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("dovetail", help="print n<TAB>H(n) for each horizon up to N")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--programs", help="file of machine_number<TAB>input_word lines")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint-in")
    p.add_argument("--checkpoint-out")
    p.add_argument("--stats", action="store_true", help="report step counter on stderr")
    p.set_defaults(func=cmd_dovetail)

    fuel_default = FuelPolicy()
    p = sub.add_parser("approx", help="finite-horizon computability/approachability checks")
    p.add_argument("mode", choices=["check-computable", "check-approaching", "diagonal"])
    g = p.add_mutually_exclusive_group()
    g.add_argument("--machine", help="base-5 machine number")
    g.add_argument("--encoding")
    g.add_argument("--sample", choices=sorted(samples.SAMPLES))
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--horizon", type=int)
    p.add_argument("--m", type=int, default=1, help="digits that must stabilise (check-approaching)")
    p.add_argument("--min-window", type=int, default=2)
    p.add_argument("--reference", help="file holding the reference digit string")
    p.add_argument("--fuel-base", type=int, default=fuel_default.base,
                   help=f"fuel per run is BASE + PER_N2*n^2 (default {fuel_default.base})")
    p.add_argument("--fuel-per-n2", type=int, default=fuel_default.per_n2,
                   help=f"(default {fuel_default.per_n2})")
    p.add_argument("--streams", help="diagonal: one digit string per line")
    p.add_argument("--n", type=int, help="diagonal: number of digits")
    p.add_argument("--prime", action="store_true", help="diagonal: copy digits instead of shifting")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("diagonal", help="diagonal of a list of digit streams")
    p.add_argument("--streams", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--prime", action="store_true")
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("experiment", help="run a named experiment from a key<TAB>value config")
    p.add_argument("config")
    p.add_argument("--report", help="also write the report here")
    p.add_argument("--set", nargs=2, action="append", metavar=("KEY", "VALUE"))
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"tmbench: error: {exc}", file=sys.stderr)
        return 2
    except _Fail:
        return 1
    except (
        codec.CodecError,
        TMError,
        approx.InsufficientDigits,
        approx.NotHalting,
        enumeration.RankOutOfRange,
        experiments.UnknownExperiment,
        dovetail.CheckpointError,
        ValueError,
        OSError,
    ) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
