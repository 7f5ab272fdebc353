"""Deterministic single-tape Turing machines.

States are numbered ``0..n-1`` with 0 the initial state; tape symbols are
numbered ``0..m-1`` with ``m-1`` the blank; input symbols are ``0..k-1``.
The tape is two-way infinite and stored sparsely (absent cells are blank).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Mapping, Sequence, Union

__all__ = [
    "Move",
    "Transition",
    "Machine",
    "Configuration",
    "Halted",
    "OutOfFuel",
    "Outcome",
    "TMError",
    "InvalidInputSymbol",
    "AlreadyHalted",
    "make_config",
    "initial_config",
    "step",
    "run",
    "resume",
    "read_output",
    "DIGITS",
]

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class TMError(Exception):
    pass


class InvalidInputSymbol(TMError, ValueError):
    def __init__(self, position: int, symbol: int, k: int):
        super().__init__(
            f"InvalidInputSymbol: input symbol {symbol} at position {position} is not < k={k}"
        )
        self.position = position
        self.symbol = symbol


class AlreadyHalted(TMError):
    def __init__(self, state: int):
        super().__init__(f"AlreadyHalted: configuration is in final state {state}")
        self.state = state


class Move(IntEnum):
    L = 0
    R = 1

    @property
    def delta(self) -> int:
        return 1 if self is Move.R else -1


@dataclass(frozen=True)
class Transition:
    """``(from_state, read) -> (to_state, write, move)``."""

    from_state: int
    read: int
    to_state: int
    write: int
    move: Move

    def __post_init__(self):
        if not isinstance(self.move, Move):
            object.__setattr__(self, "move", Move(self.move))

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.from_state, self.read, self.to_state, self.write, int(self.move))


@dataclass(frozen=True)
class Machine:
    """The 5-tuple ``(Q, Gamma, Sigma, delta, F)`` in numbered form.

    Construction does not validate; see :func:`tmbench.codec.validate` and
    :func:`tmbench.codec.make_machine`.
    """

    n: int
    k: int
    m: int
    delta: tuple[Transition, ...]
    finals: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(self.delta))
        object.__setattr__(self, "finals", tuple(self.finals))

    @property
    def blank(self) -> int:
        return self.m - 1

    @cached_property
    def final_set(self) -> frozenset[int]:
        return frozenset(self.finals)

    @cached_property
    def table(self) -> dict[tuple[int, int], tuple[int, int, int]]:
        # first transition wins on duplicates; valid machines have none
        out: dict[tuple[int, int], tuple[int, int, int]] = {}
        for t in reversed(self.delta):
            out[(t.from_state, t.read)] = (t.to_state, t.write, t.move.delta)
        return out


@dataclass(frozen=True)
class Configuration:
    """Immutable simulation snapshot.

    ``tape`` holds ``(cell, symbol)`` pairs sorted by cell, with blanks
    never stored; build instances with :func:`make_config` to get that
    normalization.
    """

    state: int
    tape: tuple[tuple[int, int], ...]
    head: int
    steps: int = 0

    @property
    def cells(self) -> dict[int, int]:
        return dict(self.tape)

    def symbol_at(self, cell: int, blank: int) -> int:
        for c, s in self.tape:
            if c == cell:
                return s
        return blank


@dataclass(frozen=True)
class Halted:
    config: Configuration

    halted = True

    @property
    def steps(self) -> int:
        return self.config.steps


@dataclass(frozen=True)
class OutOfFuel:
    config: Configuration

    halted = False

    @property
    def steps(self) -> int:
        return self.config.steps


Outcome = Union[Halted, OutOfFuel]


def _freeze_tape(tape: Mapping[int, int], blank: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((c, s) for c, s in tape.items() if s != blank))


def make_config(
    machine: Machine, state: int, tape: Mapping[int, int], head: int, steps: int = 0
) -> Configuration:
    for cell, sym in tape.items():
        if not 0 <= sym < machine.m:
            raise TMError(f"symbol {sym} at cell {cell} is outside 0..{machine.m - 1}")
    if not 0 <= state < machine.n:
        raise TMError(f"state {state} is outside 0..{machine.n - 1}")
    return Configuration(state, _freeze_tape(tape, machine.blank), head, steps)


def initial_config(machine: Machine, input: Sequence[int] = ()) -> Configuration:
    for i, sym in enumerate(input):
        if not 0 <= sym < machine.k:
            raise InvalidInputSymbol(i, sym, machine.k)
    return make_config(machine, 0, dict(enumerate(input)), head=0)


def step(machine: Machine, config: Configuration) -> Configuration:
    """Apply the single transition for the current state and scanned symbol.

    Raises :class:`AlreadyHalted` if the configuration is final.
    """
    if config.state in machine.final_set:
        raise AlreadyHalted(config.state)
    tape = config.cells
    q, b, d = machine.table[(config.state, tape.get(config.head, machine.blank))]
    tape[config.head] = b
    return Configuration(q, _freeze_tape(tape, machine.blank), config.head + d, config.steps + 1)


def _simulate(machine: Machine, config: Configuration, fuel: int) -> Outcome:
    finals = machine.final_set
    table = machine.table
    blank = machine.blank
    tape = config.cells
    state, head, steps = config.state, config.head, config.steps
    limit = steps + fuel
    while state not in finals and steps < limit:
        state, b, d = table[(state, tape.get(head, blank))]
        if b == blank:
            tape.pop(head, None)
        else:
            tape[head] = b
        head += d
        steps += 1
    final = Configuration(state, tuple(sorted(tape.items())), head, steps)
    return Halted(final) if state in finals else OutOfFuel(final)


def run(machine: Machine, input: Sequence[int], fuel: int) -> Outcome:
    """Run from the initial configuration for at most ``fuel`` transitions."""
    if fuel < 1:
        raise ValueError("fuel must be positive")
    return _simulate(machine, initial_config(machine, input), fuel)


def resume(machine: Machine, config: Configuration, extra_fuel: int) -> Outcome:
    """Continue a snapshot for at most ``extra_fuel`` more transitions."""
    if extra_fuel < 1:
        raise ValueError("extra_fuel must be positive")
    if config.state in machine.final_set:
        raise AlreadyHalted(config.state)
    return _simulate(machine, config, extra_fuel)


def read_output(config: Configuration, base: int) -> str:
    """Read the printed digit string.

    Starts at the leftmost non-blank cell and takes the maximal run of
    consecutive cells holding numeral symbols (value < ``base``).
    """
    if not 2 <= base <= len(DIGITS):
        raise ValueError(f"base must be in 2..{len(DIGITS)}")
    out: list[str] = []
    expected = None
    for cell, sym in config.tape:
        if expected is not None and cell != expected:
            break
        if sym >= base:
            break
        out.append(DIGITS[sym])
        expected = cell + 1
    return "".join(out)
