"""Dovetailed halting bits.

``H(n)`` runs programs ``0..n-1`` for ``n`` steps each and sets bit ``i``
when program ``i`` has reached a final state after at most ``n`` steps.
:func:`advance` extends a previous horizon by resuming the saved
configurations, so producing every ``H(1..N)`` costs no more simulated
steps than a single fresh ``H(N)``.

A finite program list may be given as the universe; its bit string stops at
the end of the list while the horizon keeps growing.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from .codec import machine_from_number, machine_number
from .enumeration import Program, format_word, parse_word, program_of
from .tm import Configuration, Halted, resume, run

__all__ = [
    "EnumeratedPrograms",
    "HaltingBits",
    "Slot",
    "DovetailState",
    "CheckpointError",
    "H",
    "start",
    "advance",
    "h_digit_stream",
    "save_checkpoint",
    "load_checkpoint",
    "read_program_file",
    "CHECKPOINT_VERSION",
]

CHECKPOINT_VERSION = 1


class EnumeratedPrograms:
    """Every program, in the canonical program numbering."""

    def __getitem__(self, index: int) -> Program:
        return program_of(index)

    def __eq__(self, other):
        return isinstance(other, EnumeratedPrograms)

    def __hash__(self):
        return hash(EnumeratedPrograms)


Universe = Union[EnumeratedPrograms, Sequence[Program]]


def _count(universe: Universe, horizon: int) -> int:
    if isinstance(universe, EnumeratedPrograms):
        return horizon
    return min(horizon, len(universe))


@dataclass(frozen=True)
class HaltingBits:
    n: int
    bits: str

    def __str__(self):
        return self.bits


@dataclass(frozen=True)
class Slot:
    """A running program's snapshot, or the step at which it halted."""

    program: Program
    config: Optional[Configuration] = None
    halted_at: Optional[int] = None


@dataclass(frozen=True)
class DovetailState:
    horizon: int
    slots: tuple[Slot, ...]
    steps: int = 0
    universe: Universe = field(default_factory=EnumeratedPrograms, compare=False)
    load_seconds: float = field(default=0.0, compare=False)

    @property
    def bits(self) -> HaltingBits:
        return HaltingBits(
            self.horizon, "".join("0" if s.halted_at is None else "1" for s in self.slots)
        )


def _advance_slot(slot: Slot, horizon: int, delta: int) -> tuple[Slot, int]:
    if slot.halted_at is not None:
        return slot, 0
    machine = slot.program.machine
    if slot.config is None:
        out = run(machine, slot.program.input, horizon)
        used = out.steps
    else:
        before = slot.config.steps
        out = resume(machine, slot.config, delta)
        used = out.steps - before
    if isinstance(out, Halted):
        return Slot(slot.program, None, out.steps), used
    return Slot(slot.program, out.config), used


def start(universe: Optional[Universe] = None) -> DovetailState:
    return DovetailState(0, (), 0, EnumeratedPrograms() if universe is None else universe)


def advance(state: DovetailState, new_horizon: int, workers: int = 1) -> DovetailState:
    """Move ``state`` to ``new_horizon``; the bits equal a fresh ``H(new_horizon)``."""
    if new_horizon <= state.horizon:
        raise ValueError(f"new horizon {new_horizon} must exceed {state.horizon}")
    delta = new_horizon - state.horizon
    t0 = time.perf_counter()
    fresh = [
        Slot(state.universe[i])
        for i in range(len(state.slots), _count(state.universe, new_horizon))
    ]
    load = time.perf_counter() - t0
    slots = list(state.slots) + fresh

    def job(slot: Slot) -> tuple[Slot, int]:
        return _advance_slot(slot, new_horizon, delta)

    if workers > 1 and len(slots) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, slots))
    else:
        results = [job(s) for s in slots]
    return DovetailState(
        new_horizon,
        tuple(s for s, _ in results),
        state.steps + sum(u for _, u in results),
        state.universe,
        state.load_seconds + load,
    )


def H(n: int, universe: Optional[Universe] = None, workers: int = 1) -> HaltingBits:
    """Bit ``i`` is 1 iff program ``i`` halts within ``n`` steps, for ``i < n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return advance(start(universe), n, workers).bits


def h_digit_stream(n: int, universe: Optional[Universe] = None) -> str:
    """Binary digits ``d_1..d_n`` of the horizon-``n`` approximation of h."""
    return H(n, universe).bits


def read_program_file(path: Union[str, Path]) -> list[Program]:
    """Parse ``machine_number<TAB>input_word`` lines; the input word may be omitted."""
    programs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        number, _, word = line.partition("\t")
        try:
            programs.append(Program(machine_from_number(number.strip()), parse_word(word)))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return programs


class CheckpointError(ValueError):
    pass


def _program_json(p: Program) -> list:
    return [machine_number(p.machine), format_word(p.input)]


def save_checkpoint(state: DovetailState, path: Union[str, Path]) -> None:
    slots = []
    for s in state.slots:
        if s.halted_at is not None:
            slots.append({"halted_at": s.halted_at})
        else:
            c = s.config
            slots.append(
                {"state": c.state, "head": c.head, "steps": c.steps, "tape": [list(x) for x in c.tape]}
            )
    payload = {
        "format": "tmbench-dovetail",
        "version": CHECKPOINT_VERSION,
        "horizon": state.horizon,
        "steps": state.steps,
        "slots": slots,
    }
    if isinstance(state.universe, EnumeratedPrograms):
        payload["universe"] = "enumerated"
    else:
        payload["universe"] = [_program_json(p) for p in state.universe]
    Path(path).write_text(json.dumps(payload, separators=(",", ":")) + "\n")


def load_checkpoint(path: Union[str, Path]) -> DovetailState:
    data = json.loads(Path(path).read_text())
    if data.get("format") != "tmbench-dovetail":
        raise CheckpointError(f"CheckpointError: {path} is not a dovetail checkpoint")
    if data.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"CheckpointError: unsupported checkpoint version {data.get('version')}")
    if data["universe"] == "enumerated":
        universe: Universe = EnumeratedPrograms()
    else:
        universe = [Program(machine_from_number(num), parse_word(w)) for num, w in data["universe"]]
    slots = []
    for i, raw in enumerate(data["slots"]):
        program = universe[i]
        if "halted_at" in raw:
            slots.append(Slot(program, None, raw["halted_at"]))
        else:
            tape = tuple((c, s) for c, s in raw["tape"])
            slots.append(Slot(program, Configuration(raw["state"], tape, raw["head"], raw["steps"])))
    return DovetailState(data["horizon"], tuple(slots), data["steps"], universe)
