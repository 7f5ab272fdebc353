"""Finite-horizon checks for computable and approachable reals, plus diagonals.

A machine is asked for ``x`` by writing an integer ``n`` on its tape and
reading the printed digit string once it halts. Digits are 1-based. A real
``x`` in [0, 1] is identified with its digit sequence, never with its value,
so ``0.0999...`` and ``0.1`` are different streams here.

Nothing here can prove membership in either class; verdicts are relative to
the horizon and the fuel, except :class:`ViolatesAt` which is definitive
for the observed run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .tm import DIGITS, Machine, read_output, run

__all__ = [
    "DigitStream",
    "InsufficientDigits",
    "NotHalting",
    "FuelPolicy",
    "Observation",
    "ConformsUpTo",
    "ViolatesAt",
    "Inconclusive",
    "ApproxReport",
    "integer_input",
    "check_computable",
    "check_approaching",
    "diagonal",
    "diagonal_prime",
    "stream_of_machine",
]


class InsufficientDigits(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"InsufficientDigits: {detail}")


class NotHalting(RuntimeError):
    def __init__(self, n: int, fuel: int):
        super().__init__(f"NotHalting: input {n} did not halt within {fuel} steps")
        self.n = n
        self.fuel = fuel


@dataclass(frozen=True)
class DigitStream:
    """Digits ``d_1, d_2, ...`` of a real in base ``base``.

    ``available`` is the number of defined positions, ``None`` for unbounded.
    """

    base: int
    digit_fn: Callable[[int], int] = field(repr=False, compare=False)
    available: Optional[int] = None

    @classmethod
    def from_string(cls, text: str, base: int) -> "DigitStream":
        values = [int(c, 36) for c in text.strip()]
        for i, v in enumerate(values, 1):
            if v >= base:
                raise ValueError(f"digit {text[i - 1]!r} at position {i} is not < base {base}")
        return cls(base, lambda i: values[i - 1], len(values))

    @classmethod
    def constant(cls, digit: int, base: int) -> "DigitStream":
        if not 0 <= digit < base:
            raise ValueError("digit out of range")
        return cls(base, lambda i: digit, None)

    def digit(self, i: int) -> int:
        if i < 1 or (self.available is not None and i > self.available):
            raise InsufficientDigits(f"position {i} is not available (have {self.available})")
        return self.digit_fn(i)

    def prefix(self, n: int) -> str:
        return "".join(DIGITS[self.digit(i)] for i in range(1, n + 1))


@dataclass(frozen=True)
class FuelPolicy:
    """Per-run step budget ``base + per_n2 * n**2``."""

    base: int = 10_000
    per_n2: int = 100

    def __call__(self, n: int) -> int:
        return self.base + self.per_n2 * n * n


@dataclass(frozen=True)
class Observation:
    n: int
    status: str  # "halted" or "out-of-fuel"
    output: str
    steps: int


@dataclass(frozen=True)
class ConformsUpTo:
    n: int
    witness: Optional[int] = None

    def __str__(self):
        w = "" if self.witness is None else f" witness k={self.witness}"
        return f"ConformsUpTo({self.n}){w}"


@dataclass(frozen=True)
class ViolatesAt:
    n: int
    detail: str

    def __str__(self):
        return f"ViolatesAt({self.n}, {self.detail!r})"


@dataclass(frozen=True)
class Inconclusive:
    horizon: int

    def __str__(self):
        return f"Inconclusive({self.horizon})"


Verdict = Union[ConformsUpTo, ViolatesAt, Inconclusive]


@dataclass
class ApproxReport:
    verdict: Verdict
    transcript: list[Observation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return isinstance(self.verdict, ConformsUpTo)

    def lines(self) -> list[str]:
        return [f"{o.n}\t{o.status}\t{o.output}" for o in self.transcript]


def integer_input(n: int, k: int) -> tuple[int, ...]:
    """Tape word for argument ``n``.

    Base ``min(k, 10)`` numeral, most significant digit first, for ``k >= 2``;
    ``n`` copies of symbol 0 for ``k == 1``; the empty word for ``k == 0``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if k == 0:
        return ()
    if k == 1:
        return (0,) * n
    base = min(k, 10)
    digits = []
    while True:
        n, r = divmod(n, base)
        digits.append(r)
        if not n:
            break
    return tuple(reversed(digits))


def _observe(machine: Machine, base: int, n: int, fuel: FuelPolicy) -> Observation:
    out = run(machine, integer_input(n, machine.k), fuel(n))
    if not out.halted:
        return Observation(n, "out-of-fuel", "", out.steps)
    return Observation(n, "halted", read_output(out.config, base), out.steps)


def _check_base(machine: Machine, base: int) -> None:
    # a machine with fewer than `base` non-blank symbols just cannot print the missing numerals
    if not 2 <= base <= len(DIGITS):
        raise ValueError(f"base must be in 2..{len(DIGITS)}")


def check_computable(
    machine: Machine,
    base: int,
    max_n: int,
    reference: Optional[DigitStream] = None,
    fuel: FuelPolicy = FuelPolicy(),
) -> ApproxReport:
    """Check that input ``n`` halts with at least ``n`` digits, consistently, for ``n <= max_n``.

    Every printed digit is taken as a claim about ``x``; outputs must agree
    wherever they overlap, and with ``reference`` where it is available.
    """
    _check_base(machine, base)
    report = ApproxReport(ConformsUpTo(max_n))
    known = ""
    for n in range(1, max_n + 1):
        obs = _observe(machine, base, n, fuel)
        report.transcript.append(obs)
        if obs.status != "halted":
            report.verdict = ViolatesAt(n, "did not halt within fuel")
            return report
        out = obs.output
        if len(out) < n:
            report.verdict = ViolatesAt(n, f"printed {len(out)} digits, expected at least {n}")
            return report
        common = min(len(known), len(out))
        if out[:common] != known[:common]:
            at = next(i for i in range(common) if out[i] != known[i]) + 1
            report.verdict = ViolatesAt(n, f"prefix mismatch at digit {at}")
            return report
        if reference is not None:
            upto = len(out) if reference.available is None else min(len(out), reference.available)
            ref = reference.prefix(upto)
            if out[:upto] != ref:
                at = next(i for i in range(upto) if out[i] != ref[i]) + 1
                report.verdict = ViolatesAt(n, f"reference mismatch at digit {at}")
                return report
        if len(out) > len(known):
            known = out
    return report


def check_approaching(
    machine: Machine,
    base: int,
    m: int,
    horizon: int,
    fuel: FuelPolicy = FuelPolicy(),
    min_window: int = 2,
) -> ApproxReport:
    """Look for the smallest ``k >= m`` whose window ``k..horizon`` agrees on ``m`` digits.

    The window must hold at least ``min_window`` inputs; a single run always
    agrees with itself and proves nothing.
    """
    _check_base(machine, base)
    if m < 1 or horizon < m:
        raise ValueError("need 1 <= m <= horizon")
    report = ApproxReport(Inconclusive(horizon))
    for n in range(1, horizon + 1):
        obs = _observe(machine, base, n, fuel)
        report.transcript.append(obs)
        if obs.status != "halted":
            report.verdict = ViolatesAt(n, "did not halt within fuel")
            return report
    outputs = [o.output for o in report.transcript]
    last = outputs[-1]
    if len(last) < m:
        return report
    target = last[:m]
    k = horizon
    while k - 1 >= m and len(outputs[k - 2]) >= m and outputs[k - 2][:m] == target:
        k -= 1
    if horizon - k + 1 >= min_window:
        report.verdict = ConformsUpTo(horizon, witness=k)
    return report


def _diagonal_digits(streams: Sequence[DigitStream], n: int) -> list[int]:
    if len(streams) < n:
        raise InsufficientDigits(f"need {n} streams, got {len(streams)}")
    bases = {s.base for s in streams[:n]}
    if len(bases) > 1:
        raise ValueError(f"streams mix bases {sorted(bases)}")
    return [streams[i - 1].digit(i) for i in range(1, n + 1)]


def diagonal(streams: Sequence[DigitStream], n: int, base: int) -> str:
    """Digit ``i`` is ``(streams[i]_i + 1) mod base``, so it differs from every stream on its diagonal."""
    digits = _diagonal_digits(streams, n)
    if n and streams[0].base != base:
        raise ValueError(f"streams are base {streams[0].base}, not {base}")
    return "".join(DIGITS[(d + 1) % base] for d in digits)


def diagonal_prime(streams: Sequence[DigitStream], n: int) -> str:
    return "".join(DIGITS[d] for d in _diagonal_digits(streams, n))


def stream_of_machine(
    machine: Machine,
    base: int,
    horizon: int,
    fuel: FuelPolicy = FuelPolicy(),
    min_window: int = 1,
) -> DigitStream:
    """Digits that every run in the last ``min_window`` inputs agrees on, as a stream.

    Raises :class:`NotHalting` if any input up to ``horizon`` runs out of fuel.
    """
    _check_base(machine, base)
    outputs = []
    for n in range(1, horizon + 1):
        obs = _observe(machine, base, n, fuel)
        if obs.status != "halted":
            raise NotHalting(n, fuel(n))
        outputs.append(obs.output)
    window = outputs[max(0, horizon - min_window) :]
    stable = ""
    for i in range(min(len(o) for o in window)):
        if any(o[i] != window[-1][i] for o in window):
            break
        stable += window[-1][i]
    return DigitStream.from_string(stable, base)
