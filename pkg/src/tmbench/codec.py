"""Text encoding of machines and the base-5 machine number.

A machine is written over the five characters ``0 1 ( ) ,`` as::

    (<n>,<k>,<m>,((<p>,<a>,<q>,<b>,<x>),...),(<f>,...))

with every number in binary without leading zeros and ``x`` being 0 for L
and 1 for R. The machine number replaces ``0 1 ( ) ,`` by ``0 1 2 3 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .tm import Machine, Move, Transition

__all__ = [
    "ALPHABET",
    "CodecError",
    "EncodingSyntaxError",
    "InvalidMachine",
    "SemanticError",
    "IllegalCharacter",
    "IllegalDigit",
    "ValidityReport",
    "binary",
    "transition_key",
    "validate",
    "make_machine",
    "encode",
    "decode",
    "to_number",
    "from_number",
    "machine_number",
    "machine_from_number",
]

ALPHABET = "01(),"
_TO_DIGIT = str.maketrans(ALPHABET, "01234")
_FROM_DIGIT = str.maketrans("01234", ALPHABET)


class CodecError(ValueError):
    pass


class IllegalCharacter(CodecError):
    def __init__(self, position: int, char: str):
        super().__init__(f"IllegalCharacter: {char!r} at position {position} is not in {ALPHABET!r}")
        self.position = position
        self.char = char


class IllegalDigit(CodecError):
    def __init__(self, position: int, char: str):
        super().__init__(f"IllegalDigit: {char!r} at position {position} is not a base-5 digit")
        self.position = position
        self.char = char


class EncodingSyntaxError(CodecError):
    def __init__(self, position: int, expected: str, found: str | None):
        got = "end of input" if found is None else repr(found)
        super().__init__(f"SyntaxError: at position {position}: expected {expected}, found {got}")
        self.position = position
        self.expected = expected
        self.found = found


@dataclass
class ValidityReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def rules(self) -> list[str]:
        return [rule for rule, _ in self.violations]

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{rule}: {detail}" for rule, detail in self.violations)


class InvalidMachine(CodecError):
    prefix = "InvalidMachine"

    def __init__(self, report: ValidityReport):
        super().__init__(f"{self.prefix}: {report}")
        self.report = report


class SemanticError(InvalidMachine):
    prefix = "SemanticError"


def binary(value: int) -> str:
    return format(value, "b")


def transition_key(t: Transition) -> tuple[int, int, int]:
    """Ordering key: value of the concatenated binary fields, then ``(p, a)``.

    Different ``(p, a)`` pairs can concatenate to the same bit string
    (``1.10`` and ``11.0``), hence the tie-break.
    """
    bits = "".join(binary(v) for v in t.as_tuple())
    return (int(bits, 2), t.from_state, t.read)


def validate(machine: Machine) -> ValidityReport:
    """List every violated machine rule once, in a fixed rule order."""
    found: dict[str, list[str]] = {}

    def flag(rule: str, detail: str) -> None:
        found.setdefault(rule, []).append(detail)

    n, k, m = machine.n, machine.k, machine.m
    if n < 2:
        flag("N_TOO_SMALL", f"n={n} but at least an initial and a final state are required")
    if m < 1:
        flag("M_TOO_SMALL", f"m={m} but the blank symbol is required")
    if k < 0 or k > m - 1:
        flag("K_OUT_OF_RANGE", f"k={k} must satisfy 0 <= k <= m-1={m - 1}")

    finals = machine.finals
    if not finals:
        flag("FINALS_EMPTY", "no final state")
    for f in finals:
        if not 0 <= f < n:
            flag("STATE_OUT_OF_RANGE", f"final state {f} not in 0..{n - 1}")
    if 0 in finals:
        flag("INITIAL_IS_FINAL", "state 0 is the initial state and cannot be final")
    if any(a >= b for a, b in zip(finals, finals[1:])):
        flag("UNSORTED_FINALS", f"finals {list(finals)} are not strictly increasing")

    final_set = set(finals)
    seen: set[tuple[int, int]] = set()
    for t in machine.delta:
        p, a, q, b, _ = t.as_tuple()
        for label, v, bound in (("from_state", p, n), ("to_state", q, n)):
            if not 0 <= v < bound:
                flag("STATE_OUT_OF_RANGE", f"{label} {v} of {t.as_tuple()} not in 0..{n - 1}")
        for label, v in (("read", a), ("write", b)):
            if not 0 <= v < m:
                flag("SYMBOL_OUT_OF_RANGE", f"{label} {v} of {t.as_tuple()} not in 0..{m - 1}")
        if p in final_set:
            flag("TRANSITION_FROM_FINAL", f"transition {t.as_tuple()} leaves final state {p}")
        if (p, a) in seen:
            flag("DUPLICATE_TRANSITION", f"more than one transition for (state {p}, symbol {a})")
        seen.add((p, a))

    nonfinal = n - len(final_set & set(range(n))) if n > 0 else 0
    covered = {(p, a) for p, a in seen if 0 <= p < n and p not in final_set and 0 <= a < m}
    if m > 0 and len(covered) < nonfinal * m:
        if nonfinal * m <= 1 << 16:
            for p in range(n):
                if p in final_set:
                    continue
                for a in range(m):
                    if (p, a) not in covered:
                        flag("MISSING_TRANSITION", f"no transition for (state {p}, symbol {a})")
        else:
            flag(
                "MISSING_TRANSITION",
                f"{nonfinal} non-final states x {m} symbols need {nonfinal * m} transitions, "
                f"only {len(covered)} given",
            )

    keys = [transition_key(t) for t in machine.delta if min(t.as_tuple()) >= 0]
    if any(x >= y for x, y in zip(keys, keys[1:])):
        flag("UNSORTED_TRANSITIONS", "transitions are not in strictly increasing key order")

    report = ValidityReport()
    for rule, details in found.items():
        shown = "; ".join(details[:3])
        if len(details) > 3:
            shown += f" (+{len(details) - 3} more)"
        report.violations.append((rule, shown))
    return report


TransitionLike = Union[Transition, tuple]


def make_machine(
    n: int, k: int, m: int, transitions: Iterable[TransitionLike], finals: Iterable[int]
) -> Machine:
    """Build a machine in canonical order; raise :class:`InvalidMachine` if invalid."""
    delta = [t if isinstance(t, Transition) else Transition(*t) for t in transitions]
    try:
        delta.sort(key=transition_key)
    except ValueError:
        pass  # negative fields; validate reports them
    machine = Machine(n, k, m, tuple(delta), tuple(sorted(set(finals))))
    report = validate(machine)
    if not report.ok:
        raise InvalidMachine(report)
    return machine


def encode(machine: Machine) -> str:
    report = validate(machine)
    if not report.ok:
        raise InvalidMachine(report)
    trans = ",".join("(" + ",".join(binary(v) for v in t.as_tuple()) + ")" for t in machine.delta)
    finals = ",".join(binary(f) for f in machine.finals)
    return f"({binary(machine.n)},{binary(machine.k)},{binary(machine.m)},({trans}),({finals}))"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def fail(self, expected: str):
        raise EncodingSyntaxError(self.pos, expected, self.peek())

    def expect(self, char: str) -> None:
        if self.peek() != char:
            self.fail(repr(char))
        self.pos += 1

    def num(self) -> int:
        c = self.peek()
        if c == "0":
            self.pos += 1
            if self.peek() in ("0", "1"):
                self.fail("',' or ')' (no leading zeros)")
            return 0
        if c != "1":
            self.fail("binary numeral")
        start = self.pos
        while self.peek() in ("0", "1"):
            self.pos += 1
        return int(self.text[start : self.pos], 2)

    def bit(self) -> int:
        c = self.peek()
        if c not in ("0", "1"):
            self.fail("move bit '0' or '1'")
        self.pos += 1
        if self.peek() in ("0", "1"):
            self.fail("')' after move bit")
        return int(c)

    def transition(self) -> Transition:
        self.expect("(")
        p = self.num()
        self.expect(",")
        a = self.num()
        self.expect(",")
        q = self.num()
        self.expect(",")
        b = self.num()
        self.expect(",")
        x = self.bit()
        self.expect(")")
        return Transition(p, a, q, b, Move(x))

    def machine(self) -> Machine:
        self.expect("(")
        n = self.num()
        self.expect(",")
        k = self.num()
        self.expect(",")
        m = self.num()
        self.expect(",")
        self.expect("(")
        delta = [self.transition()]
        while self.peek() == ",":
            self.pos += 1
            delta.append(self.transition())
        self.expect(")")
        self.expect(",")
        self.expect("(")
        finals = [self.num()]
        while self.peek() == ",":
            self.pos += 1
            finals.append(self.num())
        self.expect(")")
        self.expect(")")
        if self.pos != len(self.text):
            self.fail("end of input")
        return Machine(n, k, m, tuple(delta), tuple(finals))


def decode(text: str) -> Machine:
    """Parse an encoding string; reject anything that is not canonical and valid."""
    for i, c in enumerate(text):
        if c not in ALPHABET:
            raise EncodingSyntaxError(i, f"a character of {ALPHABET!r}", c)
    machine = _Parser(text).machine()
    report = validate(machine)
    if not report.ok:
        raise SemanticError(report)
    return machine


def to_number(text: str) -> str:
    for i, c in enumerate(text):
        if c not in ALPHABET:
            raise IllegalCharacter(i, c)
    return text.translate(_TO_DIGIT)


def from_number(digits: str) -> str:
    for i, c in enumerate(digits):
        if c not in "01234":
            raise IllegalDigit(i, c)
    return digits.translate(_FROM_DIGIT)


def machine_number(machine: Machine) -> str:
    return to_number(encode(machine))


def machine_from_number(digits: str) -> Machine:
    return decode(from_number(digits.strip()))
