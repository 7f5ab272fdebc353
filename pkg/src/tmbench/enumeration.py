"""Canonical enumeration of machines and of (machine, input) programs.

Machines are ranked 1, 2, ... by increasing machine number. Since every
machine number starts with the digit 2, numeric order is the same as
ordering by length and then lexicographically.

The scan walks encodings character by character in digit order
(``0 < 1 < ( < ) < ,``), discarding a prefix only when no valid encoding of
the requested length can extend it. Programs pair a machine rank with an
input rank in Cantor diagonal order, skipping pairs whose input rank does
not exist (machines with an empty input alphabet have only the empty word).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterator, Sequence

from .codec import InvalidMachine, binary, decode, encode, from_number, to_number, validate
from .tm import Machine

__all__ = [
    "Program",
    "RankOutOfRange",
    "scan_length",
    "next_valid_number",
    "iter_machine_numbers",
    "enumerate_machines",
    "MachineCatalog",
    "default_catalog",
    "machine_by_rank",
    "rank_of",
    "input_of_rank",
    "rank_of_input",
    "enumerate_inputs",
    "cantor_pair",
    "cantor_unpair",
    "program_of",
    "index_of",
    "format_word",
    "parse_word",
]


class RankOutOfRange(IndexError):
    def __init__(self, k: int, rank: int):
        super().__init__(f"RankOutOfRange: input rank {rank} does not exist for k={k}")
        self.k = k
        self.rank = rank


@dataclass(frozen=True)
class Program:
    machine: Machine
    input: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "input", tuple(self.input))


# ---------------------------------------------------------------------------
# machine scan


def _numerals(max_value: int, max_len: int) -> Iterator[str]:
    """Binary numerals ``<= max_value`` in the order their encodings sort.

    A numeral is always followed by ``,`` or ``)``, both larger than any
    digit, so every extension of a numeral sorts before the numeral itself.
    """
    if max_value < 0 or max_len < 1:
        return
    yield "0"
    if max_value >= 1:
        yield from _ones("1", max_value, max_len)


def _ones(prefix: str, max_value: int, max_len: int) -> Iterator[str]:
    if len(prefix) < max_len:
        for d in "01":
            ext = prefix + d
            if int(ext, 2) <= max_value:
                yield from _ones(ext, max_value, max_len)
    yield prefix


def _final_costs(n: int) -> int:
    # chars needed to list states 1..n-1 as finals, one separator each
    return sum(len(binary(s)) + 1 for s in range(1, n))


def _header_bound(n: int, m: int) -> int:
    # "(" n "," k "," m ",(" + m transitions for state 0 + closing + finals
    return 5 + len(binary(n)) + 1 + len(binary(m)) + (12 * m - 1) + 4 + _final_costs(n)


class _Scan:
    def __init__(self, length: int, after: str | None):
        self.L = length
        # digit-space comparisons against `after` only matter at equal length
        self.after = after if after is not None and len(after) == length else None

    def _tight(self, pos: int, chunk: str, tight: bool) -> int:
        """-1: subtree below after; 0: still equal; 1: strictly above."""
        if not tight:
            return 1
        seg = self.after[pos : pos + len(chunk)]
        got = to_number(chunk)
        if got < seg:
            return -1
        return 0 if got == seg else 1

    def run(self) -> Iterator[str]:
        L = self.L
        max_n = 1
        while _header_bound(max_n + 1, 1) <= L:
            max_n += 1
        max_m = 0
        while _header_bound(2, max_m + 1) <= L:
            max_m += 1
        if max_n < 2 or max_m < 1:
            return
        tight0 = self.after is not None
        for n_str in _numerals(max_n, L):
            n = int(n_str, 2)
            if n < 2 or _header_bound(n, 1) > L:
                continue
            for k_str in _numerals(max_m - 1, L):
                k = int(k_str, 2)
                for m_str in _numerals(max_m, L):
                    m = int(m_str, 2)
                    if m < k + 1 or _header_bound(n, m) > L:
                        continue
                    header = f"({n_str},{k_str},{m_str},("
                    cmp = self._tight(0, header, tight0)
                    if cmp < 0:
                        continue
                    self.n, self.m = n, m
                    self.fin_total = _final_costs(n)
                    yield from self._delta(header, None, {}, cmp == 0)

    def _need(self, counts: dict[int, frozenset], first: bool) -> int:
        m = self.m
        need = 0
        fin = self.fin_total
        for p, syms in counts.items():
            lp = len(binary(p))
            need += (m - len(syms)) * (lp + 11)
            if p:
                fin -= lp + 1
        if 0 not in counts:
            need += 12 * m
        if first:
            need -= 1
        return need + fin + 4

    def _delta(self, text: str, prev_key, counts: dict[int, frozenset], tight: bool) -> Iterator[str]:
        n, m, L = self.n, self.m, self.L
        pos = len(text)
        first = prev_key is None
        if not first:
            # ')' sorts before ',' so closing the table comes first
            if 0 in counts and all(len(s) == m for s in counts.values()):
                finals = [s for s in range(n) if s not in counts]
                if finals:
                    tail = "),(" + ",".join(binary(f) for f in finals) + "))"
                    if pos + len(tail) == L and self._tight(pos, tail, tight) > 0:
                        yield text + tail
        sep = "" if first else ","
        for p_str in _numerals(n - 1, L):
            p = int(p_str, 2)
            used = counts.get(p, frozenset())
            if len(used) == m:
                continue
            for a_str in _numerals(m - 1, L):
                a = int(a_str, 2)
                if a in used:
                    continue
                new_counts = dict(counts)
                new_counts[p] = used | {a}
                for q_str in _numerals(n - 1, L):
                    for b_str in _numerals(m - 1, L):
                        for x in "01":
                            bits = p_str + a_str + q_str + b_str + x
                            key = (int(bits, 2), p, a)
                            if prev_key is not None and key <= prev_key:
                                continue
                            chunk = f"{sep}({p_str},{a_str},{q_str},{b_str},{x})"
                            end = pos + len(chunk)
                            if end + self._need(new_counts, False) > L:
                                continue
                            cmp = self._tight(pos, chunk, tight)
                            if cmp < 0:
                                continue
                            yield from self._delta(text + chunk, key, new_counts, cmp == 0)


def scan_length(length: int, after: str | None = None) -> Iterator[str]:
    """Valid encodings of exactly ``length`` characters, in increasing number order.

    With ``after`` (a machine number of the same length) only larger ones are produced.
    """
    return _Scan(length, after).run()


def next_valid_number(after: str | None = None) -> str:
    """Smallest valid machine number strictly greater than ``after``."""
    if after is not None:
        after = after.strip()
        from_number(after)  # digit check
        if after and after[0] == "0":
            after = after.lstrip("0")
    length = len(after) if after else 1
    while True:
        for text in scan_length(length, after):
            return to_number(text)
        length += 1


def iter_machine_numbers(start_after: str | None = None) -> Iterator[str]:
    number = start_after
    while True:
        number = next_valid_number(number)
        yield number


class MachineCatalog:
    """Lazily grown rank -> machine table; behaves as a pure function of rank."""

    def __init__(self):
        self._numbers: list[str] = []
        self._machines: list[Machine] = []
        self._ranks: dict[str, int] = {}
        self._length = 0  # every encoding shorter than this is listed
        self._lock = threading.Lock()

    def _grow(self) -> None:
        self._length += 1
        for text in scan_length(self._length):
            number = to_number(text)
            self._ranks[number] = len(self._numbers) + 1
            self._numbers.append(number)
            self._machines.append(decode(text))

    def ensure(self, count: int) -> None:
        with self._lock:
            while len(self._numbers) < count:
                self._grow()

    def __len__(self) -> int:
        return len(self._numbers)

    def machine(self, rank: int) -> Machine:
        if rank < 1:
            raise IndexError("machine ranks start at 1")
        self.ensure(rank)
        return self._machines[rank - 1]

    def number(self, rank: int) -> str:
        self.machine(rank)
        return self._numbers[rank - 1]

    def rank_of(self, machine: Machine) -> int:
        report = validate(machine)
        if not report.ok:
            raise InvalidMachine(report)
        number = to_number(encode(machine))
        with self._lock:
            while self._length < len(number):
                self._grow()
        return self._ranks[number]

    def first(self, limit: int) -> list[tuple[int, Machine]]:
        self.ensure(limit)
        return [(i + 1, self._machines[i]) for i in range(limit)]


default_catalog = MachineCatalog()


def enumerate_machines(limit: int, catalog: MachineCatalog | None = None) -> list[tuple[int, Machine]]:
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return (catalog or default_catalog).first(limit)


def machine_by_rank(rank: int) -> Machine:
    return default_catalog.machine(rank)


def rank_of(machine: Machine) -> int:
    return default_catalog.rank_of(machine)


# ---------------------------------------------------------------------------
# inputs


def input_of_rank(k: int, rank: int) -> tuple[int, ...]:
    """Word number ``rank`` over ``{0..k-1}`` in length-then-lexicographic order."""
    if rank < 0:
        raise RankOutOfRange(k, rank)
    if k == 0:
        if rank:
            raise RankOutOfRange(k, rank)
        return ()
    word = []
    while rank:
        rank -= 1
        word.append(rank % k)
        rank //= k
    return tuple(reversed(word))


def rank_of_input(k: int, word: Sequence[int]) -> int:
    rank = 0
    for sym in word:
        if not 0 <= sym < k:
            raise ValueError(f"symbol {sym} is not < k={k}")
        rank = rank * k + sym + 1
    return rank


def enumerate_inputs(machine: Machine, rank: int) -> tuple[int, ...]:
    return input_of_rank(machine.k, rank)


# ---------------------------------------------------------------------------
# programs


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    from math import isqrt

    d = (isqrt(8 * z + 1) - 1) // 2
    b = z - d * (d + 1) // 2
    return d - b, b


class _ProgramIndex:
    """Counts the live pairs of each Cantor diagonal.

    Diagonal ``d`` holds ``(d - b, b)`` for ``b = 0..d``. Pair ``(a, 0)`` always
    exists; ``(a, b>0)`` exists iff machine ``a + 1`` has a non-empty input
    alphabet.
    """

    def __init__(self, catalog: MachineCatalog):
        self.catalog = catalog
        self._has_inputs: list[bool] = []
        self._starts = [0]  # program index of the first live pair of diagonal d
        self._lock = threading.Lock()

    def _extend_flags(self, count: int) -> None:
        while len(self._has_inputs) < count:
            a = len(self._has_inputs)
            self._has_inputs.append(self.catalog.machine(a + 1).k > 0)

    def _live(self, a: int, b: int) -> bool:
        return b == 0 or self._has_inputs[a]

    def _diagonal_size(self, d: int) -> int:
        self._extend_flags(d + 1)
        return 1 + sum(self._has_inputs[:d])

    def _start(self, d: int) -> int:
        while len(self._starts) <= d:
            e = len(self._starts) - 1
            self._starts.append(self._starts[e] + self._diagonal_size(e))
        return self._starts[d]

    def pair_of(self, index: int) -> tuple[int, int]:
        if index < 0:
            raise IndexError("program indices start at 0")
        with self._lock:
            d = 0
            while self._start(d + 1) <= index:
                d += 1
            offset = index - self._start(d)
            self._extend_flags(d + 1)
            for b in range(d + 1):
                if self._live(d - b, b):
                    if offset == 0:
                        return d - b, b
                    offset -= 1
        raise AssertionError("unreachable")

    def index_of_pair(self, a: int, b: int) -> int:
        with self._lock:
            d = a + b
            base = self._start(d)
            self._extend_flags(d + 1)
            if not self._live(a, b):
                raise RankOutOfRange(0, b)
            return base + sum(1 for b2 in range(b) if self._live(d - b2, b2))


_default_index = _ProgramIndex(default_catalog)


def program_of(index: int) -> Program:
    a, b = _default_index.pair_of(index)
    machine = default_catalog.machine(a + 1)
    return Program(machine, input_of_rank(machine.k, b))


def index_of(program: Program) -> int:
    a = default_catalog.rank_of(program.machine) - 1
    b = rank_of_input(program.machine.k, program.input)
    return _default_index.index_of_pair(a, b)


def format_word(word: Sequence[int]) -> str:
    from .tm import DIGITS

    return "".join(DIGITS[s] for s in word)


def parse_word(text: str) -> tuple[int, ...]:
    return tuple(int(c, 36) for c in text.strip())
