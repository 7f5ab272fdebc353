"""Reference enumerations that share no code with the scan in ``enumeration``.

``construct_encodings`` builds machines field by field (state count,
alphabets, which states are final, then every transition target) and
encodes them, instead of walking encoding strings. ``brute_force_valid``
tries every string over the alphabet and is only usable for short lengths.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .codec import ALPHABET, CodecError, decode, encode, make_machine, to_number


def _blen(v: int) -> int:
    return len(format(v, "b"))


def _min_length(n: int, k: int, m: int, nonfinal: tuple[int, ...], finals: tuple[int, ...]) -> int:
    header = 5 + _blen(n) + _blen(k) + _blen(m)
    trans = sum(m * (_blen(p) + 11) for p in nonfinal) - 1
    tail = 4 + sum(_blen(f) + 1 for f in finals)
    return header + trans + tail


def _machines_up_to(max_length: int) -> Iterator:
    n = 2
    while _min_length(n, 0, 1, (0,), tuple(range(1, n))) <= max_length:
        m = 1
        while _min_length(n, 0, m, (0,), tuple(range(1, n))) <= max_length:
            for k in range(m):
                others = range(1, n)
                for r in range(0, n - 1):
                    for extra in itertools.combinations(others, r):
                        nonfinal = (0,) + extra
                        finals = tuple(s for s in others if s not in extra)
                        base = _min_length(n, k, m, nonfinal, finals)
                        if base > max_length:
                            continue
                        pairs = [(p, a) for p in nonfinal for a in range(m)]
                        yield from _fill(n, k, m, pairs, finals, [], max_length - base)
            m += 1
        n += 1


def _fill(n, k, m, pairs, finals, chosen, slack):
    if len(chosen) == len(pairs):
        yield make_machine(n, k, m, chosen, finals)
        return
    p, a = pairs[len(chosen)]
    for q in range(n):
        cost_q = _blen(q) - 1
        if cost_q > slack:
            break
        for b in range(m):
            cost = cost_q + _blen(b) - 1
            if cost > slack:
                break
            for x in (0, 1):
                chosen.append((p, a, q, b, x))
                yield from _fill(n, k, m, pairs, finals, chosen, slack - cost)
                chosen.pop()


def construct_encodings(max_length: int) -> list[str]:
    """All valid encodings of at most ``max_length`` characters, in machine-number order."""
    texts = {encode(mach) for mach in _machines_up_to(max_length)}
    texts = [t for t in texts if len(t) <= max_length]
    return sorted(texts, key=lambda t: (len(t), to_number(t)))


def brute_force_valid(length: int) -> list[str]:
    out = []
    for chars in itertools.product(ALPHABET, repeat=length):
        text = "".join(chars)
        try:
            decode(text)
        except CodecError:
            continue
        out.append(text)
    return out
