"""Small hand-built machines used by tests, experiments and the CLI.

The digit machines read their argument in unary (``n`` copies of symbol 0,
which is also the numeral 0) and use the 10 first tape symbols as decimal
numerals with blank 10.
"""

from __future__ import annotations

from typing import Mapping

from .codec import make_machine
from .tm import Machine, Move

L, R = Move.L, Move.R
DIGIT_BLANK = 10


def rule_machine(
    n: int,
    k: int,
    m: int,
    rules: Mapping[tuple[int, int], tuple[int, int, Move]],
    finals: tuple[int, ...],
) -> Machine:
    """Complete a sparse rule table: unlisted (state, symbol) pairs jump to the first final state."""
    stop = finals[0]
    trans = []
    for p in range(n):
        if p in finals:
            continue
        for a in range(m):
            q, b, x = rules.get((p, a), (stop, a, R))
            trans.append((p, a, q, b, x))
    return make_machine(n, k, m, trans, finals)


def m_loop() -> Machine:
    """The minimal machine: (q0, blank) -> (q0, blank, L), F = {q1}. Never halts."""
    return make_machine(2, 0, 1, [(0, 0, 0, 0, L)], [1])


def m_halt() -> Machine:
    """Halts after exactly one step."""
    return make_machine(2, 0, 1, [(0, 0, 1, 0, R)], [1])


def m_halt_after(steps: int) -> Machine:
    """Walks right ``steps`` times through a chain of states, then halts."""
    trans = [(i, 0, i + 1, 0, R) for i in range(steps)]
    return make_machine(steps + 1, 0, 1, trans, [steps])


def m_repeat_digit(digit: int) -> Machine:
    """Overwrites each input cell with ``digit``: prints ``n`` copies on input ``n``."""
    return rule_machine(
        2, 1, 11, {(0, 0): (0, digit, R), (0, DIGIT_BLANK): (1, DIGIT_BLANK, L)}, (1,)
    )


def m_threes() -> Machine:
    return m_repeat_digit(3)


def m_two_phase(switch_at: int = 7) -> Machine:
    """First printed digit is 0 for inputs below ``switch_at`` and 5 from then on.

    States ``0..switch_at-1`` count input cells. Reaching cell ``switch_at-1``
    sends the head back to cell 0, which is overwritten with 5.
    """
    back, write, stop = switch_at, switch_at + 1, switch_at + 2
    rules = {}
    for i in range(switch_at):
        nxt = (i + 1, 0, R) if i < switch_at - 1 else (back, 0, L)
        rules[(i, 0)] = nxt
        rules[(i, DIGIT_BLANK)] = (stop, DIGIT_BLANK, L)
    rules[(back, 0)] = (back, 0, L)
    rules[(back, DIGIT_BLANK)] = (write, DIGIT_BLANK, R)
    rules[(write, 0)] = (stop, 5, R)
    return rule_machine(switch_at + 3, 1, 11, rules, (stop,))


def m_parity() -> Machine:
    """First printed digit is the parity of the input (1 for odd ``n``)."""
    rules = {
        (0, 0): (1, 0, R),
        (1, 0): (0, 0, R),
        (0, DIGIT_BLANK): (4, DIGIT_BLANK, L),
        (1, DIGIT_BLANK): (2, DIGIT_BLANK, L),
        (2, 0): (2, 0, L),
        (2, DIGIT_BLANK): (3, DIGIT_BLANK, R),
        (3, 0): (4, 1, R),
    }
    return rule_machine(5, 1, 11, rules, (4,))


def m_bad_prefix() -> Machine:
    """Prints "35" on input 1 and "34..." on larger inputs."""
    rules = {
        (0, 0): (1, 3, R),
        (1, 0): (2, 4, R),
        (1, DIGIT_BLANK): (2, 5, R),
    }
    return rule_machine(3, 1, 11, rules, (2,))


SAMPLES = {
    "loop": m_loop,
    "halt": m_halt,
    "halt3": lambda: m_halt_after(3),
    "threes": m_threes,
    "zeros": lambda: m_repeat_digit(0),
    "nines": lambda: m_repeat_digit(9),
    "two-phase": m_two_phase,
    "parity": m_parity,
    "bad-prefix": m_bad_prefix,
}
