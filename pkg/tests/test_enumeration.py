import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tmbench.codec import decode, encode, to_number
from tmbench.enumeration import (
    MachineCatalog,
    Program,
    RankOutOfRange,
    cantor_pair,
    cantor_unpair,
    enumerate_inputs,
    enumerate_machines,
    index_of,
    input_of_rank,
    iter_machine_numbers,
    next_valid_number,
    program_of,
    rank_of,
    rank_of_input,
    scan_length,
)
from tmbench.oracles import brute_force_valid, construct_encodings

LOOP_NUMBER = "21040414220404040403342133"
K2_TEXT = "(10,10,11,((0,0,0,0,0),(0,1,0,0,0),(0,10,0,0,0)),(1))"


def number(text):
    return to_number(text)


def test_first_valid_number_is_minimal_machine():
    assert next_valid_number(None) == LOOP_NUMBER
    assert construct_encodings(26)[0] == "(10,0,1,((0,0,0,0,0)),(1))"


def test_nothing_valid_below_length_26():
    assert construct_encodings(25) == []
    for length in range(1, 8):
        assert brute_force_valid(length) == []
        assert list(scan_length(length)) == []


def test_first_four_machines():
    got = [encode(m) for _, m in enumerate_machines(4)]
    assert got == [
        "(10,0,1,((0,0,0,0,0)),(1))",
        "(10,0,1,((0,0,0,0,1)),(1))",
        "(10,0,1,((0,0,1,0,0)),(1))",
        "(10,0,1,((0,0,1,0,1)),(1))",
    ]


def test_enumerate_machines_limits(m_loop):
    assert enumerate_machines(0) == []
    assert enumerate_machines(1) == [(1, m_loop)]
    with pytest.raises(ValueError):
        enumerate_machines(-1)


@pytest.mark.parametrize("max_length", [30, 40, 46])
def test_scan_matches_constructive_oracle(max_length):
    scanned = [t for length in range(1, max_length + 1) for t in scan_length(length)]
    assert scanned == construct_encodings(max_length)


def test_numbers_strictly_increase_and_round_trip():
    rows = enumerate_machines(300)
    numbers = [int(number(encode(m)), 5) for _, m in rows]
    assert all(a < b for a, b in zip(numbers, numbers[1:]))
    assert [i for i, _ in rows] == list(range(1, 301))
    for _, m in rows:
        assert decode(encode(m)) == m


def test_value_order_is_length_then_lex():
    nums = [number(encode(m)) for _, m in enumerate_machines(300)]
    assert nums == sorted(nums, key=lambda s: (len(s), s))
    assert nums == sorted(nums, key=lambda s: int(s, 5))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5**29))
def test_next_valid_number_is_the_successor(x):
    after = "2" + format_base5(x)
    nxt = next_valid_number(after)
    assert int(nxt, 5) > int(after, 5)
    corpus = [number(t) for t in construct_encodings(len(nxt))]
    assert nxt == min(n for n in corpus if int(n, 5) > int(after, 5))


def format_base5(x):
    digits = ""
    while x:
        x, r = divmod(x, 5)
        digits = str(r) + digits
    return digits


def test_iter_machine_numbers_follows_catalog():
    it = iter_machine_numbers()
    first = [next(it) for _ in range(30)]
    assert first == [number(encode(m)) for _, m in enumerate_machines(30)]


def test_fresh_catalog_agrees_with_default():
    cat = MachineCatalog()
    assert [m for _, m in enumerate_machines(50, cat)] == [m for _, m in enumerate_machines(50)]
    m = cat.machine(37)
    assert cat.rank_of(m) == 37 == rank_of(m)


def brute_words(k, max_len):
    words = []
    for length in range(max_len + 1):
        words.extend(itertools.product(range(k), repeat=length))
    return words


@pytest.mark.parametrize("k", [1, 2, 3])
def test_input_order_matches_exhaustive_listing(k):
    words = brute_words(k, 4)
    assert [input_of_rank(k, r) for r in range(len(words))] == words
    assert [rank_of_input(k, w) for w in words] == list(range(len(words)))


def test_enumerate_inputs_examples(m_loop):
    k2 = decode(K2_TEXT)
    assert enumerate_inputs(m_loop, 0) == ()
    assert enumerate_inputs(k2, 3) == (0, 0)
    with pytest.raises(RankOutOfRange):
        enumerate_inputs(m_loop, 1)


def test_cantor_pairing_formula():
    assert cantor_pair(0, 0) == 0
    assert (cantor_pair(1, 0), cantor_pair(0, 1)) == (1, 2)
    for z in range(2000):
        assert cantor_pair(*cantor_unpair(z)) == z


def test_program_zero():
    p = program_of(0)
    assert rank_of(p.machine) == 1 and p.input == ()


def test_programs_one_and_two():
    # pair (1,0) comes first; pair (0,1) does not exist (machine 1 has k=0)
    assert (rank_of(program_of(1).machine), program_of(1).input) == (2, ())
    assert (rank_of(program_of(2).machine), program_of(2).input) == (3, ())


def test_program_numbering_is_a_bijection():
    seen = set()
    for i in range(10_001):
        p = program_of(i)
        assert index_of(p) == i
        key = (rank_of(p.machine), p.input)
        assert key not in seen
        seen.add(key)


def test_program_order_is_cantor_order_over_live_pairs():
    pairs = []
    for i in range(2000):
        p = program_of(i)
        pairs.append(cantor_pair(rank_of(p.machine) - 1, rank_of_input(p.machine.k, p.input)))
    assert pairs == sorted(pairs)


def test_k0_machines_have_one_program(m_loop):
    assert index_of(Program(m_loop, ())) == 0
    with pytest.raises(ValueError):
        index_of(Program(m_loop, (0,)))
