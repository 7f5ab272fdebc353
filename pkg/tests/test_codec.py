import pytest
from hypothesis import given, settings, strategies as st

from tmbench.codec import (
    ALPHABET,
    CodecError,
    EncodingSyntaxError,
    IllegalCharacter,
    IllegalDigit,
    InvalidMachine,
    SemanticError,
    decode,
    encode,
    from_number,
    make_machine,
    to_number,
    transition_key,
    validate,
)
from tmbench.enumeration import enumerate_machines
from tmbench.tm import Machine, Move, Transition

LOOP_TEXT = "(10,0,1,((0,0,0,0,0)),(1))"
HALT_TEXT = "(10,0,1,((0,0,1,0,1)),(1))"

CORPUS = [encode(m) for _, m in enumerate_machines(400)]


def substitute(text):
    """Independent oracle: character-by-character table lookup."""
    table = {"0": "0", "1": "1", "(": "2", ")": "3", ",": "4"}
    out = ""
    for ch in text:
        out += table[ch]
    return out


def test_encode_minimal_machine(m_loop):
    assert encode(m_loop) == LOOP_TEXT


def test_transition_block_matches_worked_example(m_loop):
    # the worked example's transition block, spaces removed
    assert "((0,0, 0,0,0))".replace(" ", "") in encode(m_loop)
    t = m_loop.delta[0]
    assert "(" + ",".join(format(v, "b") for v in t.as_tuple()) + ")" == "(0,0,0,0,0)"


def test_encode_halt_machine(m_halt):
    assert encode(m_halt) == HALT_TEXT


def test_decode_inverts_encode(m_loop):
    assert decode(LOOP_TEXT) == m_loop


@pytest.mark.parametrize(
    "text, rule",
    [
        ("(1,0,1,((0,0,0,0,0)),(1))", "N_TOO_SMALL"),
        ("(10,0,1,((0,0,0,0,0)),(0))", "INITIAL_IS_FINAL"),
        ("(10,1,1,((0,0,0,0,0)),(1))", "K_OUT_OF_RANGE"),
        ("(10,0,1,((0,0,0,0,0),(0,0,1,0,0)),(1))", "DUPLICATE_TRANSITION"),
        ("(10,0,1,((0,0,10,0,0)),(1))", "STATE_OUT_OF_RANGE"),
        ("(10,0,1,((0,0,0,1,0)),(1))", "SYMBOL_OUT_OF_RANGE"),
        ("(11,0,1,((0,0,0,0,0)),(1))", "MISSING_TRANSITION"),
        ("(11,0,1,((0,0,0,0,0),(1,0,0,0,0)),(1,10))", "TRANSITION_FROM_FINAL"),
        ("(11,0,1,((0,0,0,0,0)),(10,1))", "UNSORTED_FINALS"),
        ("(11,0,1,((10,0,0,0,0),(0,0,0,0,0)),(1))", "UNSORTED_TRANSITIONS"),
    ],
)
def test_decode_semantic_errors(text, rule):
    with pytest.raises(SemanticError) as err:
        decode(text)
    assert rule in err.value.report.rules


@pytest.mark.parametrize(
    "text, position",
    [
        ("(1,0,1", 6),
        ("(010,0,1,((0,0,0,0,0)),(1))", 2),
        ("(10,0,1,((0,0,0,0,0)),(1)) ", 26),
        ("(10, 0,1,((0,0,0,0,0)),(1))", 4),
        ("(10,0,1,((0,0,0,0,10)),(1))", 19),
        ("(10,0,1,(),(1))", 9),
        ("", 0),
    ],
)
def test_decode_syntax_errors(text, position):
    with pytest.raises(EncodingSyntaxError) as err:
        decode(text)
    assert err.value.position == position


def test_to_number_examples():
    assert to_number("(1)") == "213"
    assert to_number(LOOP_TEXT) == substitute(LOOP_TEXT) == "21040414220404040403342133"
    assert to_number(HALT_TEXT) == substitute(HALT_TEXT) == "21040414220404140413342133"


def test_printed_number_is_not_a_substitution_image():
    # the number printed next to the worked example has no digit 3, so no ')'
    printed = "2104140422040404040224212"
    assert "3" not in printed
    assert from_number(printed).count(")") == 0
    with pytest.raises(CodecError):
        decode(from_number(printed))


def test_from_number_examples():
    assert from_number("213") == "(1)"
    assert from_number("21040414220404040403342133") == LOOP_TEXT


def test_illegal_characters():
    with pytest.raises(IllegalCharacter):
        to_number("(2)")
    with pytest.raises(IllegalDigit):
        from_number("215")


@given(st.text(alphabet="01234"))
def test_substitution_is_a_bijection(digits):
    assert to_number(from_number(digits)) == digits
    assert len(from_number(digits)) == len(digits)


def test_validate_minimal_machine(m_loop):
    assert validate(m_loop).ok


def test_validate_duplicate_and_order():
    dup = Machine(2, 0, 1, (Transition(0, 0, 0, 0, Move.L), Transition(0, 0, 1, 0, Move.L)), (1,))
    assert "DUPLICATE_TRANSITION" in validate(dup).rules
    m = make_machine(3, 0, 1, [(0, 0, 0, 0, 0), (1, 0, 0, 0, 0)], [2])
    swapped = Machine(m.n, m.k, m.m, tuple(reversed(m.delta)), m.finals)
    assert validate(swapped).rules == ["UNSORTED_TRANSITIONS"]


def test_validate_reports_each_rule_once():
    bad = Machine(3, 0, 1, (), (0, 0))
    rules = validate(bad).rules
    assert len(rules) == len(set(rules))
    assert {"INITIAL_IS_FINAL", "UNSORTED_FINALS", "MISSING_TRANSITION"} <= set(rules)


def test_encode_rejects_invalid():
    with pytest.raises(InvalidMachine):
        encode(Machine(1, 0, 1, (), (0,)))


def test_transition_key_ties_are_broken_by_state_and_symbol():
    a = Transition(1, 2, 0, 0, Move.L)  # "1" "10" "0" "0" "0"
    b = Transition(3, 0, 0, 0, Move.L)  # "11" "0" "0" "0" "0"
    assert transition_key(a)[0] == transition_key(b)[0]
    assert transition_key(a) < transition_key(b)
    m = make_machine(4, 0, 3, [(p, s, 0, 0, 0) for p in range(3) for s in range(3)], [3])
    assert decode(encode(m)) == m


@pytest.mark.parametrize("text", CORPUS[:50] + CORPUS[-50:])
def test_round_trip(text):
    m = decode(text)
    assert encode(m) == text
    assert decode(encode(m)) == m


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_out_of_alphabet_mutation_is_a_syntax_error(text, data):
    i = data.draw(st.integers(0, len(text) - 1))
    ch = data.draw(st.characters().filter(lambda c: c not in ALPHABET))
    with pytest.raises(EncodingSyntaxError) as err:
        decode(text[:i] + ch + text[i + 1 :])
    assert err.value.position == i


@settings(max_examples=500, deadline=None)
@given(st.text(alphabet=ALPHABET + " 2", max_size=60))
def test_fuzzed_strings_never_crash(text):
    try:
        m = decode(text)
    except (EncodingSyntaxError, SemanticError):
        return
    assert encode(m) == text


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_in_alphabet_mutation_is_rejected_or_canonical(text, data):
    i = data.draw(st.integers(0, len(text) - 1))
    ch = data.draw(st.sampled_from(ALPHABET))
    mutated = text[:i] + ch + text[i + 1 :]
    try:
        m = decode(mutated)
    except (EncodingSyntaxError, SemanticError):
        return
    assert encode(m) == mutated


def test_no_encoding_is_a_proper_prefix_of_another():
    texts = sorted(CORPUS)
    for a, b in zip(texts, texts[1:]):
        assert not b.startswith(a)
    for t in CORPUS:
        for cut in range(1, len(t)):
            with pytest.raises(EncodingSyntaxError):
                decode(t[:cut])
