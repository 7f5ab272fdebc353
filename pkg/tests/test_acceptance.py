"""Exit criteria, one test per criterion; each prints a PASS/FAIL line in the summary."""

import contextlib
import random
import time

from tmbench import samples
from tmbench.approx import (
    ConformsUpTo,
    DigitStream,
    Inconclusive,
    ViolatesAt,
    check_approaching,
    check_computable,
    diagonal,
    diagonal_prime,
)
from tmbench.codec import decode, encode, to_number
from tmbench.dovetail import H, advance, start
from tmbench.enumeration import Program, enumerate_machines, next_valid_number, scan_length
from tmbench.oracles import construct_encodings

from conftest import ACCEPTANCE_LINES


@contextlib.contextmanager
def criterion(number, title):
    detail = {}
    try:
        yield detail
    except BaseException:
        ACCEPTANCE_LINES.append(f"[{number:2d}] FAIL  {title}")
        raise
    extra = "  " + ", ".join(f"{k}={v}" for k, v in detail.items()) if detail else ""
    ACCEPTANCE_LINES.append(f"[{number:2d}] PASS  {title}{extra}")


def substitution_oracle(text):
    return "".join("01234"["01(),".index(c)] for c in text)


def test_01_codec_round_trip():
    with criterion(1, "codec round trip, machine numbers of length <= 30") as d:
        t0 = time.perf_counter()
        scanned = [t for length in range(1, 31) for t in scan_length(length)]
        assert scanned == construct_encodings(30)
        for text in scanned:
            m = decode(text)
            assert decode(encode(m)) == m
            assert encode(decode(text)) == text
        elapsed = time.perf_counter() - t0
        assert elapsed < 60
        d["machines"] = len(scanned)
        d["seconds"] = round(elapsed, 2)


def test_02_worked_example():
    with criterion(2, "worked example encoding and number") as d:
        m = samples.m_loop()
        text = encode(m)
        assert text == "(10,0,1,((0,0,0,0,0)),(1))"
        assert text.split(",(", 1)[1].startswith("(0,0,0,0,0))")
        assert "((0,0,0,0,0))" in text
        assert to_number(text) == substitution_oracle(text) == "21040414220404040403342133"
        assert to_number(text) != "2104140422040404040224212"
        d["number"] = to_number(text)


def test_03_first_machine_minimality():
    with criterion(3, "smallest valid machine number") as d:
        oracle = construct_encodings(26)
        assert construct_encodings(25) == []
        first = to_number(oracle[0])
        assert next_valid_number(None) == first
        assert to_number(encode(enumerate_machines(1)[0][1])) == first
        d["first"] = first


def test_04_h_controlled_universe():
    with criterion(4, "H on {halt@1, loop, halt@3} through N=5000") as d:
        t0 = time.perf_counter()
        universe = [
            Program(samples.m_halt()),
            Program(samples.m_loop()),
            Program(samples.m_halt_after(3)),
        ]
        state = start(universe)
        flips = {}
        for n in range(1, 5001):
            state = advance(state, n)
            for i, b in enumerate(state.bits.bits):
                if b == "1":
                    flips.setdefault(i, n)
        assert flips == {0: 1, 2: 3}
        assert state.bits.bits == "101"
        elapsed = time.perf_counter() - t0
        assert elapsed < 5
        d["seconds"] = round(elapsed, 2)


def test_05_h_monotone_incremental_budget():
    with criterion(5, "H(1..500) monotone, incremental == fresh, steps <= N^2") as d:
        N = 500
        t0 = time.perf_counter()
        state = start()
        prev = ""
        for n in range(1, N + 1):
            state = advance(state, n)
            bits = state.bits.bits
            assert len(bits) == n
            assert all(not (a == "1" and b == "0") for a, b in zip(prev, bits))
            prev = bits
        assert prev == H(N).bits
        assert state.steps <= N * N
        elapsed = time.perf_counter() - t0
        assert elapsed < 60
        d.update(steps=state.steps, ones=prev.count("1"), seconds=round(elapsed, 2))


def test_06_schedule_independence():
    with criterion(6, "H(500) identical for 1, 2 and 8 workers") as d:
        outs = [H(500, workers=w).bits for w in (1, 2, 8)]
        assert outs[0] == outs[1] == outs[2]
        d["ones"] = outs[0].count("1")


def test_07_computable_checker():
    with criterion(7, "threes conforms to 1/3 up to 50; loop fails at n=1"):
        third = DigitStream.constant(3, 10)
        assert check_computable(samples.m_threes(), 10, 50, third).verdict == ConformsUpTo(50)
        v = check_computable(samples.m_loop(), 10, 50).verdict
        assert isinstance(v, ViolatesAt) and v.n == 1 and "fuel" in v.detail


def test_08_approaching_checker():
    with criterion(8, "two-phase witness k=7 for m=1; parity inconclusive"):
        assert check_approaching(samples.m_two_phase(), 10, 1, 20).verdict == ConformsUpTo(20, witness=7)
        assert check_approaching(samples.m_parity(), 10, 1, 20).verdict == Inconclusive(20)


def test_09_diagonal_properties():
    with criterion(9, "diagonal differs on the diagonal, 1000 random lists") as d:
        rng = random.Random(20261018)
        violations = 0
        for _ in range(1000):
            base = rng.choice((2, 5, 10))
            n = rng.randint(1, 200)
            alphabet = "0123456789"[:base]
            streams = [DigitStream.from_string("".join(rng.choices(alphabet, k=n)), base) for _ in range(n)]
            out = diagonal(streams, n, base)
            prime = diagonal_prime(streams, n)
            for i in range(1, n + 1):
                got = int(out[i - 1])
                violations += got == streams[i - 1].digit(i)
                violations += got != (int(prime[i - 1]) + 1) % base
        assert violations == 0
        d["violations"] = violations


def test_10_computable_implies_approachable():
    with criterion(10, "samples passing criterion 7 approach for all m <= 50") as d:
        passing = []
        for name, make in samples.SAMPLES.items():
            if check_computable(make(), 10, 50).passed:
                passing.append(name)
        assert "threes" in passing
        counterexamples = 0
        for name in passing:
            machine = samples.SAMPLES[name]()
            for m in range(1, 51):
                v = check_approaching(machine, 10, m, 51).verdict
                if not (isinstance(v, ConformsUpTo) and v.witness <= 50):
                    counterexamples += 1
        assert counterexamples == 0
        d["machines"] = ",".join(passing)
