"""Named, parameterised experiments with line-oriented pass/fail reports."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Union

from . import approx, codec, dovetail, enumeration, oracles, samples
from .enumeration import Program

__all__ = ["ExperimentResult", "UnknownExperiment", "EXPERIMENTS", "run_experiment", "read_config"]


class UnknownExperiment(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"UnknownExperiment: {self.name!r} (known: {', '.join(sorted(EXPERIMENTS))})"


@dataclass
class ExperimentResult:
    name: str
    params: dict[str, str]
    passed: bool = True
    values: dict[str, object] = field(default_factory=dict)
    log: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.passed = False
        self.log.append(f"FAIL {message}")

    def lines(self) -> list[str]:
        out = [f"experiment\t{self.name}", f"status\t{'PASS' if self.passed else 'FAIL'}"]
        out += [f"param.{k}\t{v}" for k, v in sorted(self.params.items())]
        out += [f"{k}\t{v}" for k, v in self.values.items()]
        out += [f"log\t{line}" for line in self.log]
        return out


def _int(params, key, default):
    return int(params.get(key, default))


def exp_roundtrip(params) -> ExperimentResult:
    L = _int(params, "max-number-length", 30)
    res = ExperimentResult("roundtrip", {"max-number-length": str(L)})
    t0 = time.perf_counter()
    scanned = [t for length in range(1, L + 1) for t in enumeration.scan_length(length)]
    expected = oracles.construct_encodings(L)
    if scanned != expected:
        res.fail(f"scan found {len(scanned)} encodings, constructive oracle {len(expected)}")
    for text in scanned:
        machine = codec.decode(text)
        if codec.encode(machine) != text or codec.decode(codec.encode(machine)) != machine:
            res.fail(f"round trip broke for {text}")
    res.values["machines"] = len(scanned)
    res.values["seconds"] = round(time.perf_counter() - t0, 3)
    return res


def exp_first_machine(params) -> ExperimentResult:
    res = ExperimentResult("first-machine", {})
    first = enumeration.next_valid_number(None)
    shortest = oracles.construct_encodings(26)
    oracle_first = codec.to_number(shortest[0]) if shortest else None
    res.values["first"] = first
    res.values["oracle_first"] = oracle_first
    listed = codec.machine_number(enumeration.enumerate_machines(1)[0][1])
    if not (first == oracle_first == listed):
        res.fail("first machine disagrees between scan, oracle and enumerate_machines")
    return res


def exp_h_monotone(params) -> ExperimentResult:
    N = _int(params, "N", 200)
    workers = _int(params, "workers", 1)
    res = ExperimentResult("h-monotone", {"N": str(N), "workers": str(workers)})
    state = dovetail.start()
    prev = ""
    for n in range(1, N + 1):
        state = dovetail.advance(state, n, workers)
        bits = state.bits.bits
        for i, (a, b) in enumerate(zip(prev, bits)):
            if a == "1" and b == "0":
                res.fail(f"bit {i} dropped from 1 to 0 at horizon {n}")
        for i in range(len(bits)):
            if bits[i] == "1" and (i >= len(prev) or prev[i] == "0"):
                res.log.append(f"flip\tbit={i}\thorizon={n}")
        prev = bits
    fresh = dovetail.H(N).bits
    if fresh != prev:
        res.fail("incremental bits differ from a fresh run")
    if state.steps > N * N:
        res.fail(f"{state.steps} simulated steps exceed N^2 = {N * N}")
    res.values["ones"] = prev.count("1")
    res.values["simulated_steps"] = state.steps
    res.values["bits"] = prev
    return res


def exp_h_controlled(params) -> ExperimentResult:
    N = _int(params, "N", 5000)
    res = ExperimentResult("h-controlled", {"N": str(N)})
    universe = [
        Program(samples.m_halt()),
        Program(samples.m_loop()),
        Program(samples.m_halt_after(3)),
    ]
    state = dovetail.start(universe)
    first_one = {}
    for n in range(1, N + 1):
        state = dovetail.advance(state, n)
        for i, b in enumerate(state.bits.bits):
            if b == "1":
                first_one.setdefault(i, n)
    res.values["flip_horizons"] = ",".join(f"{i}:{first_one.get(i)}" for i in range(3))
    if first_one != {0: 1, 2: 3}:
        res.fail(f"unexpected flip horizons {first_one}")
    return res


def exp_schedule(params) -> ExperimentResult:
    N = _int(params, "N", 500)
    res = ExperimentResult("schedule", {"N": str(N)})
    outs = {w: dovetail.H(N, workers=w).bits for w in (1, 2, 8)}
    if len(set(outs.values())) != 1:
        res.fail("bit strings differ across worker counts")
    res.values["ones"] = outs[1].count("1")
    return res


def exp_diagonal_differs(params) -> ExperimentResult:
    n_max = _int(params, "n", 100)
    trials = _int(params, "trials", 200)
    seed = _int(params, "seed", 0)
    res = ExperimentResult("diagonal-differs", {"n": str(n_max), "trials": str(trials), "seed": str(seed)})
    rng = random.Random(seed)
    violations = 0
    for _ in range(trials):
        base = rng.choice((2, 5, 10))
        n = rng.randint(1, n_max)
        streams = [
            approx.DigitStream.from_string(
                "".join(str(rng.randrange(base)) for _ in range(n)), base
            )
            for _ in range(n)
        ]
        d = approx.diagonal(streams, n, base)
        dp = approx.diagonal_prime(streams, n)
        for i in range(1, n + 1):
            if int(d[i - 1], 36) == streams[i - 1].digit(i):
                violations += 1
            if int(d[i - 1], 36) != (int(dp[i - 1], 36) + 1) % base:
                violations += 1
    res.values["violations"] = violations
    if violations:
        res.fail(f"{violations} diagonal violations")
    return res


def exp_checkers(params) -> ExperimentResult:
    max_n = _int(params, "max-n", 50)
    res = ExperimentResult("checkers", {"max-n": str(max_n)})
    threes = approx.check_computable(samples.m_threes(), 10, max_n, approx.DigitStream.constant(3, 10))
    loop = approx.check_computable(samples.m_loop(), 10, max_n)
    two = approx.check_approaching(samples.m_two_phase(), 10, 1, 20)
    parity = approx.check_approaching(samples.m_parity(), 10, 1, 20)
    res.values.update(threes=threes.verdict, loop=loop.verdict, two_phase=two.verdict, parity=parity.verdict)
    if threes.verdict != approx.ConformsUpTo(max_n):
        res.fail("threes machine did not conform")
    if loop.verdict != approx.ViolatesAt(1, "did not halt within fuel"):
        res.fail("loop machine was not rejected at n=1")
    if two.verdict != approx.ConformsUpTo(20, witness=7):
        res.fail("two-phase witness is not 7")
    if parity.verdict != approx.Inconclusive(20):
        res.fail("parity machine was not inconclusive")
    return res


EXPERIMENTS: dict[str, Callable[[dict], ExperimentResult]] = {
    "roundtrip": exp_roundtrip,
    "first-machine": exp_first_machine,
    "h-monotone": exp_h_monotone,
    "h-controlled": exp_h_controlled,
    "schedule": exp_schedule,
    "diagonal-differs": exp_diagonal_differs,
    "checkers": exp_checkers,
}


def read_config(path: Union[str, Path]) -> dict[str, str]:
    """``key<TAB>value`` (or ``key = value``) lines; ``#`` starts a comment."""
    params = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "\t" in line:
            key, value = line.split("\t", 1)
        elif "=" in line:
            key, value = line.split("=", 1)
        else:
            key, _, value = line.partition(" ")
        params[key.strip()] = value.strip()
    return params


def run_experiment(params: dict[str, str]) -> ExperimentResult:
    params = dict(params)
    name = params.pop("experiment", None)
    if name not in EXPERIMENTS:
        raise UnknownExperiment(str(name))
    return EXPERIMENTS[name](params)
