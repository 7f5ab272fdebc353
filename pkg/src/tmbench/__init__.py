"""Turing-machine workbench: numbering, dovetailed halting bits, approachability checks."""

from .approx import (
    ConformsUpTo,
    DigitStream,
    Inconclusive,
    ViolatesAt,
    check_approaching,
    check_computable,
    diagonal,
    diagonal_prime,
    stream_of_machine,
)
from .codec import decode, encode, from_number, make_machine, to_number, validate
from .dovetail import H, advance, h_digit_stream
from .enumeration import (
    Program,
    enumerate_inputs,
    enumerate_machines,
    index_of,
    next_valid_number,
    program_of,
)
from .tm import Configuration, Machine, Move, Transition, initial_config, read_output, resume, run, step

__version__ = "0.1.0"
