"""Exact computations in Dist(SL2) over F_p and Frobenius descent on P^1."""

from .arith import FormulaMismatch, IntegralityError, Prime
from .expr import evaluate, parse
from .frobsplit import fr, fr_prime, phi
from .norm import delta
from .pbw import DistElem, HPoly, mul, to_text
from .suites import SUITES, run_suite

__all__ = [
    "DistElem", "HPoly", "FormulaMismatch", "IntegralityError", "Prime", "SUITES",
    "delta", "evaluate", "fr", "fr_prime", "mul", "parse", "phi", "run_suite", "to_text",
]
