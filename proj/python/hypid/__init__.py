"""Extended generalized hypergeometric functions and identity verification.

Thin wrapper over the compiled core.  Rational parameters cross the
boundary as strings ("3/2"), ints, or :class:`fractions.Fraction`; exact
results come back as rational strings, float results as decimal strings.
"""

from fractions import Fraction

from ._hypid import DomainError, eval, identities, probe, sample, verify

__all__ = [
    "DomainError",
    "eval",
    "eval_fraction",
    "identities",
    "probe",
    "sample",
    "verify",
]


def eval_fraction(upper, lower, arg="1"):
    """Exact evaluation returning a :class:`fractions.Fraction`."""
    return Fraction(eval(upper, lower, arg=arg, mode="exact"))
