"""Coefficient fields: exact rationals or a prime field F_p."""
from __future__ import annotations

import contextlib
import contextvars
import os
from fractions import Fraction

DEFAULT_PRIME = 32003


class RationalField:
    name = "rational"
    prime = None

    def coerce(self, x) -> Fraction:
        return x if type(x) is Fraction else Fraction(x)

    def reduce(self, x):
        return x

    def inv(self, x):
        return 1 / x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    name = "fp"

    def __init__(self, prime: int = DEFAULT_PRIME):
        if prime < 2 or any(prime % d == 0 for d in range(2, int(prime**0.5) + 1)):
            raise ValueError(f"{prime} is not prime")
        if prime >= 2**31:
            raise ValueError("prime must be below 2**31 for the 64-bit kernel")
        self.prime = prime

    def coerce(self, x) -> int:
        x = Fraction(x)
        den = x.denominator % self.prime
        if den == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.prime}")
        return x.numerator * pow(den, -1, self.prime) % self.prime

    def reduce(self, x):
        return x % self.prime

    def inv(self, x):
        return pow(x, -1, self.prime)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.prime == self.prime

    def __hash__(self):
        return hash(("fp", self.prime))

    def __repr__(self):
        return f"PrimeField({self.prime})"


def parse_field(spec: str | None):
    """Parse ``rational`` or ``fp:<prime>`` (``fp`` alone uses 32003)."""
    if spec is None or spec.strip() in ("", "rational", "q", "Q"):
        return RationalField()
    spec = spec.strip()
    if spec == "fp":
        return PrimeField()
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown coefficient field {spec!r}")


_active = contextvars.ContextVar(
    "scottpersist_field", default=parse_field(os.environ.get("SCOTTPERSIST_FIELD"))
)


def active_field():
    return _active.get()


@contextlib.contextmanager
def use_field(field):
    if isinstance(field, str):
        field = parse_field(field)
    token = _active.set(field)
    try:
        yield field
    finally:
        _active.reset(token)
