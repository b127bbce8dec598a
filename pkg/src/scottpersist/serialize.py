"""JSON helpers: rationals travel as ``"num/den"`` strings."""
from __future__ import annotations

import json
from fractions import Fraction


def rat_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(x) -> Fraction:
    return Fraction(x.strip()) if isinstance(x, str) else Fraction(x)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def fmt_point(p) -> str:
    return "(" + ", ".join(rat_str(c) for c in p) + ")"
