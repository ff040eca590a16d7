"""Exact rationals with p-adic valuation.

Scalars are plain :class:`fractions.Fraction` values (normalized, so the
zero is always ``0/1``).  The prime travels with each computation rather
than with each scalar.  Every index and scale value in the package is a
power of ``p`` and is stored only through its integer exponent.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "INF",
    "PExponent",
    "Rational",
    "check_prime",
    "format_exponent",
    "format_rational",
    "is_prime",
    "norm",
    "parse_rational",
    "to_rational",
    "unit_part",
    "vp",
    "vp_int",
]

# Valuation of zero.
INF = math.inf

PExponent = Union[int, float]  # an int, or INF for the value 0
Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def check_prime(p) -> int:
    from .errors import NonPrimeError

    if not is_prime(p):
        raise NonPrimeError(f"p must be a prime number, got {p!r}")
    return p


def vp_int(n: int, p: int) -> PExponent:
    """Multiplicity of ``p`` in the integer ``n``; ``INF`` for 0."""
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(q, p: int) -> PExponent:
    """p-adic valuation ``v`` of a rational, so that ``|q|_p = p**(-v)``.

    >>> vp(Fraction(1, 3), 3)
    -1
    >>> vp(12, 2), vp(12, 3)
    (2, 1)
    """
    check_prime(p)
    q = to_rational(q)
    if q == 0:
        return INF
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def norm(q, p: int) -> Fraction:
    """The p-adic absolute value as an exact rational (0 for 0)."""
    v = vp(q, p)
    if v == INF:
        return Fraction(0)
    return Fraction(p) ** (-v)


def unit_part(q, p: int) -> Fraction:
    """``q / p**vp(q)``; a rational whose numerator and denominator are prime to p."""
    q = to_rational(q)
    if q == 0:
        raise ValueError("zero has no unit part")
    return q / Fraction(p) ** vp(q, p)


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` (base 10, optional leading minus)."""
    from .errors import InputError

    if not isinstance(text, str):
        raise InputError(f"expected a rational string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise InputError(f"malformed rational {text!r}; expected 'a' or 'a/b'")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_exponent(e: PExponent, p: int) -> str:
    """Render an exponent as ``p^e`` (value) and ``e·log p`` (logarithm)."""
    if e == INF:
        return "0 (log undefined)"
    return f"{p}^{e} = exp({e}*log {p})"
