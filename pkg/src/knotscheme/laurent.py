"""Exact integer Laurent polynomials in a single variable.

Coefficients are Python ints, so products never overflow; canonical form
drops zero coefficients eagerly so that equality is plain dict equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "add",
    "mul",
    "substitute_mirror",
    "parse_poly",
    "DELTA",
]


class LaurentPoly:
    """Immutable Laurent polynomial ``sum(c_e * A**e)`` with integer coefficients."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[e] = acc.get(e, 0) + c
        self._coeffs = {e: c for e, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def terms(self) -> Iterator[tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return next(iter(self._coeffs))

    @property
    def max_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return next(reversed(self._coeffs))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._coeffs) != 1 or abs(next(iter(self._coeffs.values()))) != 1:
                raise ValueError("only unit monomials have inverses")
            (e, c), = self._coeffs.items()
            return LaurentPoly({e * n: c ** -n})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def mirror(self) -> LaurentPoly:
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def to_text(self, var: str = "A") -> str:
        """Render as a sorted sum, e.g. ``-A^-16 + A^-12 + A^-4``."""
        if not self._coeffs:
            return "0"
        return _render(list(self._coeffs.items()), var, lambda e: str(e))

    def to_t_text(self) -> str:
        """Render under ``t = A^-4`` in descending powers of t."""
        if not self._coeffs:
            return "0"
        items = sorted(
            ((Fraction(-e, 4), c) for e, c in self._coeffs.items()), reverse=True
        )
        return _render(items, "t", _fmt_fraction)

    def to_t_dict(self) -> dict[str, int]:
        return {str(Fraction(-e, 4)): c for e, c in self._coeffs.items()}

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()


def _fmt_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"({f})"


def _render(items, var, fmt) -> str:
    parts = []
    for e, c in items:
        if e == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            power = "" if e == 1 else f"^{fmt(e)}"
            body = f"{mag}{var}{power}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"""^(?P<sign>[+-]?)\s*
        (?:(?P<coef>\d+)\s*\*?\s*)?
        (?:(?P<var>[A-Za-z])(?:\^\(?(?P<exp>[+-]?\d+)\)?)?)?$""",
    re.VERBOSE,
)


def parse_poly(text: str, var: str = "A") -> LaurentPoly:
    """Parse the output of :meth:`LaurentPoly.to_text` (and looser variants)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPoly()
    # split before every sign that is not an exponent sign
    chunks = re.split(r"(?<![\^(])(?=[+-])", s)
    out: dict[int, int] = {}
    for chunk in chunks:
        if not chunk:
            continue
        m = _TERM.match(chunk)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse term {chunk!r}")
        if m.group("var") is not None and m.group("var") != var:
            raise ValueError(f"unexpected variable {m.group('var')!r}")
        coef = int(m.group("coef")) if m.group("coef") else 1
        if m.group("sign") == "-":
            coef = -coef
        if m.group("var") is None:
            exp = 0
        else:
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        out[exp] = out.get(exp, 0) + coef
    return LaurentPoly(out)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def substitute_mirror(p: LaurentPoly) -> LaurentPoly:
    """Send A to A^-1."""
    return p.mirror()


# loop value of the bracket state sum
DELTA = LaurentPoly({2: -1, -2: -1})
