"""Equivalence verdicts for pairs of schemes.

Flows in the class are topologically equivalent exactly when their schemes
are, so every verdict here is about schemes:

* S^3 schemes are equivalent iff they meet the sphere in the same number
  of points (this count is complete).
* S^2 x S^1 schemes with a single intersection point are all equivalent.
* S^2 x S^1 schemes with different intersection counts are not equivalent;
  with equal counts above one, differing derived invariants refute
  equivalence and agreement proves nothing, giving UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from .bracket import DEFAULT_MAX_CROSSINGS
from .scheme import FAIL, Ambient, DerivedInvariant, Scheme, SchemeError, derived_invariant, validate_scheme

RULE_COUNT_COMPLETE = "S3 schemes: equal intersection counts are equivalent"
RULE_SINGLE_POINT = "S2xS1 schemes with a unique heteroclinic curve (b=1) are equivalent"
RULE_COUNT_DIFFERS = "intersection counts differ"
RULE_DERIVED_DIFFERS = "derived cut-and-close Jones multisets differ"
RULE_IDENTITY = "identical input object"


class Result(str, Enum):
    EQUIVALENT = "EQUIVALENT"
    NONEQUIVALENT = "NONEQUIVALENT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    result: Result
    certificate: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"result": self.result.value, "certificate": self.certificate}


def _require(s1: Scheme, s2: Scheme, ambient: Ambient, validate: bool) -> None:
    for s in (s1, s2):
        if s.ambient is not ambient:
            raise SchemeError(f"expected {ambient.value} schemes, got {s.ambient.value}")
    if validate:
        for s in (s1, s2):
            rep = validate_scheme(s)
            if rep.status == FAIL:
                bad = [c.name for c in rep.checks if c.status == FAIL]
                raise SchemeError(f"{s!r} fails validation: {', '.join(bad)}")


def classify_k5(s1: Scheme, s2: Scheme, validate: bool = True) -> Verdict:
    _require(s1, s2, Ambient.SPHERE_S3, validate)
    if s1.b == s2.b:
        return Verdict(Result.EQUIVALENT, {"rule": RULE_COUNT_COMPLETE, "b": [s1.b, s2.b]})
    return Verdict(
        Result.NONEQUIVALENT,
        {"rule": RULE_COUNT_DIFFERS, "invariant": "b", "left": s1.b, "right": s2.b},
    )


class _Cache:
    def __init__(self, max_crossings: int):
        self.max_crossings = max_crossings
        self._d: dict[int, tuple[Scheme, DerivedInvariant]] = {}

    def get(self, s: Scheme) -> DerivedInvariant:
        hit = self._d.get(id(s))
        if hit is None or hit[0] is not s:
            hit = (s, derived_invariant(s, self.max_crossings))
            self._d[id(s)] = hit
        return hit[1]


def classify_k4(
    s1: Scheme,
    s2: Scheme,
    validate: bool = True,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    _cache: _Cache | None = None,
) -> Verdict:
    _require(s1, s2, Ambient.S2xS1, validate)
    if s1.b == s2.b == 1:
        return Verdict(Result.EQUIVALENT, {"rule": RULE_SINGLE_POINT, "b": [1, 1]})
    if s1.b != s2.b:
        return Verdict(
            Result.NONEQUIVALENT,
            {"rule": RULE_COUNT_DIFFERS, "invariant": "b", "left": s1.b, "right": s2.b},
        )
    cache = _cache or _Cache(max_crossings)
    d1, d2 = cache.get(s1), cache.get(s2)
    if not (d1.complete and d2.complete):
        return Verdict(
            Result.UNKNOWN,
            {
                "reason": "derived invariant incomplete: closure over the crossing limit",
                "max_crossings": cache.max_crossings,
                "incomplete_strands": [list(d1.incomplete), list(d2.incomplete)],
            },
        )
    if d1.entries != d2.entries:
        return Verdict(
            Result.NONEQUIVALENT,
            {
                "rule": RULE_DERIVED_DIFFERS,
                "invariant": "derived_jones_multiset",
                "left": d1.to_dict()["entries"],
                "right": d2.to_dict()["entries"],
            },
        )
    return Verdict(
        Result.UNKNOWN,
        {
            "reason": "all computed invariants agree; equivalence is not certified",
            "b": s1.b,
            "derived_jones_multiset": d1.to_dict()["entries"],
        },
    )


def classify(
    s1: Scheme,
    s2: Scheme,
    time_reversed: bool = False,
    validate: bool = True,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    _cache: _Cache | None = None,
) -> Verdict:
    """Dispatch on the ambient.

    ``time_reversed`` marks flows whose saddles have Morse indices (2, 3);
    reversing time swaps the saddle roles and the verdict is computed for
    the reversed (1, 2) flows, which share the scheme.
    """
    if s1 is s2:
        v = Verdict(Result.EQUIVALENT, {"rule": RULE_IDENTITY})
    elif s1.ambient is not s2.ambient:
        raise SchemeError(f"ambient mismatch: {s1.ambient.value} vs {s2.ambient.value}")
    elif s1.ambient is Ambient.SPHERE_S3:
        v = classify_k5(s1, s2, validate)
    else:
        v = classify_k4(s1, s2, validate, max_crossings, _cache)
    if time_reversed:
        cert = dict(v.certificate)
        cert["time_reversed"] = "saddle indices (2,3) mapped to (1,2)"
        v = Verdict(v.result, cert)
    return v


def classify_family_pairwise(
    schemes: Sequence[Scheme],
    validate: bool = True,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_reversed: bool = False,
) -> list[list[Verdict]]:
    """Full verdict matrix; the diagonal is EQUIVALENT by identity."""
    if len({s.ambient for s in schemes}) > 1:
        raise SchemeError("pairwise classification needs a uniform ambient")
    if validate:
        for s in schemes:
            rep = validate_scheme(s)
            if rep.status == FAIL:
                raise SchemeError(f"{s!r} fails validation")
    cache = _Cache(max_crossings)
    n = len(schemes)
    out: list[list[Verdict | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = classify(
                schemes[i], schemes[j], time_reversed, False, max_crossings, cache
            )
    return out  # type: ignore[return-value]
