"""Schemes: a sphere and a knot in the cross-section, with their invariants.

A scheme lives either in S^2 x S^1 (four equilibria; the sphere does not
separate) or in S^3 (five equilibria).  In both cases the knot is given by a
slice word and the sphere is a horizontal level of it, so the number ``b``
of intersection points and their signs are read off the word; the index is
always computed, never taken from input.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from .bracket import DEFAULT_MAX_CROSSINGS, CrossingLimitError, jones
from .diagram.annular import (
    AnnularDiagram,
    SliceDiagram,
    SphereCutDiagram,
    check_declared_signs,
    parse_signs,
    simplify_ops,
)
from .diagram.planar import DiagramError, PlanarDiagram
from .diagram.simplify import simplify_bfs
from .laurent import LaurentPoly

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


class SchemeError(DiagramError):
    """Structurally invalid scheme (as opposed to a scheme failing a rule)."""


class Ambient(str, Enum):
    SPHERE_S3 = "S3"
    S2xS1 = "S2xS1"

    @property
    def k(self) -> int:
        return 5 if self is Ambient.SPHERE_S3 else 4

    @classmethod
    def parse(cls, text: str) -> Ambient:
        key = str(text).strip().replace(" ", "").replace("^", "").upper()
        aliases = {"S3": cls.SPHERE_S3, "SPHERE_S3": cls.SPHERE_S3, "S2XS1": cls.S2xS1}
        if key not in aliases:
            raise SchemeError(f"unknown ambient {text!r}; expected S3 or S2xS1")
        return aliases[key]


@dataclass(frozen=True, eq=False)
class Scheme:
    """Ambient cross-section plus the knot, with the sphere as a level of it.

    Equality is object identity on purpose: two schemes with equal data are
    still distinct inputs for classification.
    """

    ambient: Ambient
    knot: SliceDiagram
    name: str | None = None

    def __post_init__(self):
        want = AnnularDiagram if self.ambient is Ambient.S2xS1 else SphereCutDiagram
        if not isinstance(self.knot, want):
            raise SchemeError(f"{self.ambient.value} schemes need a {want.__name__}")
        try:
            self.knot.validate()
        except DiagramError as exc:
            raise SchemeError(str(exc)) from exc

    @property
    def b(self) -> int:
        return self.knot.b

    @property
    def cut_signs(self) -> tuple[int, ...]:
        return self.knot.cut_signs

    @property
    def index(self) -> int:
        return sum(self.cut_signs)

    @property
    def k(self) -> int:
        return self.ambient.k

    def planar(self) -> PlanarDiagram:
        """The knot as a planar diagram (annular closure for S^2 x S^1)."""
        return self.knot.to_planar()

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"ambient": self.ambient.value}
        if self.ambient is Ambient.S2xS1:
            out["annular_code"] = self.knot.word()
        else:
            out["sphere_code"] = self.knot.word()
        out["b"] = self.b
        out["cut_signs"] = list(self.cut_signs)
        if self.name:
            out["name"] = self.name
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Scheme:
        if not isinstance(data, dict) or "ambient" not in data:
            raise SchemeError("scheme JSON must be an object with an 'ambient' field")
        amb = Ambient.parse(data["ambient"])
        declared = parse_signs(data["cut_signs"]) if "cut_signs" in data else None
        try:
            if amb is Ambient.S2xS1:
                if "annular_code" not in data:
                    raise SchemeError("S2xS1 scheme needs 'annular_code'")
                b = data.get("b", len(declared) if declared is not None else None)
                if b is None:
                    raise SchemeError("S2xS1 scheme needs 'b' or 'cut_signs'")
                knot: SliceDiagram = AnnularDiagram.parse(str(data["annular_code"]), int(b))
            else:
                if "sphere_code" not in data:
                    raise SchemeError("S3 scheme needs 'sphere_code'")
                knot = SphereCutDiagram.parse(str(data["sphere_code"]))
                if "b" in data and int(data["b"]) != knot.b:
                    raise SchemeError(f"declared b={data['b']} but the sphere meets {knot.b} strands")
            if declared is not None:
                if knot.num_components != 1:
                    raise SchemeError("cut signs are only defined for a knot")
                check_declared_signs(knot, declared)
        except SchemeError:
            raise
        except DiagramError as exc:
            raise SchemeError(str(exc)) from exc
        return cls(amb, knot, data.get("name"))

    @classmethod
    def from_json(cls, text: str) -> Scheme:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemeError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | Path) -> Scheme:
        """Read a ``.scheme`` (JSON) or ``.ann`` (annular text) file."""
        p = Path(path)
        text = p.read_text()
        if p.suffix == ".ann":
            try:
                return cls(Ambient.S2xS1, AnnularDiagram.parse(text), p.stem)
            except SchemeError:
                raise
            except DiagramError as exc:
                raise SchemeError(str(exc)) from exc
        return cls.from_json(text)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Scheme{label} {self.ambient.value} b={self.b} word={self.knot.word()!r}>"


# -- validation -----------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
        }


def intersection_invariants(s: Scheme) -> tuple[int, int]:
    """(number of intersection points, signed intersection index)."""
    return s.b, s.index


def validate_scheme(s: Scheme, budget: int = 20_000) -> ValidationReport:
    """Rule checks for a scheme.

    * parity/index: b odd with index 1 in S^2 x S^1, b even with index 0 in S^3;
    * single component;
    * the knot is trivial: in S^2 x S^1 some level sphere meets it once, after
      a bounded simplification (otherwise INCONCLUSIVE); in S^3 a bounded
      Reidemeister search must reach the crossingless diagram (a Jones
      polynomial different from 1 is a FAIL, anything else INCONCLUSIVE).
    """
    checks = []
    comps = s.knot.num_components
    checks.append(
        Check("single_component", PASS if comps == 1 else FAIL, f"{comps} component(s)")
    )
    if comps != 1:
        checks.append(Check("parity_index", FAIL, "intersection index needs a single knot"))
        checks.append(Check("trivial_knot", FAIL, "not a knot"))
        return ValidationReport(tuple(checks))
    b, index = intersection_invariants(s)
    if s.ambient is Ambient.S2xS1:
        ok = b % 2 == 1 and index == 1
        want = "b odd, index 1"
    else:
        ok = b % 2 == 0 and index == 0
        want = "b even, index 0"
    checks.insert(0, Check("parity_index", PASS if ok else FAIL, f"b={b}, index={index}; need {want}"))
    checks.append(_triviality(s, budget))
    return ValidationReport(tuple(checks))


def _triviality(s: Scheme, budget: int) -> Check:
    knot = s.knot
    if s.ambient is Ambient.S2xS1:
        found = _lightbulb_level(knot, budget)
        if found is not None:
            return Check("trivial_knot", PASS, found)
        return Check(
            "trivial_knot",
            INCONCLUSIVE,
            "no level meeting the knot once found within the simplification budget",
        )
    ops, _, _ = simplify_ops(knot.ops, None, budget)
    if not any(k in ("o", "u") for k, _ in ops):
        return Check("trivial_knot", PASS, "slice word simplifies to a crossingless circle")
    pd = SphereCutDiagram(ops, 0).to_planar()
    res = simplify_bfs(pd, pd.n + 2, max(1, budget // 10))
    if res.crossings == 0:
        return Check("trivial_knot", PASS, f"Reidemeister search reached 0 crossings ({res.states} states)")
    try:
        j = jones(res.diagram)
    except CrossingLimitError:
        j = None
    if j is not None and j != 1:
        return Check("trivial_knot", FAIL, f"Jones polynomial {j.to_t_text()} differs from 1")
    return Check("trivial_knot", INCONCLUSIVE, f"search left {res.crossings} crossings ({res.status})")


def _lightbulb_level(knot: SliceDiagram, budget: int) -> str | None:
    w = knot.level_widths()
    if 1 in w:
        return f"level {w.index(1)} meets the knot in one point"
    n = len(knot.ops)
    share = max(1, budget // max(n, 1))
    # every level is a sphere isotopic to the glued one, so any rotation of
    # the cyclic word may be simplified
    for r in range(n):
        ops, _, _ = simplify_ops(knot.ops[r:] + knot.ops[:r], None, share)
        widths = [knot.widths[r]]
        for op in ops:
            widths.append(widths[-1] + {"cup": 2, "cap": -2}.get(op[0], 0))
        if 1 in widths:
            return f"after simplifying from level {r}, a level meets the knot in one point"
    return None


# -- cut and close ----------------------------------------------------------------


def cut_and_close(s: Scheme, removed_strand: int) -> PlanarDiagram:
    """Link in S^3 left after deleting one arc of the knot and closing the rest.

    The arcs of the knot between consecutive points on the sphere are
    numbered 0..b-1 by their first endpoint around the rectangle boundary
    (bottom left to right, then top right to left).
    """
    if s.ambient is not Ambient.S2xS1:
        raise SchemeError("cut-and-close applies to S2xS1 schemes")
    if not isinstance(removed_strand, int) or not 0 <= removed_strand < s.b:
        raise SchemeError(f"strand {removed_strand!r} does not cross the cut (b={s.b})")
    return s.knot.cut_and_close(removed_strand)


def poly_key(p: LaurentPoly) -> tuple:
    return tuple(p.terms())


@dataclass(frozen=True)
class DerivedInvariant:
    """Multiset over strand choices of the multisets of component Jones polynomials."""

    entries: tuple[tuple[LaurentPoly, ...], ...]
    incomplete: tuple[int, ...] = ()  # strands whose closure exceeded the crossing limit
    per_strand: tuple[tuple[LaurentPoly, ...] | None, ...] = field(default=(), compare=False)

    @property
    def complete(self) -> bool:
        return not self.incomplete

    @property
    def status(self) -> str:
        return "COMPLETE" if self.complete else "INCOMPLETE"

    def to_dict(self, t: bool = True) -> dict[str, Any]:
        fmt = (lambda p: p.to_t_text()) if t else (lambda p: p.to_text())
        return {
            "status": self.status,
            "entries": [[fmt(p) for p in e] for e in self.entries],
            "incomplete_strands": list(self.incomplete),
        }


def _strand_entry(args) -> tuple[LaurentPoly, ...] | None:
    s, strand, limit = args
    link = cut_and_close(s, strand)
    if link.n > limit:
        return None
    polys = [jones(c, limit) for c in link.component_diagrams()]
    return tuple(sorted(polys, key=poly_key))


def derived_invariant(
    s: Scheme, max_crossings: int = DEFAULT_MAX_CROSSINGS, workers: int = 1
) -> DerivedInvariant:
    """Cut-and-close over every strand choice; choice-independent by construction."""
    if s.ambient is not Ambient.S2xS1:
        raise SchemeError("derived invariant is defined for S2xS1 schemes")
    args = [(s, strand, max_crossings) for strand in range(s.b)]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            per = list(ex.map(_strand_entry, args))
    else:
        per = [_strand_entry(a) for a in args]
    done = [e for e in per if e is not None]
    entries = tuple(sorted(done, key=lambda e: tuple(poly_key(p) for p in e)))
    missing = tuple(i for i, e in enumerate(per) if e is None)
    return DerivedInvariant(entries, missing, tuple(per))


# -- admissibility ----------------------------------------------------------------


class Manifold(str, Enum):
    S4 = "S4"
    CP2 = "CP2"
    S3xS1 = "S3xS1"
    S3xS1_NONORIENTABLE = "S3~xS1"
    CP2_SUM_CP2 = "CP2#CP2"
    S2xS2 = "S2xS2"
    S2xS2_TWISTED = "S2~xS2"


# rational Betti numbers b0..b4
BETTI: dict[Manifold, tuple[int, int, int, int, int]] = {
    Manifold.S4: (1, 0, 0, 0, 1),
    Manifold.CP2: (1, 0, 1, 0, 1),
    Manifold.S3xS1: (1, 1, 0, 1, 1),
    Manifold.S3xS1_NONORIENTABLE: (1, 1, 0, 0, 0),
    Manifold.CP2_SUM_CP2: (1, 0, 2, 0, 1),
    Manifold.S2xS2: (1, 0, 2, 0, 1),
    Manifold.S2xS2_TWISTED: (1, 0, 2, 0, 1),
}

ADMISSIBLE: frozenset[tuple[int, int, int, Manifold]] = frozenset(
    [
        (6, 1, 1, Manifold.S4),
        (6, 1, 3, Manifold.S4),
        (6, 3, 3, Manifold.S4),
        (4, 1, 2, Manifold.S4),
        (4, 2, 3, Manifold.S4),
        (5, 1, 2, Manifold.CP2),
        (5, 2, 3, Manifold.CP2),
        (4, 1, 3, Manifold.S3xS1),
        (4, 1, 3, Manifold.S3xS1_NONORIENTABLE),
        (4, 2, 2, Manifold.CP2_SUM_CP2),
        (4, 2, 2, Manifold.S2xS2),
        (4, 2, 2, Manifold.S2xS2_TWISTED),
    ]
)


@dataclass(frozen=True)
class FlowClassDescriptor:
    k: int
    mu: int
    nu: int
    manifold: Manifold

    def equilibria(self) -> tuple[int, int, int, int, int] | None:
        """Equilibria per Morse index (k0..k4), or None if no count fits.

        Besides the two saddles there are k-2 nodes.  Each node beyond one
        sink and one source must be paired with a saddle of index 1 (an extra
        sink) or 3 (an extra source); index-1 saddles are used first.
        """
        if not (1 <= self.mu <= 3 and 1 <= self.nu <= 3 and self.k >= 4):
            return None
        saddles = [0, 0, 0, 0, 0]
        saddles[self.mu] += 1
        saddles[self.nu] += 1
        extra = self.k - 4
        a = min(saddles[1], extra)
        c = extra - a
        if c > saddles[3]:
            return None
        return (1 + a, saddles[1], saddles[2], saddles[3], 1 + c)

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "mu": self.mu, "nu": self.nu, "manifold": self.manifold.value}


def alternating_sum(v) -> int:
    return sum((-1) ** i * x for i, x in enumerate(v))


def morse_equality(d: FlowClassDescriptor) -> bool:
    kv = d.equilibria()
    return kv is not None and alternating_sum(kv) == alternating_sum(BETTI[d.manifold])


def check_admissibility(d: FlowClassDescriptor) -> bool:
    return (
        d.mu <= d.nu
        and (d.k, d.mu, d.nu, d.manifold) in ADMISSIBLE
        and morse_equality(d)
    )
