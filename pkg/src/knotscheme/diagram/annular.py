"""Knots in a thickened cut sphere, described by slice words.

A slice word reads a rectangle diagram from bottom to top, one elementary
event per slice:

* ``cupJ``  two new strands appear at positions J, J+1 (a local minimum),
* ``capJ``  the strands at J, J+1 are joined (a local maximum),
* ``oJ``    the strand at J crosses over the strand at J+1,
* ``uJ``    the strand at J crosses under the strand at J+1.

Positions are 1-based.  Every level between slices is a horizontal line, and
the number of strands meeting it is its width.

For a knot in S^2 x S^1 (:class:`AnnularDiagram`) the top of the rectangle
is glued to the bottom, position i to position i, and the glued level is
the non-separating sphere.  For a knot in S^3 (:class:`SphereCutDiagram`)
the word starts and ends with no strands, and a ``|`` token marks the level
that carries the sphere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .planar import DiagramError, PlanarDiagram

Op = tuple[str, int]

_KINDS = ("cup", "cap", "o", "u")


def parse_ops(text: str) -> tuple[tuple[Op, ...], int | None]:
    """Parse whitespace separated slice tokens; returns (ops, marker level)."""
    ops: list[Op] = []
    marker = None
    for tok in text.split():
        if tok == "|":
            if marker is not None:
                raise DiagramError("more than one cut marker")
            marker = len(ops)
            continue
        for kind in ("cup", "cap", "o", "u"):
            if tok.startswith(kind) and tok[len(kind):].isdigit():
                ops.append((kind, int(tok[len(kind):])))
                break
        else:
            raise DiagramError(f"malformed slice token {tok!r}")
    return tuple(ops), marker


def format_ops(ops: Sequence[Op], marker: int | None = None) -> str:
    toks = [f"{k}{j}" for k, j in ops]
    if marker is not None:
        toks.insert(marker, "|")
    return " ".join(toks)


def _delta(op: Op) -> int:
    return {"cup": 2, "cap": -2}.get(op[0], 0)


# -- traversal records -------------------------------------------------------
#
# Crossing half-edges are listed counterclockwise as SE, NE, NW, SW.  The
# strand entering from the lower-left (position J) runs SW -> NE, the one from
# the lower-right runs SE -> NW.

_SE, _NE, _NW, _SW = 0, 1, 2, 3


@dataclass(frozen=True)
class Passage:
    """One pass of the curve through a crossing (``kind='x'``) or the cut (``kind='cut'``)."""

    kind: str
    key: object = None  # crossing key
    in_idx: int = 0
    out_idx: int = 0
    pos: int = 0  # cut position
    sign: int = 0  # cut direction, +1 upward


@dataclass(frozen=True)
class CrossingRecord:
    """Local picture of a crossing: which opposite pair of ccw half-edges is over."""

    over_pair: int  # 0: half-edges 0 and 2 are over, 1: half-edges 1 and 3


def build_pd(
    components: Sequence[Sequence[Passage]], records: dict
) -> PlanarDiagram:
    """Assemble an oriented PD from passage cycles.

    ``records`` maps crossing keys to :class:`CrossingRecord`.  Components
    with no crossing passages become free loops.
    """
    slots: dict[object, list[int | None]] = {}
    passes: dict[object, list[Passage]] = {}
    label = 0
    free = 0
    for comp in components:
        xs = [p for p in comp if p.kind == "x"]
        if not xs:
            free += 1
            continue
        first = label + 1
        for i, p in enumerate(xs):
            label += 1
            nxt = xs[(i + 1) % len(xs)]
            slots.setdefault(p.key, [None] * 4)[p.out_idx] = label
            slots.setdefault(nxt.key, [None] * 4)[nxt.in_idx] = label
            passes.setdefault(p.key, []).append(p)
        assert label - first + 1 == len(xs)
    crossings = []
    signs = []
    for key in sorted(slots, key=_key_order):
        hal = slots[key]
        rec = records[key]
        under_pair = {0, 2} if rec.over_pair == 1 else {1, 3}
        ps = passes[key]
        if len(ps) != 2 or None in hal:
            raise DiagramError(f"crossing {key!r} is not passed exactly twice")
        under = next(p for p in ps if p.in_idx in under_pair)
        over = next(p for p in ps if p is not under)
        r = under.in_idx
        crossings.append(tuple(hal[(r + k) % 4] for k in range(4)))
        rel = (over.in_idx - r) % 4
        signs.append(1 if rel == 3 else -1)
    return PlanarDiagram(tuple(crossings), tuple(signs), free).validate()


def _key_order(key):
    # rectangle crossings first in slice order, then closure crossings
    tag, *rest = key
    return (0 if tag == "w" else 1, tuple(rest))


@dataclass(frozen=True)
class Arc:
    """Piece of the knot between two consecutive passages through the cut."""

    start: tuple[str, int]  # ("bottom"|"top", position)
    end: tuple[str, int]
    passages: tuple[Passage, ...]

    def crossing_keys(self) -> set:
        return {p.key for p in self.passages if p.kind == "x"}


class SliceDiagram:
    """Shared tracing machinery for slice words."""

    periodic: bool

    def __init__(self, ops: Sequence[Op], width: int, cut_level: int):
        self.ops: tuple[Op, ...] = tuple((str(k), int(j)) for k, j in ops)
        self.width = int(width)
        self.cut_level = int(cut_level)

    # equality on the defining data
    def _data(self):
        return (type(self).__name__, self.ops, self.width, self.cut_level)

    def __eq__(self, other):
        return isinstance(other, SliceDiagram) and self._data() == other._data()

    def __hash__(self):
        return hash(self._data())

    @property
    def num_levels(self) -> int:
        return len(self.ops)

    @cached_property
    def widths(self) -> tuple[int, ...]:
        """Strand count at levels 0..len(ops)."""
        w = [self.width]
        for l, (kind, j) in enumerate(self.ops):
            cur = w[-1]
            if kind not in _KINDS:
                raise DiagramError(f"unknown slice kind {kind!r}")
            if kind == "cup":
                ok = 1 <= j <= cur + 1
            else:
                ok = 1 <= j <= cur - 1
            if not ok:
                raise DiagramError(f"slice {l} ({kind}{j}) out of range for width {cur}")
            w.append(cur + _delta((kind, j)))
        return tuple(w)

    def validate(self):
        w = self.widths
        if self.periodic and w[-1] != w[0]:
            raise DiagramError(f"top width {w[-1]} differs from bottom width {w[0]}")
        if not self.periodic and (w[0] != 0 or w[-1] != 0):
            raise DiagramError("a sphere-cut word must start and end with no strands")
        if not 0 <= self.cut_level <= len(self.ops):
            raise DiagramError("cut level out of range")
        return self

    @property
    def b(self) -> int:
        return self.widths[self.cut_level]

    # -- tracing -------------------------------------------------------------

    def _norm_level(self, l: int) -> int:
        if self.periodic and l == len(self.ops):
            return 0
        return l

    def _step(self, l: int, p: int, up: bool):
        """Leave point (l, p) upward or downward; returns (passage|None, l', p', up')."""
        L = len(self.ops)
        if up:
            if not self.periodic and l == L:
                raise DiagramError("curve leaves the top of the word")
            kind, j = self.ops[l]
            if kind in ("o", "u"):
                if p == j:
                    return Passage("x", ("w", l), _SW, _NE), l + 1, j + 1, True
                if p == j + 1:
                    return Passage("x", ("w", l), _SE, _NW), l + 1, j, True
                return None, l + 1, p, True
            if kind == "cup":
                return None, l + 1, (p if p < j else p + 2), True
            # cap
            if p == j:
                return None, l, j + 1, False
            if p == j + 1:
                return None, l, j, False
            return None, l + 1, (p if p < j else p - 2), True
        if l == 0:
            if not self.periodic:
                raise DiagramError("curve leaves the bottom of the word")
            l = L
        kind, j = self.ops[l - 1]
        if kind in ("o", "u"):
            if p == j + 1:
                return Passage("x", ("w", l - 1), _NE, _SW), l - 1, j, False
            if p == j:
                return Passage("x", ("w", l - 1), _NW, _SE), l - 1, j + 1, False
            return None, l - 1, p, False
        if kind == "cup":
            if p == j:
                return None, l, j + 1, True
            if p == j + 1:
                return None, l, j, True
            return None, l - 1, (p if p < j else p - 2), False
        # cap below this level
        return None, l - 1, (p if p < j else p + 2), False

    def _trace_from(self, l: int, p: int, up: bool, visited: set) -> list[Passage]:
        out: list[Passage] = []
        start = (l, p)
        while True:
            visited.add((l, p))
            if l == self.cut_level:
                out.append(Passage("cut", pos=p, sign=1 if up else -1))
            passage, l, p, up = self._step(l, p, up)
            l = self._norm_level(l)
            if passage is not None:
                out.append(passage)
            if (l, p) == start:
                return out

    @cached_property
    def trace(self) -> tuple[tuple[Passage, ...], ...]:
        """Passage cycles of all components, oriented so that the cut index is >= 0.

        The first component starts at cut position 1 going up (or down, when
        that makes the index non-negative).
        """
        self.validate()
        if self.periodic and not self.ops:
            # bare vertical strands through the glued level
            return tuple((Passage("cut", pos=p, sign=1),) for p in range(1, self.width + 1))
        levels = range(len(self.ops)) if self.periodic else range(len(self.ops) + 1)
        points = [(l, p) for l in levels for p in range(1, self.widths[l] + 1)]
        comps = []
        for up_first in (True, False):
            visited: set = set()
            comps = []
            for l, p in points:
                if (l, p) in visited:
                    continue
                first = not comps
                up = up_first if first else True
                comps.append(tuple(self._trace_from(l, p, up, visited)))
            index = sum(x.sign for c in comps for x in c if x.kind == "cut")
            if index >= 0:
                break
        # start the listing at cut position 1 when the sphere is met at all
        return tuple(comps)

    @property
    def num_components(self) -> int:
        return len(self.trace)

    @cached_property
    def cut_signs(self) -> tuple[int, ...]:
        """Direction (+1 up, -1 down) of the knot at each cut position 1..b."""
        signs = {x.pos: x.sign for c in self.trace for x in c if x.kind == "cut"}
        return tuple(signs[p] for p in range(1, self.b + 1))

    def crossing_records(self) -> dict:
        return {
            ("w", l): CrossingRecord(over_pair=1 if kind == "o" else 0)
            for l, (kind, j) in enumerate(self.ops)
            if kind in ("o", "u")
        }

    def to_planar(self) -> PlanarDiagram:
        """Planar diagram of the whole knot (the top glued round the side for S^2 x S^1)."""
        return build_pd(self.trace, self.crossing_records())

    def level_widths(self) -> tuple[int, ...]:
        """Widths of the distinct horizontal levels (the glued level counted once)."""
        w = self.widths
        return w[:-1] if self.periodic and self.ops else w

    def word(self) -> str:
        raise NotImplementedError


class AnnularDiagram(SliceDiagram):
    """Knot in S^2 x S^1; the glued bottom/top level is the sphere."""

    periodic = True

    def __init__(self, ops: Sequence[Op], b: int):
        super().__init__(ops, b, 0)

    @classmethod
    def parse(cls, text: str, b: int | None = None) -> AnnularDiagram:
        """Parse an ``.ann`` body, optionally preceded by ``b=`` / ``cut_signs=`` headers."""
        body, headers = _split_headers(text)
        ops, marker = parse_ops(body)
        if marker is not None:
            raise DiagramError("annular words carry no '|' marker; the glued level is the sphere")
        if b is None:
            if "b" not in headers:
                raise DiagramError("annular code needs a 'b=<int>' header")
            b = int(headers["b"])
        d = cls(ops, b).validate()
        if "cut_signs" in headers:
            declared = parse_signs(headers["cut_signs"])
            check_declared_signs(d, declared)
        return d

    def word(self) -> str:
        return format_ops(self.ops)

    def to_text(self) -> str:
        signs = " ".join("+" if s > 0 else "-" for s in self.cut_signs)
        return f"b={self.b}\ncut_signs={signs}\n{self.word()}\n"

    def __repr__(self):
        return f"AnnularDiagram({self.word()!r}, b={self.b})"

    # -- arcs and closures ---------------------------------------------------

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        """The b arcs of the knot inside the rectangle, sorted by strand id."""
        if self.num_components != 1:
            raise DiagramError("arcs are defined for single-component diagrams")
        (cyc,) = self.trace
        if self.b == 0:
            raise DiagramError("knot does not meet the sphere")
        cuts = [i for i, x in enumerate(cyc) if x.kind == "cut"]
        arcs = []
        for a, i in enumerate(cuts):
            k = cuts[(a + 1) % len(cuts)]
            seq = cyc[i + 1 : k] if k > i else cyc[i + 1 :] + cyc[:k]
            s, e = cyc[i], cyc[k]
            start = ("bottom", s.pos) if s.sign > 0 else ("top", s.pos)
            end = ("top", e.pos) if e.sign > 0 else ("bottom", e.pos)
            arcs.append(Arc(start, end, tuple(seq)))
        b = self.b
        arcs.sort(key=lambda arc: min(_circle_index(arc.start, b), _circle_index(arc.end, b)))
        return tuple(arcs)

    def annular_closure(self) -> PlanarDiagram:
        """Glue top i to bottom i by nested arcs around the side of the rectangle."""
        return self.to_planar()

    def cut_and_close(self, removed: int) -> PlanarDiagram:
        """Delete arc ``removed`` and close every other arc with a boundary arc.

        Closing arcs run outside the rectangle, nested without crossings when
        the endpoint pairs allow it.  When two pairs interleave around the
        boundary the arc with the larger strand id passes over.
        """
        arcs = self.arcs
        if not 0 <= removed < len(arcs):
            raise DiagramError(f"strand {removed} does not cross the cut (b={self.b})")
        dead = arcs[removed].crossing_keys()
        kept = [a for i, a in enumerate(arcs) if i != removed]
        records = {k: v for k, v in self.crossing_records().items() if k not in dead}
        chord_pass, chord_records = _closure_chords(
            [(a.end, a.start) for a in kept], self.b
        )
        records.update(chord_records)
        comps = []
        for i, arc in enumerate(kept):
            seq = [p for p in arc.passages if p.kind == "x" and p.key not in dead]
            comps.append(seq + chord_pass[i])
        return build_pd(comps, records)


def _circle_index(pt: tuple[str, int], b: int) -> int:
    side, pos = pt
    return pos - 1 if side == "bottom" else 2 * b - pos


def _closure_chords(pairs, b):
    """Crossings among closing arcs drawn outside the rectangle.

    Geometry is computed on the circle-inverted picture (outside -> inside),
    which reverses orientation, so cyclic orders are flipped back.
    """
    n = 2 * b
    golden = (math.sqrt(5) - 1) / 2

    def point(pt):
        k = _circle_index(pt, b)
        theta = 2 * math.pi * (k + 0.05 + 0.3 * ((k * golden) % 1)) / n
        return (math.cos(theta), math.sin(theta))

    chords = [(point(s), point(e), _circle_index(s, b), _circle_index(e, b)) for s, e in pairs]
    hits: list[list[tuple[float, Passage]]] = [[] for _ in chords]
    records = {}

    def between(x, a, c):
        lo, hi = sorted((a, c))
        return lo < x < hi

    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            pi, qi, si, ei = chords[i]
            pj, qj, sj, ej = chords[j]
            if between(sj, si, ei) == between(ej, si, ei):
                continue
            di = (qi[0] - pi[0], qi[1] - pi[1])
            dj = (qj[0] - pj[0], qj[1] - pj[1])
            den = di[0] * dj[1] - di[1] * dj[0]
            rx, ry = pj[0] - pi[0], pj[1] - pi[1]
            ti = (rx * dj[1] - ry * dj[0]) / den
            tj = (rx * di[1] - ry * di[0]) / den
            half = {
                ("i", "in"): math.atan2(-di[1], -di[0]),
                ("i", "out"): math.atan2(di[1], di[0]),
                ("j", "in"): math.atan2(-dj[1], -dj[0]),
                ("j", "out"): math.atan2(dj[1], dj[0]),
            }
            inverted_ccw = sorted(half, key=half.get)
            real_ccw = inverted_ccw[::-1]
            idx = {h: real_ccw.index(h) for h in real_ccw}
            key = ("c", i, j)
            # larger strand id (later chord) passes over
            records[key] = CrossingRecord(over_pair=idx[("j", "in")] % 2 and 1 or 0)
            hits[i].append((ti, Passage("x", key, idx[("i", "in")], idx[("i", "out")])))
            hits[j].append((tj, Passage("x", key, idx[("j", "in")], idx[("j", "out")])))
    return [[p for _, p in sorted(h, key=lambda t: t[0])] for h in hits], records


class SphereCutDiagram(SliceDiagram):
    """Knot in S^3 with a level 2-sphere marked by ``|`` in the word."""

    periodic = False

    def __init__(self, ops: Sequence[Op], cut_level: int):
        super().__init__(ops, 0, cut_level)

    @classmethod
    def parse(cls, text: str) -> SphereCutDiagram:
        body, headers = _split_headers(text)
        ops, marker = parse_ops(body)
        if marker is None:
            raise DiagramError("sphere-cut code needs a '|' marking the sphere level")
        d = cls(ops, marker).validate()
        if "b" in headers and int(headers["b"]) != d.b:
            raise DiagramError(f"declared b={headers['b']} but the sphere meets {d.b} strands")
        if "cut_signs" in headers:
            check_declared_signs(d, parse_signs(headers["cut_signs"]))
        return d

    def word(self) -> str:
        return format_ops(self.ops, self.cut_level)

    def to_text(self) -> str:
        signs = " ".join("+" if s > 0 else "-" for s in self.cut_signs)
        return f"b={self.b}\ncut_signs={signs}\n{self.word()}\n"

    def __repr__(self):
        return f"SphereCutDiagram({self.word()!r})"


def _split_headers(text: str) -> tuple[str, dict[str, str]]:
    headers = {}
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            k, v = line.split("=", 1)
            headers[k.strip()] = v.strip()
        else:
            body.append(line)
    return " ".join(body), headers


def parse_signs(text) -> tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        vals = list(text)
    else:
        vals = text.replace(",", " ").split()
    out = []
    for v in vals:
        if v in (1, "+", "+1", "1"):
            out.append(1)
        elif v in (-1, "-", "-1"):
            out.append(-1)
        else:
            raise DiagramError(f"bad cut sign {v!r}")
    return tuple(out)


def check_declared_signs(d: SliceDiagram, declared: Sequence[int]) -> None:
    """Declared signs must match the traced ones up to reversing the knot."""
    actual = d.cut_signs
    flipped = tuple(-s for s in actual)
    if tuple(declared) not in (actual, flipped):
        raise DiagramError(f"declared cut signs {tuple(declared)} do not match the diagram {actual}")


# -- word moves ----------------------------------------------------------------


def _footprint(op: Op, upper: bool) -> tuple[float, float]:
    kind, j = op
    if upper:
        if kind == "cap":
            return (j - 0.5, j - 0.5)
        return (j, j + 1)
    if kind == "cup":
        return (j - 0.5, j - 0.5)
    return (j, j + 1)


def swap_ops(a: Op, b: Op) -> tuple[Op, Op] | None:
    """Exchange two consecutive slices (``a`` below ``b``) when they are disjoint."""
    fa = _footprint(a, upper=True)
    fb = _footprint(b, upper=False)
    if fb[0] > fa[1]:
        return (b[0], b[1] - _delta(a)), a
    if fb[1] < fa[0]:
        return b, (a[0], a[1] + _delta(b))
    return None


def _cancels(a: Op, b: Op) -> bool:
    if {a[0], b[0]} == {"o", "u"} and a[1] == b[1]:
        return True
    if a[0] == "cup" and b[0] == "cap" and abs(a[1] - b[1]) == 1:
        return True
    return False


def _curl(ops: Sequence[Op], i: int) -> bool:
    if i + 2 >= len(ops):
        return False
    a, x, c = ops[i], ops[i + 1], ops[i + 2]
    if a[0] != "cup" or c[0] != "cap" or x[0] not in ("o", "u") or a[1] != c[1]:
        return False
    return x[1] in (a[1] - 1, a[1] + 1)


def simplify_ops(
    ops: Sequence[Op], cut_level: int | None = None, budget: int = 10_000
) -> tuple[tuple[Op, ...], int | None, bool]:
    """Greedy isotopy simplification of a slice word.

    Cancels inverse crossings, zigzags and curls, commuting disjoint slices to
    bring cancelling pairs together.  Slices never move across the cut level.
    Returns (ops, cut level, exhausted_budget).
    """
    ops = list(ops)
    spent = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(ops)):
            if cut_level is not None and i + 1 == cut_level:
                continue
            if i + 1 < len(ops) and _cancels(ops[i], ops[i + 1]):
                del ops[i : i + 2]
                if cut_level is not None and cut_level > i:
                    cut_level -= 2
                changed = True
                break
            if _curl(ops, i) and not (cut_level is not None and i < cut_level <= i + 2):
                del ops[i : i + 3]
                if cut_level is not None and cut_level > i:
                    cut_level -= 3
                changed = True
                break
        if changed:
            continue
        # try to commute a partner down next to each op
        for i in range(len(ops)):
            for k in range(i + 2, len(ops)):
                if cut_level is not None and i < cut_level <= k:
                    break
                spent += 1
                if spent > budget:
                    return tuple(ops), cut_level, True
                moved = _bring_down(ops, i, k)
                if moved is not None and _cancels(moved[i], moved[i + 1]):
                    ops = moved
                    changed = True
                    break
            if changed:
                break
    return tuple(ops), cut_level, False


def _bring_down(ops: list[Op], i: int, k: int) -> list[Op] | None:
    out = list(ops)
    for m in range(k, i + 1, -1):
        sw = swap_ops(out[m - 1], out[m])
        if sw is None:
            return None
        out[m - 1], out[m] = sw
    return out


def random_isotopy(
    d: SliceDiagram, rng: random.Random, steps: int = 3
) -> SliceDiagram:
    """Apply random Reidemeister-type moves inside the rectangle.

    Moves never cross the cut level, so the result describes the same pair
    (sphere, knot) up to isotopy fixing the sphere.
    """
    ops = list(d.ops)
    cut = d.cut_level
    for _ in range(steps):
        widths = [d.width]
        for op in ops:
            widths.append(widths[-1] + _delta(op))
        choice = rng.randrange(6)
        gap = rng.randrange(len(ops) + 1)
        w = widths[gap]
        new: list[Op] | None = None
        if choice == 0 and w >= 2:
            j = rng.randint(1, w - 1)
            first = rng.choice("ou")
            new = [(first, j), ("u" if first == "o" else "o", j)]
        elif choice == 1 and w >= 1:
            j = rng.randint(1, w)
            new = [("cup", j + 1), ("cap", j)] if rng.random() < 0.5 else [("cup", j), ("cap", j + 1)]
        elif choice == 2 and w >= 1:
            j = rng.randint(1, w)
            kind = rng.choice("ou")
            new = [("cup", j + 1), (kind, j), ("cap", j + 1)] if rng.random() < 0.5 else [("cup", j), (kind, j + 1), ("cap", j)]
        elif choice == 3:
            # braid relation somewhere it already applies
            spots = [
                i for i in range(len(ops) - 2)
                if not (i < cut <= i + 2 and d.periodic is False)
                and ops[i][0] in "ou" and ops[i][0] == ops[i + 1][0] == ops[i + 2][0]
                and ops[i][1] == ops[i + 2][1] and abs(ops[i + 1][1] - ops[i][1]) == 1
            ]
            if spots:
                i = rng.choice(spots)
                k, j1, j2 = ops[i][0], ops[i][1], ops[i + 1][1]
                ops[i : i + 3] = [(k, j2), (k, j1), (k, j2)]
            continue
        elif choice == 4 and len(ops) >= 2:
            i = rng.randrange(len(ops) - 1)
            if not (d.periodic is False and cut == i + 1):
                sw = swap_ops(ops[i], ops[i + 1])
                if sw is not None:
                    ops[i], ops[i + 1] = sw
            continue
        elif choice == 5:
            ops2, cut2, _ = simplify_ops(ops, None if d.periodic else cut, budget=200)
            ops = list(ops2)
            if not d.periodic:
                cut = cut2
            continue
        if new is None:
            continue
        ops[gap:gap] = new
        if not d.periodic and cut > gap:
            cut += len(new)
        elif not d.periodic and cut == gap and rng.random() < 0.5:
            # insert above the sphere instead of below it
            cut += len(new)
    if d.periodic:
        return AnnularDiagram(ops, d.width).validate()
    return SphereCutDiagram(ops, cut).validate()
