"""Oriented planar link diagrams stored as PD tuples.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting at
the incoming under-strand.  Positions 0 and 2 are the under-strand, 1 and 3
the over-strand.  The crossing sign fixes which over slot is incoming: for a
positive crossing the over-strand enters at position 3, for a negative one it
enters at position 1.  With this convention every edge label has exactly one
outgoing slot (its tail) and one incoming slot (its head).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Slot = tuple[int, int]  # (crossing index, position)


class DiagramError(ValueError):
    """Structurally invalid diagram or diagram code."""


def in_positions(sign: int) -> tuple[int, int]:
    return (0, 3) if sign > 0 else (0, 1)


def out_positions(sign: int) -> tuple[int, int]:
    return (2, 1) if sign > 0 else (2, 3)


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    signs: tuple[int, ...] = ()
    free_loops: int = 0
    # original crossing labels, kept only so that Gauss codes round-trip
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(x) for x in self.crossings))
        object.__setattr__(self, "signs", tuple(self.signs))

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def edges(self) -> dict[int, tuple[Slot, Slot]]:
        """label -> (tail slot, head slot).  Raises DiagramError if malformed."""
        tails: dict[int, Slot] = {}
        heads: dict[int, Slot] = {}
        if len(self.signs) != len(self.crossings):
            raise DiagramError("one sign per crossing required")
        for c, (x, s) in enumerate(zip(self.crossings, self.signs)):
            if len(x) != 4:
                raise DiagramError(f"crossing {c} does not have 4 slots")
            if s not in (1, -1):
                raise DiagramError(f"crossing {c} has sign {s!r}")
            for p in out_positions(s):
                if x[p] in tails:
                    raise DiagramError(f"edge {x[p]} leaves two slots")
                tails[x[p]] = (c, p)
            for p in in_positions(s):
                if x[p] in heads:
                    raise DiagramError(f"edge {x[p]} enters two slots")
                heads[x[p]] = (c, p)
        if tails.keys() != heads.keys():
            odd = sorted(set(tails) ^ set(heads))
            raise DiagramError(f"edges {odd} are not used exactly twice with consistent orientation")
        return {e: (tails[e], heads[e]) for e in tails}

    def label_at(self, slot: Slot) -> int:
        return self.crossings[slot[0]][slot[1]]

    def other_slot(self, slot: Slot) -> Slot:
        tail, head = self.edges[self.label_at(slot)]
        if tail == slot:
            return head
        return tail

    def is_over(self, slot: Slot) -> bool:
        return slot[1] % 2 == 1

    # -- components --------------------------------------------------------

    @cached_property
    def component_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge cycles of the crossing-carrying components, in traversal order.

        Each cycle starts at its smallest label; cycles are ordered by it.
        """
        seen: set[int] = set()
        out = []
        for start in sorted(self.edges):
            if start in seen:
                continue
            cyc = []
            e = start
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                c, p = self.edges[e][1]
                e = self.crossings[c][(p + 2) % 4]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def num_components(self) -> int:
        return len(self.component_edges) + self.free_loops

    @cached_property
    def edge_component(self) -> dict[int, int]:
        return {e: i for i, cyc in enumerate(self.component_edges) for e in cyc}

    def crossing_components(self, c: int) -> tuple[int, int]:
        """(component of the under-strand, component of the over-strand)."""
        x = self.crossings[c]
        return self.edge_component[x[0]], self.edge_component[x[1]]

    # -- faces and planarity ---------------------------------------------

    @cached_property
    def faces(self) -> tuple[tuple[Slot, ...], ...]:
        """Faces as cycles of departure slots, each traversed with the face on the left.

        Leaving slot (c, q) we travel the edge to its other end (c', p') and
        leave again from (c', p' - 1).
        """
        seen: set[Slot] = set()
        faces = []
        for c in range(self.n):
            for q in range(4):
                if (c, q) in seen:
                    continue
                face = []
                s = (c, q)
                while s not in seen:
                    seen.add(s)
                    face.append(s)
                    c2, p2 = self.other_slot(s)
                    s = (c2, (p2 - 1) % 4)
                faces.append(tuple(face))
        return tuple(faces)

    @cached_property
    def pieces(self) -> tuple[tuple[int, ...], ...]:
        """Connected pieces of the underlying 4-valent graph, as crossing index tuples."""
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for tail, head in self.edges.values():
            ra, rb = find(tail[0]), find(head[0])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for c in range(self.n):
            groups.setdefault(find(c), []).append(c)
        return tuple(tuple(g) for g in groups.values())

    def validate(self) -> PlanarDiagram:
        """Check slot usage and planarity (Euler characteristic per piece)."""
        self.edges  # noqa: B018 -- raises on malformed slots
        if self.free_loops < 0:
            raise DiagramError("negative free loop count")
        if self.labels is not None and len(self.labels) != self.n:
            raise DiagramError("crossing label count mismatch")
        piece_of = {c: i for i, g in enumerate(self.pieces) for c in g}
        face_count = [0] * len(self.pieces)
        for f in self.faces:
            face_count[piece_of[f[0][0]]] += 1
        for g, nf in zip(self.pieces, face_count):
            # V - E + F = 2 with E = 2V
            if nf != len(g) + 2:
                raise DiagramError(
                    f"diagram is not planar: piece with {len(g)} crossings has {nf} faces"
                )
        return self

    # -- derived quantities ---------------------------------------------

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def mirror(self) -> PlanarDiagram:
        """Swap over and under at every crossing."""
        new = []
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            new.append((d, a, b, c) if s > 0 else (b, c, d, a))
        return PlanarDiagram(tuple(new), tuple(-s for s in self.signs), self.free_loops, self.labels)

    def reverse(self) -> PlanarDiagram:
        """Reverse the orientation of every component."""
        new = []
        for a, b, c, d in self.crossings:
            # under-strand now enters at old position 2; sign is unchanged
            new.append((c, d, a, b))
        return PlanarDiagram(tuple(new), self.signs, self.free_loops, self.labels)

    # -- relabelling and canonical form ------------------------------------

    def relabel(self) -> PlanarDiagram:
        """Renumber edges 1..2n along component traversals."""
        mapping: dict[int, int] = {}
        for cyc in self.component_edges:
            for e in cyc:
                mapping[e] = len(mapping) + 1
        return PlanarDiagram(
            tuple(tuple(mapping[e] for e in x) for x in self.crossings),
            self.signs,
            self.free_loops,
            self.labels,
        )

    def _encode_from(self, start: int, piece: set[int]) -> tuple:
        edge_new: dict[int, int] = {}
        cross_new: dict[int, int] = {}
        order: list[int] = []
        pending = [start]
        while pending:
            e = pending.pop()
            if e in edge_new:
                continue
            while e not in edge_new:
                edge_new[e] = len(edge_new)
                c, p = self.edges[e][1]
                if c not in cross_new:
                    cross_new[c] = len(cross_new)
                    order.append(c)
                e = self.crossings[c][(p + 2) % 4]
            # next component: first discovered crossing with an unlabelled slot
            for c in order:
                nxt = [self.crossings[c][q] for q in range(4) if self.crossings[c][q] not in edge_new]
                if nxt:
                    # start from the edge leaving this crossing's lowest such slot
                    pending.append(nxt[0])
                    break
        enc = tuple(
            (tuple(edge_new[e] for e in self.crossings[c]), self.signs[c]) for c in order
        )
        return enc

    @cached_property
    def canonical_key(self) -> tuple:
        """Key equal for diagrams that differ only by relabelling."""
        keys = []
        for piece in self.pieces:
            ps = set(piece)
            starts = sorted({e for c in piece for e in self.crossings[c]})
            keys.append(min(self._encode_from(e, ps) for e in starts))
        return (tuple(sorted(keys)), self.free_loops)

    # -- surgery helpers ----------------------------------------------------

    def splice_out(self, removed: Iterable[int], drop_edges: Iterable[int] = ()) -> PlanarDiagram:
        """Delete crossings, letting both strands pass straight through them.

        Edges in ``drop_edges`` are discarded together with everything they
        connect to through removed crossings (used to delete whole
        components).  Closed loops that lose all their crossings become free
        loops.
        """
        removed = set(removed)
        dropped = set(drop_edges)
        keep = [c for c in range(self.n) if c not in removed]
        new_index = {c: i for i, c in enumerate(keep)}
        new_x = [list(self.crossings[c]) for c in keep]
        visited: set[int] = set()
        next_label = 1
        for c in keep:
            for p in out_positions(self.signs[c]):
                e = self.crossings[c][p]
                if e in visited:
                    continue
                # follow the strand until it reaches a kept crossing
                chain = []
                while True:
                    chain.append(e)
                    hc, hp = self.edges[e][1]
                    if hc not in removed:
                        break
                    e = self.crossings[hc][(hp + 2) % 4]
                visited.update(chain)
                new_x[new_index[c]][p] = next_label
                new_x[new_index[hc]][hp] = next_label
                next_label += 1
        free = self.free_loops
        for start in self.edges:
            if start in visited or start in dropped:
                continue
            e = start
            cyc = []
            while e not in visited:
                visited.add(e)
                cyc.append(e)
                hc, hp = self.edges[e][1]
                e = self.crossings[hc][(hp + 2) % 4]
            if not dropped.intersection(cyc):
                free += 1
        return PlanarDiagram(
            tuple(tuple(x) for x in new_x),
            tuple(self.signs[c] for c in keep),
            free,
        )

    def sublink(self, components: Iterable[int]) -> PlanarDiagram:
        """Diagram of the chosen crossing-carrying components only."""
        wanted = set(components)
        drop = [e for i, cyc in enumerate(self.component_edges) if i not in wanted for e in cyc]
        removed = [
            c for c in range(self.n) if not set(self.crossing_components(c)) <= wanted
        ]
        d = self.splice_out(removed, drop)
        return PlanarDiagram(d.crossings, d.signs, d.free_loops - self.free_loops)

    def component_diagrams(self) -> list[PlanarDiagram]:
        """One knot diagram per component (free loops become empty unknots)."""
        out = [self.sublink([i]) for i in range(len(self.component_edges))]
        out.extend(PlanarDiagram(free_loops=1) for _ in range(self.free_loops))
        return out

    # -- Gauss codes ---------------------------------------------------------

    def to_gauss(self) -> str:
        """Signed Gauss code, one line per component."""
        labels = self.labels or tuple(range(1, self.n + 1))
        lines = []
        for cyc in self.component_edges:
            tokens = []
            for e in cyc:
                c, p = self.edges[e][0]
                tokens.append(f"{labels[c]}{'o' if p % 2 else 'u'}{'+' if self.signs[c] > 0 else '-'}")
            lines.append(" ".join(tokens))
        lines.extend("" for _ in range(self.free_loops))
        text = "\n".join(lines)
        # a trailing newline is dropped on parsing, so protect a final blank line
        return text + "\n" if lines and not lines[-1] else text

    def __str__(self) -> str:
        if self.n:
            return self.to_gauss()
        if self.free_loops == 0:
            return "<empty>"
        return "<unknot>" if self.free_loops == 1 else f"<{self.free_loops}-component unlink>"


_TOKEN = re.compile(r"^(\d+)([ou])([+-])$")


def parse_gauss(code: str) -> PlanarDiagram:
    """Parse a signed Gauss code.

    One component per line (``;`` also separates components); tokens look
    like ``3o+``: crossing label, over/under, crossing sign.  A blank code is
    the 0-crossing unknot, and blank lines inside a longer code are
    unknotted, unlinked circles.
    """
    text = code.replace(";", "\n")
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    visits: list[list[tuple[int, str, int]]] = []
    free = 0
    for line in lines:
        toks = line.split()
        if not toks:
            free += 1
            continue
        comp = []
        for t in toks:
            m = _TOKEN.match(t)
            if not m:
                raise DiagramError(f"malformed Gauss token {t!r}")
            comp.append((int(m.group(1)), m.group(2), 1 if m.group(3) == "+" else -1))
        visits.append(comp)

    seen: dict[int, dict[str, tuple[int, int]]] = {}
    signs: dict[int, int] = {}
    order: list[int] = []
    next_edge = 1
    for comp in visits:
        m = len(comp)
        base = next_edge
        next_edge += m
        for j, (lab, ou, s) in enumerate(comp):
            incoming = base + (j - 1) % m
            outgoing = base + j
            slot = seen.setdefault(lab, {})
            if lab not in signs:
                signs[lab] = s
                order.append(lab)
            elif signs[lab] != s:
                raise DiagramError(f"crossing {lab} has inconsistent signs")
            if ou in slot:
                raise DiagramError(f"crossing {lab} visited twice as {'over' if ou == 'o' else 'under'}")
            slot[ou] = (incoming, outgoing)
    crossings = []
    for lab in order:
        v = seen[lab]
        if len(v) != 2:
            raise DiagramError(f"crossing {lab} appears once; each label must appear exactly twice")
        in_u, out_u = v["u"]
        in_o, out_o = v["o"]
        if signs[lab] > 0:
            crossings.append((in_u, out_o, out_u, in_o))
        else:
            crossings.append((in_u, in_o, out_u, out_o))
    d = PlanarDiagram(
        tuple(crossings), tuple(signs[lab] for lab in order), free, tuple(order)
    )
    return d.validate()


def diagram_from_pd(crossings: Sequence[Sequence[int]], signs: Sequence[int], free_loops: int = 0) -> PlanarDiagram:
    return PlanarDiagram(tuple(tuple(x) for x in crossings), tuple(signs), free_loops).validate()


UNKNOT = PlanarDiagram(free_loops=1)
