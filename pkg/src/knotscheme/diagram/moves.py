"""Reidemeister moves on planar diagrams.

Moves are addressed by a :class:`Move` whose ``loc`` refers to crossing
indices, departure slots ``(crossing, position)`` or edge labels of the
diagram the move is applied to.  :func:`applicable_moves` lists every move in
a fixed order (removals of type I, removals of type II, type III, insertions
of type II, insertions of type I), so searches built on it are deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .planar import DiagramError, PlanarDiagram, Slot

R1_REMOVE = "R1-"
R2_REMOVE = "R2-"
R3 = "R3"
R2_INSERT = "R2+"
R1_INSERT = "R1+"

KINDS = (R1_REMOVE, R2_REMOVE, R3, R2_INSERT, R1_INSERT)


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    loc: tuple

    @property
    def crossing_delta(self) -> int:
        return {R1_REMOVE: -1, R2_REMOVE: -2, R3: 0, R2_INSERT: 2, R1_INSERT: 1}[self.kind]


def _fresh(d: PlanarDiagram, k: int) -> list[int]:
    top = max(d.edges, default=0)
    return list(range(top + 1, top + 1 + k))


# -- removals -------------------------------------------------------------------


def _r1_sites(d: PlanarDiagram) -> list[Move]:
    out = []
    for c, x in enumerate(d.crossings):
        if any(x[p] == x[(p + 1) % 4] for p in range(4)):
            out.append(Move(R1_REMOVE, (c,)))
    return out


def _r2_sites(d: PlanarDiagram) -> list[Move]:
    out = set()
    for face in d.faces:
        if len(face) != 2:
            continue
        (c1, q1), (c2, q2) = face
        if c1 == c2:
            continue
        # edge leaving (c1,q1) ends at c2, edge leaving (c2,q2) ends at c1
        a_far = d.other_slot((c1, q1))
        b_far = d.other_slot((c2, q2))
        a_over = (q1 % 2, a_far[1] % 2)
        b_over = (q2 % 2, b_far[1] % 2)
        if a_over[0] == a_over[1] and b_over[0] == b_over[1] and a_over[0] != b_over[0]:
            out.add(Move(R2_REMOVE, tuple(sorted((c1, c2)))))
    return sorted(out)


def _triangle_faces(d: PlanarDiagram) -> list[tuple[Slot, ...]]:
    tris = []
    for face in d.faces:
        if len(face) != 3 or len({c for c, _ in face}) != 3:
            continue
        pattern = []
        for s in face:
            far = d.other_slot(s)
            pattern.append((s[1] % 2, far[1] % 2))
        if any(a == b == 1 for a, b in pattern):
            i = face.index(min(face))
            tris.append(face[i:] + face[:i])
    return sorted(tris)


def _r3_sites(d: PlanarDiagram) -> list[Move]:
    return [Move(R3, tuple(face)) for face in _triangle_faces(d)]


# -- insertions -----------------------------------------------------------------


def _r2_insert_sites(d: PlanarDiagram) -> list[Move]:
    out = []
    for face in sorted(d.faces, key=min):
        labels = [d.label_at(s) for s in face]
        for i in range(len(face)):
            for j in range(len(face)):
                if i == j or labels[i] == labels[j]:
                    continue
                for over in (1, 0):
                    out.append(Move(R2_INSERT, (face[i], face[j], over)))
    return out


def _r1_insert_sites(d: PlanarDiagram) -> list[Move]:
    out = []
    for e in sorted(d.edges):
        for v in range(4):
            out.append(Move(R1_INSERT, (e, v)))
    if d.free_loops:
        for v in range(4):
            out.append(Move(R1_INSERT, (None, v)))
    return out


def applicable_moves(d: PlanarDiagram, kinds=KINDS) -> list[Move]:
    gens = {
        R1_REMOVE: _r1_sites,
        R2_REMOVE: _r2_sites,
        R3: _r3_sites,
        R2_INSERT: _r2_insert_sites,
        R1_INSERT: _r1_insert_sites,
    }
    out: list[Move] = []
    for k in KINDS:
        if k in kinds:
            out.extend(gens[k](d))
    return out


# -- application ----------------------------------------------------------------


def apply_reidemeister(d: PlanarDiagram, move: Move) -> PlanarDiagram:
    """Apply ``move``; raises DiagramError if it does not apply at ``move.loc``."""
    kind = move.kind
    if kind == R1_REMOVE:
        if move not in _r1_sites(d):
            raise DiagramError(f"no type I curl at {move.loc}")
        return d.splice_out(move.loc).validate()
    if kind == R2_REMOVE:
        if move not in _r2_sites(d):
            raise DiagramError(f"no removable bigon at {move.loc}")
        return d.splice_out(move.loc).validate()
    if kind == R3:
        if tuple(move.loc) not in _triangle_faces(d):
            raise DiagramError(f"no type III triangle at {move.loc}")
        return _apply_r3(d, move.loc)
    if kind == R2_INSERT:
        return _apply_r2_insert(d, *move.loc)
    if kind == R1_INSERT:
        return _apply_r1_insert(d, *move.loc)
    raise DiagramError(f"unknown move kind {kind!r}")


def _apply_r3(d: PlanarDiagram, face) -> PlanarDiagram:
    # Each strand slides across the opposite crossing: crossings keep their
    # local picture, the order of crossings along every strand reverses.
    new = [list(x) for x in d.crossings]
    fresh = _fresh(d, 3)
    for i in range(3):
        ci, qi = face[i]
        cn, pn = d.other_slot(face[i])
        ext_i = d.crossings[ci][(qi + 2) % 4]
        ext_n = d.crossings[cn][(pn + 2) % 4]
        new[cn][pn] = ext_i
        new[ci][qi] = ext_n
        new[ci][(qi + 2) % 4] = fresh[i]
        new[cn][(pn + 2) % 4] = fresh[i]
    return PlanarDiagram(tuple(tuple(x) for x in new), d.signs, d.free_loops).validate()


_S, _E, _N, _W = 0, 1, 2, 3
_DIRS = {_S: (0, -1), _E: (1, 0), _N: (0, 1), _W: (-1, 0)}


def _local_crossing(labels, under_in, over_in):
    """PD tuple and sign from compass-indexed labels and incoming half-edges."""
    tup = tuple(labels[(under_in + k) % 4] for k in range(4))
    # travel directions point away from the incoming half-edge
    ux, uy = (-_DIRS[under_in][0], -_DIRS[under_in][1])
    ox, oy = (-_DIRS[over_in][0], -_DIRS[over_in][1])
    sign = 1 if ox * uy - oy * ux > 0 else -1
    return tup, sign


def _apply_r2_insert(d: PlanarDiagram, s1: Slot, s2: Slot, over: int) -> PlanarDiagram:
    s1, s2 = tuple(s1), tuple(s2)
    face = next((f for f in d.faces if s1 in f), None)
    if face is None or s2 not in face:
        raise DiagramError("R2 insertion slots do not bound a common face")
    e1, e2 = d.label_at(s1), d.label_at(s2)
    if e1 == e2:
        raise DiagramError("R2 insertion needs two distinct edges")
    t1, t2 = d.other_slot(s1), d.other_slot(s2)
    L1, R1, L2, R2, m1, m2 = _fresh(d, 6)
    # face on the left; e1 runs along the bottom left->right, e2 along the top
    # right->left; the finger of e1 pushes up across e2 at P (left), Q (right)
    d1 = 1 if d.edges[e1][0] == s1 else -1
    d2 = 1 if d.edges[e2][0] == s2 else -1
    P = {_S: L1, _E: m2, _N: m1, _W: L2}
    Q = {_S: R1, _E: R2, _N: m1, _W: m2}
    # incoming half-edges of each strand at P and Q
    e1_in_P, e1_in_Q = (_S, _N) if d1 > 0 else (_N, _S)
    e2_in = _E if d2 > 0 else _W
    crossings = []
    signs = []
    for labels, e1_in in ((P, e1_in_P), (Q, e1_in_Q)):
        if over:
            tup, sg = _local_crossing(labels, e2_in, e1_in)
        else:
            tup, sg = _local_crossing(labels, e1_in, e2_in)
        crossings.append(tup)
        signs.append(sg)
    new = [list(x) for x in d.crossings]
    new[s1[0]][s1[1]] = L1
    new[t1[0]][t1[1]] = R1
    new[s2[0]][s2[1]] = R2
    new[t2[0]][t2[1]] = L2
    return PlanarDiagram(
        tuple(tuple(x) for x in new) + tuple(crossings),
        d.signs + tuple(signs),
        d.free_loops,
    ).validate()


def _apply_r1_insert(d: PlanarDiagram, e, variant: int) -> PlanarDiagram:
    if variant not in range(4):
        raise DiagramError(f"bad curl variant {variant}")
    new = [list(x) for x in d.crossings]
    free = d.free_loops
    if e is None:
        if not free:
            raise DiagramError("no free loop to curl")
        free -= 1
        e, l = _fresh(d, 2) if d.edges else (1, 2)
        e2 = e
    else:
        if e not in d.edges:
            raise DiagramError(f"no edge {e}")
        e2, l = _fresh(d, 2)
        hc, hp = d.edges[e][1]
        new[hc][hp] = e2
    x, s = [
        ((e, e2, l, l), 1),
        ((e, l, l, e2), -1),
        ((l, l, e2, e), 1),
        ((l, e, e2, l), -1),
    ][variant]
    new.append(list(x))
    return PlanarDiagram(tuple(tuple(v) for v in new), d.signs + (s,), free).validate()


def random_move(
    d: PlanarDiagram, rng: random.Random, max_crossings: int | None = None
) -> tuple[Move, PlanarDiagram]:
    """Pick a move type uniformly among those available, then a site uniformly."""
    by_kind: dict[str, list[Move]] = {}
    for m in applicable_moves(d):
        if max_crossings is not None and d.n + m.crossing_delta > max_crossings:
            continue
        by_kind.setdefault(m.kind, []).append(m)
    kinds = sorted(by_kind)
    while kinds:
        k = rng.choice(kinds)
        m = rng.choice(by_kind[k])
        try:
            return m, apply_reidemeister(d, m)
        except DiagramError:
            by_kind[k].remove(m)
            if not by_kind[k]:
                kinds.remove(k)
    raise DiagramError("no applicable move")


__all__ = [
    "KINDS",
    "Move",
    "R1_INSERT",
    "R1_REMOVE",
    "R2_INSERT",
    "R2_REMOVE",
    "R3",
    "applicable_moves",
    "apply_reidemeister",
    "random_move",
]
