"""Bounded breadth-first search over Reidemeister moves."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .moves import applicable_moves, apply_reidemeister
from .planar import DiagramError, PlanarDiagram

COMPLETE = "COMPLETE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SimplifyResult:
    diagram: PlanarDiagram
    status: str  # COMPLETE: every diagram within the crossing bound was reached
    states: int

    @property
    def crossings(self) -> int:
        return self.diagram.n


def simplify_bfs(d: PlanarDiagram, max_crossings: int, max_states: int) -> SimplifyResult:
    """Fewest-crossing diagram reachable without exceeding ``max_crossings``.

    Diagrams are deduplicated up to relabelling.  The search stops early on a
    crossingless diagram.  If more than ``max_states`` distinct diagrams are
    met, the best one so far is returned with status INCONCLUSIVE.
    """
    if max_crossings <= 0 or max_states <= 0:
        raise ValueError("search bounds must be positive")
    d = d.validate()
    best = d
    if d.n == 0:
        return SimplifyResult(d, COMPLETE, 1)
    seen = {d.canonical_key}
    queue = deque([d])
    while queue:
        cur = queue.popleft()
        for m in applicable_moves(cur):
            if cur.n + m.crossing_delta > max_crossings:
                continue
            try:
                nxt = apply_reidemeister(cur, m)
            except DiagramError:
                continue
            key = nxt.canonical_key
            if key in seen:
                continue
            if len(seen) >= max_states:
                return SimplifyResult(best, INCONCLUSIVE, len(seen))
            seen.add(key)
            if nxt.n < best.n:
                best = nxt
                if best.n == 0:
                    return SimplifyResult(best, COMPLETE, len(seen))
            queue.append(nxt)
    return SimplifyResult(best, COMPLETE, len(seen))
