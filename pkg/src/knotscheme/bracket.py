"""Kauffman bracket and Jones polynomial of planar diagrams.

Convention: at a crossing ``(a, b, c, d)`` the A-smoothing joins a-b and c-d,
the B-smoothing joins a-d and b-c; ``delta = -A^2 - A^-2`` and the
bracket of a diagram with ``L`` loops in a state is ``A^(#A - #B) delta^(L-1)``.
The Jones polynomial is ``(-A^3)^(-writhe) <D>``; ``t = A^-4`` is only used
for display.

Two engines compute the same sum.  ``"contract"`` (default) folds crossings
in one at a time and keeps, for every way the open edge ends are paired up,
the accumulated polynomial; it is fast on the diagrams met here.
``"states"`` is the literal 2^n enumeration with union-find loop counting
and can be split over worker processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .diagram.planar import DiagramError, PlanarDiagram
from .laurent import DELTA, LaurentPoly

DEFAULT_MAX_CROSSINGS = 24

_ONE = LaurentPoly.constant(1)


class CrossingLimitError(DiagramError):
    """Diagram has more crossings than the configured limit."""


def _check(d: PlanarDiagram, max_crossings: int | None) -> None:
    limit = DEFAULT_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.n > limit:
        raise CrossingLimitError(f"{d.n} crossings exceed the limit of {limit}")
    if d.n == 0 and d.free_loops == 0:
        raise DiagramError("the empty diagram has no bracket")


def kauffman_bracket(
    d: PlanarDiagram,
    max_crossings: int | None = None,
    engine: str = "contract",
    workers: int = 1,
) -> LaurentPoly:
    """Normalized Kauffman bracket (unknot = 1)."""
    _check(d, max_crossings)
    if engine == "contract":
        return _bracket_contract(d)
    if engine == "states":
        return _bracket_states(d, workers)
    raise ValueError(f"unknown engine {engine!r}")


def writhe(d: PlanarDiagram) -> int:
    return d.writhe


def jones(
    d: PlanarDiagram, max_crossings: int | None = None, engine: str = "contract"
) -> LaurentPoly:
    """Jones polynomial in the variable A."""
    br = kauffman_bracket(d, max_crossings, engine)
    w = d.writhe
    # (-A^3)^(-w) = (-1)^w A^(-3w)
    return br.shift(-3 * w) * (-1 if w % 2 else 1)


def jones_connected_sum_check(p: LaurentPoly, q: LaurentPoly, pq: LaurentPoly) -> bool:
    return p * q == pq


# -- state enumeration ---------------------------------------------------------


def _pairs(x, smoothing_a: bool):
    a, b, c, d = x
    return ((a, b), (c, d)) if smoothing_a else ((a, d), (b, c))


def _loops_in_state(d: PlanarDiagram, state: int, labels: dict[int, int]) -> int:
    parent = list(range(len(labels)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    comps = len(labels)
    for c, x in enumerate(d.crossings):
        for u, v in _pairs(x, not (state >> c) & 1):
            ru, rv = find(labels[u]), find(labels[v])
            if ru != rv:
                parent[ru] = rv
                comps -= 1
    return comps


def _state_range(args) -> dict[int, int]:
    d, lo, hi = args
    labels = {e: i for i, e in enumerate(sorted(d.edges))}
    n = d.n
    # bucket by (a - b, loops) to keep the inner loop integer-only
    acc: dict[tuple[int, int], int] = {}
    for s in range(lo, hi):
        nb = bin(s).count("1")
        key = (n - 2 * nb, _loops_in_state(d, s, labels))
        acc[key] = acc.get(key, 0) + 1
    return acc


def _bracket_states(d: PlanarDiagram, workers: int = 1) -> LaurentPoly:
    d = d.relabel()
    n = d.n
    total = 1 << n
    if workers > 1 and n >= 12:
        step = -(-total // workers)
        chunks = [(d, lo, min(total, lo + step)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_state_range, chunks))
    else:
        parts = [_state_range((d, 0, total))]
    counts: dict[tuple[int, int], int] = {}
    for part in parts:
        for k, v in part.items():
            counts[k] = counts.get(k, 0) + v
    result = LaurentPoly()
    for (ab, loops), mult in sorted(counts.items()):
        loops += d.free_loops
        result = result + (DELTA ** (loops - 1)).shift(ab) * mult
    return result


# -- contraction engine --------------------------------------------------------


def _order(d: PlanarDiagram) -> list[int]:
    """Greedy crossing order keeping the open boundary small."""
    remaining = set(range(d.n))
    open_edges: set[int] = set()
    order = []
    while remaining:
        best = min(
            remaining,
            key=lambda c: (len(open_edges.symmetric_difference(d.crossings[c])), c),
        )
        order.append(best)
        remaining.discard(best)
        for e in d.crossings[best]:
            if e in open_edges:
                open_edges.discard(e)
            else:
                open_edges.add(e)
    return order


def _bracket_contract(d: PlanarDiagram) -> LaurentPoly:
    # state: frozenset of pairs (open end u, open end v) meaning the smoothed
    # strands connect those two half-edge ends; value: poly factor, with closed
    # loops already multiplied in (first loop free of delta)
    if d.n == 0:
        return DELTA ** (d.free_loops - 1)
    A = LaurentPoly.monomial(1, 1)
    Ainv = LaurentPoly.monomial(1, -1)
    states: dict[tuple[frozenset, bool], LaurentPoly] = {(frozenset(), False): _ONE}
    for c in _order(d):
        x = d.crossings[c]
        nxt: dict[tuple[frozenset, bool], LaurentPoly] = {}
        for (match, closed), val in states.items():
            partner = {}
            for u, v in match:
                partner[u] = v
                partner[v] = u
            for sm, weight in ((True, A), (False, Ainv)):
                p = dict(partner)
                loops = 0
                for u, v in _pairs(x, sm):
                    loops += _join(p, u, v)
                new_closed = closed
                factor = weight
                for _ in range(loops):
                    if new_closed:
                        factor = factor * DELTA
                    new_closed = True
                key = (frozenset((u, v) for u, v in p.items() if u < v), new_closed)
                nxt[key] = nxt.get(key, LaurentPoly()) + val * factor
        states = {k: v for k, v in nxt.items() if v}
    total = sum(states.values(), LaurentPoly())
    if d.free_loops:
        total = total * DELTA ** d.free_loops
    return total


def _join(p: dict, u: int, v: int) -> int:
    """Add a smoothing arc between slots labelled u and v; returns closed loop count.

    ``p`` maps each open edge label (seen at exactly one processed slot) to
    the open label at the other end of its strand.
    """
    if u == v:
        # both ends of one edge meet at this crossing
        return 1
    if u in p:
        fu = p.pop(u)
        del p[fu]
        if fu == v:
            return 1
        a = fu
    else:
        a = u
    if v in p:
        fv = p.pop(v)
        del p[fv]
        if fv == a:
            return 1
        b = fv
    else:
        b = v
    p[a] = b
    p[b] = a
    return 0


def bracket_of_many(ds: Iterable[PlanarDiagram], **kw) -> list[LaurentPoly]:
    return [kauffman_bracket(d, **kw) for d in ds]
