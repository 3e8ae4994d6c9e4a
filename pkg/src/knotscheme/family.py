"""Explicit scheme families and the realizing-flow report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .bracket import DEFAULT_MAX_CROSSINGS
from .diagram.annular import AnnularDiagram, SphereCutDiagram
from .scheme import (
    BETTI,
    FAIL,
    Ambient,
    FlowClassDescriptor,
    Manifold,
    Scheme,
    SchemeError,
    alternating_sum,
    check_admissibility,
    validate_scheme,
)

# right-handed trefoil summand tied into the strand at position 1
TREFOIL_PATTERN = (("cup", 2), ("o", 1), ("o", 1), ("o", 1), ("cap", 2))
TREFOIL_CROSSINGS = 3


@dataclass(frozen=True)
class FamilyParams:
    gamma: int
    i: int = 0

    def __post_init__(self):
        if self.gamma < 0 or self.i < 0:
            raise ValueError("gamma and i must be non-negative")


def k4_word(gamma: int, i: int) -> tuple[tuple[str, int], ...]:
    """Slice word of the knot with 2*gamma+1 points on the sphere and i trefoils.

    Reading upward: i trefoil summands on the strand starting at bottom
    position 1, then gamma caps pairing bottom positions (1,2), (3,4), ...,
    leaving the strand from bottom position 2*gamma+1 alone, then gamma cups
    opening top positions (2,3), (4,5), ....  The lone strand runs to top
    position 1.
    """
    ops: list[tuple[str, int]] = []
    for _ in range(i):
        ops.extend(TREFOIL_PATTERN)
    ops.extend(("cap", 1) for _ in range(gamma))
    ops.extend(("cup", 2 * j) for j in range(1, gamma + 1))
    return tuple(ops)


def gen_k4_scheme(
    p: FamilyParams | int, i: int | None = None, max_crossings: int = DEFAULT_MAX_CROSSINGS
) -> Scheme:
    """Trivial knot in S^2 x S^1 meeting the sphere in 2*gamma+1 points."""
    if not isinstance(p, FamilyParams):
        p = FamilyParams(int(p), int(i or 0))
    if TREFOIL_CROSSINGS * p.i > max_crossings:
        raise ValueError(
            f"i={p.i} needs {TREFOIL_CROSSINGS * p.i} crossings, over the budget of {max_crossings}"
        )
    knot = AnnularDiagram(k4_word(p.gamma, p.i), 2 * p.gamma + 1).validate()
    return Scheme(Ambient.S2xS1, knot, f"lambda_{2 * p.gamma + 1},{p.i}")


def k5_word(gamma: int) -> tuple[tuple[tuple[str, int], ...], int]:
    """(ops, sphere level) of an unknot meeting a level sphere in 2*gamma points."""
    if gamma == 0:
        return (("cup", 1), ("cap", 1)), 0
    cups = [("cup", 2 * j - 1) for j in range(1, gamma + 1)]
    caps = [("cap", 2)] * (gamma - 1) + [("cap", 1)]
    return tuple(cups + caps), gamma


def gen_k5_scheme(gamma: int) -> Scheme:
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    ops, level = k5_word(gamma)
    return Scheme(Ambient.SPHERE_S3, SphereCutDiagram(ops, level).validate(), f"k5_gamma{gamma}")


# -- realization -------------------------------------------------------------------

HANDLE_FIELD = "x' = x, y' = -y"


def descriptor_for(s: Scheme) -> FlowClassDescriptor:
    if s.ambient is Ambient.S2xS1:
        return FlowClassDescriptor(4, 1, 2, Manifold.S4)
    return FlowClassDescriptor(5, 1, 2, Manifold.CP2)


def realization_report(s: Scheme) -> dict[str, Any]:
    """Handle-by-handle description of a flow whose scheme is ``s``."""
    report = validate_scheme(s)
    if report.status == FAIL:
        failed = [c.name for c in report.checks if c.status == FAIL]
        raise SchemeError(f"scheme fails validation: {', '.join(failed)}")
    desc = descriptor_for(s)
    kvec = desc.equilibria()
    two_sinks = s.ambient is Ambient.SPHERE_S3

    equilibria = [{"name": "omega_1", "type": "sink", "morse_index": 0}]
    if two_sinks:
        equilibria.append({"name": "omega_2", "type": "sink", "morse_index": 0})
    equilibria += [
        {"name": "sigma_1", "type": "saddle", "morse_index": 1},
        {"name": "sigma_2", "type": "saddle", "morse_index": 2},
        {"name": "alpha", "type": "source", "morse_index": 4},
    ]

    def handle(index: int, name: str, attach: str) -> dict[str, Any]:
        return {
            "name": name,
            "index": index,
            "core": f"B^{index} x B^{4 - index}",
            "field": HANDLE_FIELD,
            "coordinates": f"x in R^{index}, y in R^{4 - index}",
            "attached_to": attach,
        }

    handles = [handle(0, "H0_1", "-")]
    if two_sinks:
        handles.append(handle(0, "H0_2", "-"))
        feet = "one foot on each of H0_1, H0_2"
        sigma = "S3"
    else:
        feet = "both feet on H0_1"
        sigma = "S2xS1"
    handles.append(handle(1, "H1", feet))
    handles.append(
        handle(2, "H2", f"boundary of H0 u H1 (= {sigma}) along the knot lambda_u")
    )
    handles.append(handle(4, "H4", "the remaining 3-sphere boundary"))

    return {
        "flow_class": desc.to_dict(),
        "admissible": check_admissibility(desc),
        "equilibria_by_index": list(kvec),
        "betti_numbers": list(BETTI[desc.manifold]),
        "morse_equality": {
            "equilibria_alternating_sum": alternating_sum(kvec),
            "betti_alternating_sum": alternating_sum(BETTI[desc.manifold]),
        },
        "equilibria": equilibria,
        "handles": handles,
        "cross_section": sigma,
        "attaching": {
            "Lambda_s": "belt sphere of H1 in the cross-section",
            "lambda_u": "attaching circle of H2",
            "heteroclinic_curves": s.b,
            "intersection_index": s.index,
        },
        "scheme": s.to_dict(),
        "validation": report.to_dict(),
    }


def report_text(r: dict[str, Any]) -> str:
    fc = r["flow_class"]
    lines = [
        f"flow class: k={fc['k']} mu={fc['mu']} nu={fc['nu']} on {fc['manifold']}"
        f" (admissible: {'yes' if r['admissible'] else 'no'})",
        f"equilibria per Morse index: {r['equilibria_by_index']}",
        f"Betti numbers: {r['betti_numbers']}",
        "Morse equality: {equilibria_alternating_sum} = {betti_alternating_sum}".format(**r["morse_equality"]),
        "equilibria:",
    ]
    for e in r["equilibria"]:
        lines.append(f"  {e['name']}: {e['type']}, index {e['morse_index']}")
    lines.append("handles:")
    for h in r["handles"]:
        lines.append(f"  {h['name']} ({h['core']}; {h['field']}; {h['coordinates']}) attached to {h['attached_to']}")
    a = r["attaching"]
    lines.append(f"cross-section: {r['cross_section']}")
    lines.append(f"Lambda_s: {a['Lambda_s']}")
    lines.append(f"lambda_u: {a['lambda_u']}")
    lines.append(f"heteroclinic curves: {a['heteroclinic_curves']}, intersection index {a['intersection_index']}")
    return "\n".join(lines)
