"""Acceptance gate: one pass/fail line per criterion, printed in the summary."""

import json
import random
import time
from pathlib import Path

from conftest import ACCEPTANCE_LINES, FIGURE_EIGHT, HOPF, TREFOIL
from oracle import bracket_dict

from knotscheme.bracket import jones, kauffman_bracket
from knotscheme.classify import RULE_SINGLE_POINT, Result, classify, classify_family_pairwise
from knotscheme.diagram import UNKNOT, AnnularDiagram, parse_gauss, random_isotopy
from knotscheme.diagram.moves import R1_INSERT, R1_REMOVE, random_move
from knotscheme.family import gen_k4_scheme, gen_k5_scheme
from knotscheme.laurent import LaurentPoly, substitute_mirror
from knotscheme.scheme import (
    BETTI,
    Ambient,
    FlowClassDescriptor,
    Manifold,
    Scheme,
    alternating_sum,
    check_admissibility,
    derived_invariant,
)

FIXTURES = Path(__file__).parent / "fixtures"
SEED = 20240601


def record(n: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}")


def test_1_parity():
    t0 = time.perf_counter()
    bad = []
    for gamma in range(4):
        for i in range(5):
            s = gen_k4_scheme(gamma, i)
            if (s.b, s.index) != (2 * gamma + 1, 1):
                bad.append(("k4", gamma, i, s.b, s.index))
    for gamma in range(6):
        s = gen_k5_scheme(gamma)
        if (s.b, s.index) != (2 * gamma, 0):
            bad.append(("k5", gamma, s.b, s.index))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    record(1, "parity (b, index)", ok, f"26 schemes, {len(bad)} mismatches, {dt:.3f}s (< 1s)")
    assert ok, bad


def test_2_k5_matrix():
    t0 = time.perf_counter()
    schemes = [gen_k5_scheme(g) for g in range(6)]
    m = classify_family_pairwise(schemes)
    dt = time.perf_counter() - t0
    wrong = [
        (i, j)
        for i in range(6)
        for j in range(6)
        if m[i][j].result is not (Result.EQUIVALENT if i == j else Result.NONEQUIVALENT)
    ]
    unknown = sum(v.result is Result.UNKNOWN for row in m for v in row)
    ok = not wrong and unknown == 0 and dt < 1.0
    record(2, "k=5 6x6 matrix", ok, f"{len(wrong)} wrong cells, {unknown} UNKNOWN, {dt:.3f}s (< 1s)")
    assert ok


def test_3_countable_family():
    t0 = time.perf_counter()
    schemes = [gen_k4_scheme(1, i) for i in range(5)]
    m = classify_family_pairwise(schemes, max_crossings=24)
    dt = time.perf_counter() - t0
    trefoil = jones(parse_gauss(TREFOIL))
    problems = []
    for i in range(5):
        for j in range(5):
            want = Result.EQUIVALENT if i == j else Result.NONEQUIVALENT
            if m[i][j].result is not want:
                problems.append((i, j, m[i][j].result.value))
    # witness: every closure's components are the unknot and trefoil^i
    for i, s in enumerate(schemes):
        d = derived_invariant(s)
        power = trefoil**i
        for entry in d.entries:
            knotted = [p for p in entry if p != LaurentPoly.constant(1)]
            if knotted and knotted != [power]:
                problems.append(("witness", i, [p.to_t_text() for p in entry]))
        if i and not any(power in e for e in d.entries):
            problems.append(("missing trefoil power", i))
    ok = not problems and dt < 60.0
    record(3, "k=4 family gamma=1, i=0..4", ok, f"{len(problems)} problems, {dt:.2f}s (< 60s)")
    assert ok, problems


def _seed_pool() -> list:
    pool = [UNKNOT, parse_gauss(TREFOIL), parse_gauss(FIGURE_EIGHT), parse_gauss(HOPF)]
    pool.append(parse_gauss("1u- 3u+ 2o- 4u- 3o+ 1o- 4o- 2u-"))
    pool.append(parse_gauss(TREFOIL).mirror())
    return pool


def _random_diagram(rng: random.Random, pool: list):
    d = rng.choice(pool)
    for _ in range(rng.randint(0, 6)):
        _, d = random_move(d, rng, max_crossings=10)
    return d


def test_4_jones_invariance():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    pool = _seed_pool()
    same = r1 = r1_ok = other = other_ok = 0
    failures = []
    for k in range(200):
        d = _random_diagram(rng, pool)
        assert d.n <= 10
        move, d2 = random_move(d, rng, max_crossings=10)
        if jones(d2) == jones(d):
            same += 1
        else:
            failures.append((k, move))
        if move.kind in (R1_INSERT, R1_REMOVE):
            r1 += 1
            ratio_sign = (d2.writhe - d.writhe) * (1 if move.kind == R1_INSERT else -1)
            factor = LaurentPoly({3 * ratio_sign: -1})
            before, after = kauffman_bracket(d), kauffman_bracket(d2)
            if move.kind == R1_INSERT:
                r1_ok += after == before * factor
            else:
                r1_ok += before == after * factor
        else:
            other += 1
            other_ok += kauffman_bracket(d2) == kauffman_bracket(d)
    dt = time.perf_counter() - t0
    ok = same == 200 and r1 > 0 and r1_ok == r1 and other_ok == other and dt < 30.0
    record(
        4,
        "Jones invariance",
        ok,
        f"{same}/200 unchanged, R1 factor -A^(+-3) in {r1_ok}/{r1}, "
        f"R2/R3 bracket fixed in {other_ok}/{other}, {dt:.2f}s (< 30s)",
    )
    assert ok, failures


def test_5_fixture_values():
    unknot = jones(UNKNOT)
    right = jones(parse_gauss(TREFOIL))
    left = jones(parse_gauss(TREFOIL).mirror())
    hopf = kauffman_bracket(parse_gauss(HOPF))
    hopf_oracle = bracket_dict(parse_gauss(HOPF).crossings)
    checks = {
        "unknot": unknot == LaurentPoly.constant(1),
        "trefoil mirror": substitute_mirror(right) == left and right != left,
        "trefoil value": right.to_t_text() == "-t^4 + t^3 + t",
        "hopf": hopf == LaurentPoly({4: -1, -4: -1}) and hopf.coeffs == hopf_oracle,
    }
    ok = all(checks.values())
    record(5, "fixture values", ok, ", ".join(f"{k} {'ok' if v else 'WRONG'}" for k, v in checks.items()))
    assert ok


def _descriptor(row) -> FlowClassDescriptor:
    return FlowClassDescriptor(row["k"], row["mu"], row["nu"], Manifold(row["manifold"]))


def test_6_admissibility():
    data = json.loads((FIXTURES / "admissible_rows.json").read_text())
    accepted = [_descriptor(r) for r in data["admissible"]]
    perturbed = [_descriptor(r) for r in data["perturbed"]]
    acc_ok = sum(check_admissibility(d) for d in accepted)
    rej_ok = sum(not check_admissibility(d) for d in perturbed)
    morse_ok = sum(alternating_sum(d.equilibria()) == alternating_sum(BETTI[d.manifold]) for d in accepted)
    ok = (acc_ok, rej_ok, morse_ok) == (12, 20, 12) and len(accepted) == 12 and len(perturbed) == 20
    record(
        6,
        "admissibility table",
        ok,
        f"accepted {acc_ok}/12, rejected {rej_ok}/20, Morse equality {morse_ok}/12",
    )
    assert ok


def test_7_soundness_fuzz():
    rng = random.Random(SEED + 7)
    never_ne = 0
    for _ in range(100):
        if rng.random() < 0.7:
            s = gen_k4_scheme(rng.randint(0, 2), rng.randint(0, 2))
        else:
            s = gen_k5_scheme(rng.randint(0, 4))
        knot = random_isotopy(s.knot, rng, rng.randint(1, 8))
        twin = Scheme(s.ambient, knot)
        v = classify(s, twin)
        never_ne += v.result is not Result.NONEQUIVALENT
    ok = never_ne == 100
    record(7, "soundness fuzz", ok, f"{never_ne}/100 pairs not NONEQUIVALENT")
    assert ok


def test_8_single_point_rule():
    rng = random.Random(SEED + 8)
    base = [gen_k4_scheme(0, i) for i in range(4)]
    base += [Scheme(Ambient.S2xS1, random_isotopy(s.knot, rng, 6)) for s in base]
    base.append(Scheme(Ambient.S2xS1, AnnularDiagram.parse("b=1\ncup2 o1 o2 u1 cap2")))
    pairs = ok_pairs = 0
    for a in range(len(base)):
        for c in range(a + 1, len(base)):
            if base[a].knot.word() == base[c].knot.word():
                continue
            pairs += 1
            v = classify(base[a], base[c])
            ok_pairs += v.result is Result.EQUIVALENT and v.certificate.get("rule") == RULE_SINGLE_POINT
    ok = pairs > 0 and ok_pairs == pairs
    record(8, "b=1 rule", ok, f"{ok_pairs}/{pairs} distinct-encoding pairs EQUIVALENT by the single-point rule")
    assert ok
