import random

import pytest

from knotscheme.classify import (
    RULE_COUNT_COMPLETE,
    RULE_COUNT_DIFFERS,
    RULE_DERIVED_DIFFERS,
    RULE_SINGLE_POINT,
    Result,
    classify,
    classify_family_pairwise,
    classify_k4,
    classify_k5,
)
from knotscheme.diagram import AnnularDiagram, random_isotopy
from knotscheme.family import gen_k4_scheme, gen_k5_scheme
from knotscheme.scheme import Ambient, Scheme, SchemeError


def test_k5_by_count():
    v = classify_k5(gen_k5_scheme(2), gen_k5_scheme(2))
    assert v.result is Result.EQUIVALENT and v.certificate["rule"] == RULE_COUNT_COMPLETE
    v = classify_k5(gen_k5_scheme(1), gen_k5_scheme(2))
    assert v.result is Result.NONEQUIVALENT and v.certificate["rule"] == RULE_COUNT_DIFFERS


def test_k5_ignores_the_knot_drawing():
    a = gen_k5_scheme(2)
    b = Scheme(Ambient.SPHERE_S3, random_isotopy(a.knot, random.Random(3), 10))
    assert classify(a, b).result is Result.EQUIVALENT


def test_b1_rule():
    v = classify_k4(gen_k4_scheme(0, 0), gen_k4_scheme(0, 2))
    assert v.result is Result.EQUIVALENT and v.certificate["rule"] == RULE_SINGLE_POINT


def test_k4_count_differs():
    v = classify(gen_k4_scheme(1, 0), gen_k4_scheme(2, 0))
    assert v.result is Result.NONEQUIVALENT
    assert (v.certificate["left"], v.certificate["right"]) == (3, 5)


def test_k4_derived_witness():
    v = classify(gen_k4_scheme(1, 0), gen_k4_scheme(1, 1))
    assert v.result is Result.NONEQUIVALENT
    assert v.certificate["rule"] == RULE_DERIVED_DIFFERS
    assert v.certificate["left"] != v.certificate["right"]


def test_equal_invariants_are_unknown():
    a, b = gen_k4_scheme(1, 1), gen_k4_scheme(1, 1)
    v = classify(a, b)
    assert v.result is Result.UNKNOWN
    assert "not certified" in v.certificate["reason"]


def test_crossing_limit_gives_unknown():
    v = classify(gen_k4_scheme(1, 0), gen_k4_scheme(1, 3), max_crossings=6)
    assert v.result is Result.UNKNOWN
    assert v.certificate["incomplete_strands"] == [[], [1, 2]]


def test_identity_and_time_reversal():
    s = gen_k4_scheme(1, 2)
    v = classify(s, s, time_reversed=True)
    assert v.result is Result.EQUIVALENT
    assert "time_reversed" in v.certificate


def test_mixed_ambients_rejected():
    with pytest.raises(SchemeError):
        classify(gen_k4_scheme(1, 0), gen_k5_scheme(1))
    with pytest.raises(SchemeError):
        classify_k5(gen_k4_scheme(1, 0), gen_k4_scheme(1, 0))
    with pytest.raises(SchemeError):
        classify_family_pairwise([gen_k4_scheme(1, 0), gen_k5_scheme(1)])


def test_failing_scheme_rejected():
    bad = Scheme(Ambient.S2xS1, AnnularDiagram.parse("b=3\ncup2 cap2"))
    with pytest.raises(SchemeError):
        classify(bad, gen_k4_scheme(1, 0))
    # without validation the count rule still answers
    assert classify(bad, gen_k4_scheme(2, 0), validate=False).result is Result.NONEQUIVALENT


def test_pairwise_witnesses_are_oriented():
    schemes = [gen_k4_scheme(1, i) for i in range(3)]
    m = classify_family_pairwise(schemes)
    assert m[0][1].certificate["left"] == m[1][0].certificate["right"]
    assert m[0][1].certificate["right"] == m[1][0].certificate["left"]


def test_verdict_dict():
    d = classify(gen_k5_scheme(1), gen_k5_scheme(3)).to_dict()
    assert d["result"] == "NONEQUIVALENT" and d["certificate"]["invariant"] == "b"
