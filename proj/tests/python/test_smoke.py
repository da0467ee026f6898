import math

import pytest

import hahnkit


def test_sequence_roundtrip():
    x = hahnkit.Sequence([0.0, 1.0], label="e2")
    assert x(2) == 1.0 and x.eval(3) == 0.0
    assert x.eventually_zero
    y = hahnkit.Sequence.from_json(x.to_json())
    assert y.values(3) == [0.0, 1.0, 0.0]


def test_rule_tail():
    x = hahnkit.Sequence(rule="1/k")
    assert x(4) == 0.25
    with pytest.raises(ValueError):
        hahnkit.Sequence(rule="1/(k+")


def test_norm_of_e2():
    r = hahnkit.norm(hahnkit.named_sequence("unit", [2]), "hp:2")
    assert r["value"] == pytest.approx(math.sqrt(5.0), rel=1e-15)
    assert r["exact"]


def test_member_alternating_fails():
    v = hahnkit.member(hahnkit.named_sequence("alternating"), "hp:2")
    assert v["status"] == "fails"


def test_m_transform_round_trip():
    x = hahnkit.Sequence([3.0, -1.0, 2.5])
    back = hahnkit.m_inverse(hahnkit.m_transform(x))
    assert back.values(4) == pytest.approx([3.0, -1.0, 2.5, 0.0], abs=1e-15)


def test_classify_identity():
    r = hahnkit.classify(hahnkit.Matrix.named("identity"), "lp:2", "linf")
    assert r["overall"]["status"] == "holds"
    assert r["conditions"][0]["value"] == 1.0
    assert "lp:p -> linf" in hahnkit.supported_classes()


def test_subset_sup():
    value, subset, exact = hahnkit.subset_sup([1.0, -2.0, 3.0, 1.0], 2, 2, 1.0)
    assert exact and value == 5.0 and subset == [1, 2]


def test_verify_operators():
    r = hahnkit.verify("operators", seed=5)
    outcomes = {p["name"]: p["outcome"] for p in r["properties"]}
    assert outcomes["m_round_trip"] == "pass"
    assert outcomes["bar_relation"] == "finding"
    assert r["summary"]["fail"] == 0
    assert "wall_seconds" not in r
