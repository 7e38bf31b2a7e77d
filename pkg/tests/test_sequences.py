import pytest
from hypothesis import given, strategies as st

from macaulayfy.ideals import RingPresentation
from macaulayfy.macaulay import select_parameters
from macaulayfy.sequences import (
    UNESTABLISHED,
    BoundError,
    ZeroDivisorError,
    chart_regular_sequence,
    is_d_sequence,
    is_usd_sequence_bounded,
    product_colon_identity,
    b_transform_identity,
    parameter_battery,
    transform_inclusion,
    verify_colon_lemma,
    verify_transform_identity,
)


def _witness_in_exactly_one(R, fi):
    left = R.lift(fi["left"])
    right = R.lift(fi["right"])
    g = R(fi["witness"])
    return left.contains(g) != right.contains(g)


def test_regular_sequence_is_a_d_sequence():
    R = RingPresentation.from_strings("x y", [])
    assert is_d_sequence(R, ["x", "y"]).verdict
    assert is_usd_sequence_bounded(R, ["x", "y"], 3).verdict


def test_nilpotent_fails_with_witness():
    R = RingPresentation.from_strings("x y", ["x^2"])
    rep = is_d_sequence(R, ["x"])
    assert not rep.verdict
    fi = rep.failing_instance
    assert (fi["i"], fi["j"]) == (1, 1) and fi["left"] == ["1"] and fi["right"] == ["x"]
    assert _witness_in_exactly_one(R, fi)


def test_usd_failure_records_the_order():
    # y, x is a d-sequence on k[x,y]/(x^2 y) only in one order
    R = RingPresentation.from_strings("x y", ["x^2*y"])
    rep = is_usd_sequence_bounded(R, ["y", "x"], 1)
    assert not rep.verdict and rep.bounded
    assert rep.failing_instance["permutation"] in ([1, 2], [2, 1])
    assert _witness_in_exactly_one(R, rep.failing_instance)


def test_two_planes_parameters(planes):
    assert is_d_sequence(planes, ["x - u", "y - v"]).verdict
    assert is_usd_sequence_bounded(planes, ["x - u", "y - v"], 2).verdict


def test_guards():
    R = RingPresentation.from_strings("a b c d e f g", [])
    with pytest.raises(BoundError):
        is_usd_sequence_bounded(R, list("abcdefg"), 1)
    with pytest.raises(BoundError):
        is_usd_sequence_bounded(R, ["a"], 0)
    with pytest.raises(ValueError):
        is_d_sequence(R, [])


def test_transform_identity_with_unit_and_regular_sequences():
    R = RingPresentation.from_strings("x y z", [])
    rep = verify_transform_identity(R, "1", ["x", "y"], 2)
    assert rep.verdict and rep.bounds == {"n_bound": 2}
    assert verify_transform_identity(R, "z", ["x", "y"], 3).verdict


def test_transform_identity_rejects_zero_divisors(planes):
    with pytest.raises(ZeroDivisorError):
        verify_transform_identity(planes, "x", ["x - u"], 1)


def test_two_planes_transform_is_unit_and_hypothesis_fails(planes):
    rep = verify_transform_identity(planes, "x + u", ["x - u", "y - v"], 3)
    assert rep.state == UNESTABLISHED
    assert not all(rep.hypotheses.values())


def test_cylinder_identities(cylinder):
    ps = select_parameters(cylinder, seed=1)
    xs, s = ps.elements, ps.split
    assert verify_transform_identity(cylinder, xs[s - 1], xs[s:], 3).verdict
    assert product_colon_identity(cylinder, xs[s - 1], xs[s:], 3).verdict
    assert chart_regular_sequence(cylinder, xs[s - 1], xs[s:]).verdict


def test_product_colon_identity_on_regular_sequence():
    R = RingPresentation.from_strings("x y z", [])
    assert verify_colon_lemma("product_colon", R, "z", ["x", "y"], 1).verdict
    with pytest.raises(ValueError):
        verify_colon_lemma("no_such_identity", R)


def test_double_cylinder_identities(double_cylinder):
    ps = select_parameters(double_cylinder, seed=2)
    rep = b_transform_identity(double_cylinder, ps.elements, ps.split, 2)
    assert rep.verdict
    assert any(i["instance"] == "b~^2 = b b~" and i["holds"] for i in rep.instances)
    assert transform_inclusion(double_cylinder, ps.elements, ps.split, 2).verdict


@pytest.mark.parametrize("fixture", ["planes", "cylinder"])
def test_parameter_battery_and_parameter_colon_identity(fixture, request):
    R = request.getfixturevalue(fixture)
    ps = select_parameters(R, seed=3)
    assert parameter_battery(R, ps.elements, ps.split).verdict
    assert verify_colon_lemma("parameter_colon", R, ps.elements).verdict
    mixed = [2 if k % 2 == 0 else 1 for k in range(ps.d)]
    assert verify_colon_lemma("parameter_colon", R, ps.elements, mixed).verdict


@given(st.permutations(["x", "y", "z"]), st.integers(1, 3), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_regular_sequences_pass_every_bounded_check(order, length, exps):
    R = RingPresentation.from_strings("x y z", [])
    seq = [f"{v}^{e}" for v, e in zip(order[:length], exps)]
    assert is_d_sequence(R, seq).verdict
    assert is_usd_sequence_bounded(R, seq, 2).verdict
