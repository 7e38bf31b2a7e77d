import pytest

from macaulayfy.ideals import RingPresentation
from macaulayfy.macaulay import (
    ConstructionUndefined,
    ParameterSystem,
    PipelineConfig,
    center_charts,
    center_ideal,
    certify_blowup,
    ideal_transform_center,
    macaulayfy,
    parameter_coordinates,
    select_parameters,
)

from conftest import two_planes


@pytest.mark.parametrize("extra, s", [("", 0), ("w", 1), ("w r", 2)])
@pytest.mark.parametrize("seed", [0, 5])
def test_selected_parameters_satisfy_every_clause(extra, s, seed):
    R = two_planes(extra)
    ps = select_parameters(R, seed=seed)
    assert ps.split == s and ps.d == R.dim()
    assert all(ps.check().values())


def test_selection_is_deterministic(cylinder):
    a = select_parameters(cylinder, seed=11).to_dict()
    b = select_parameters(two_planes("w"), seed=11).to_dict()
    assert a == b


def test_selection_needs_a_graded_ring():
    R = RingPresentation(RingPresentation.from_strings("x y", []).ring, [], None)
    with pytest.raises(ValueError):
        select_parameters(R)


def _fake(R, d, s):
    gens = R.ring.gens()
    return ParameterSystem(R, gens[:d], s, s)


def test_center_shapes():
    R = RingPresentation.from_strings("a b c d", [])
    assert center_ideal(_fake(R, 2, 0)).to_dict()["generators"] == ["x1", "x2"]
    b = center_ideal(_fake(R, 3, 1))
    assert b.to_dict()["generators"] == ["x1*x2", "x1*x3", "x2*x2", "x2*x3", "x3*x3"]
    c = center_ideal(_fake(R, 4, 2))
    assert c.factors == [[1, 2, 3, 4], [2, 3, 4], [3, 4]] and len(c.generators) == 14
    with pytest.raises(ConstructionUndefined):
        center_ideal(_fake(R, 4, 3))
    with pytest.raises(ConstructionUndefined):
        center_ideal(_fake(R, 3, 0), "b")


def test_reduction_generates_the_same_integral_closure_shape():
    R = RingPresentation.from_strings("a b c d", [])
    b = center_ideal(_fake(R, 3, 1))
    assert sorted(b.reduction()) == [(1, 2), (1, 3), (2, 2), (3, 3)]


def test_parameter_coordinates_invert(cylinder):
    ps = select_parameters(cylinder, seed=0)
    pc = parameter_coordinates(ps)
    from macaulayfy.poly import apply_ring_map

    for v, img in zip(cylinder.ring.gens(), pc.forward):
        assert apply_ring_map(img, pc.backward, cylinder.ring) == v


@pytest.mark.parametrize("extra, bound", [("", 2), ("w", 3), ("w r", 4)])
def test_default_centers_certify(extra, bound):
    R = two_planes(extra)
    ps = select_parameters(R, seed=7)
    st = certify_blowup(R, center_ideal(ps))
    assert st.all_cm and st.theorem_holds
    assert all(c.depth >= bound and c.denominator_regular for c in st.charts)


@pytest.mark.parametrize("extra", ["w", "w r"])
def test_reduction_charts_agree_with_full_cover(extra):
    R = two_planes(extra)
    ps = select_parameters(R, seed=4)
    center = center_ideal(ps)
    full = certify_blowup(R, center)
    reduced = certify_blowup(R, center, use_reduction=True)
    assert len(reduced.charts) < len(full.charts)
    assert full.all_cm == reduced.all_cm
    assert min(c.depth for c in full.charts) == min(c.depth for c in reduced.charts)


def test_transform_centers(cylinder, double_cylinder):
    ps = select_parameters(cylinder, seed=2)
    sat, rep = ideal_transform_center(center_ideal(ps, "q"))
    assert rep.verdict and sat.contains(ps.x(2))
    st = certify_blowup(cylinder, center_ideal(ps, "q", transform=True))
    assert all(c.depth >= 3 for c in st.charts)
    ps2 = select_parameters(double_cylinder, seed=2)
    _, rep2 = ideal_transform_center(center_ideal(ps2, "b"))
    assert rep2.verdict
    st2 = certify_blowup(double_cylinder, center_ideal(ps2, "b", transform=True))
    assert all(c.depth >= 4 for c in st2.charts)


def test_chart_structure_maps(cylinder):
    ps = select_parameters(cylinder, seed=0)
    center = center_ideal(ps)
    for ch in center_charts(center):
        den = ch.map(ch.denominator)
        for t in center.generators:
            frac = ch.fractions[center.label(t)]
            assert ch.ring.ideal.contains(den * frac - ch.map(center.element(t)))


def test_wrong_parameters_give_non_cm_charts(cylinder):
    x, y, u, v, w = cylinder.ring.gens()
    bad = ParameterSystem(cylinder, [x + y + w, u + v + w, x + v + 2 * w], 0, 1)
    assert not bad.check()["tail_in_a"]
    st = certify_blowup(cylinder, center_ideal(bad, "q"))
    assert not st.all_cm


def test_pipeline_on_cm_input():
    rep = macaulayfy(RingPresentation.from_strings("x y z", ["x*y*z"]))
    assert rep.verdict and rep.stages == []


def test_pipeline_refuses_large_noncm_locus():
    with pytest.raises(ConstructionUndefined):
        macaulayfy(two_planes("w r t"), PipelineConfig(max_dim=6))


def test_pipeline_reports(planes, double_cylinder):
    rep = macaulayfy(planes)
    assert rep.verdict and len(rep.stages) == 1 and rep.battery.verdict
    rep = macaulayfy(double_cylinder, PipelineConfig(seed=1))
    assert rep.verdict and rep.stages[0].center.recipe == "c"
