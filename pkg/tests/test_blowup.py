import pytest

from macaulayfy.blowup import ChartError, adjoin_fractions, blowup_charts, rees_presentation
from macaulayfy.groebner import Ideal
from macaulayfy.ideals import RingPresentation, ideal_equal
from macaulayfy.poly import apply_ring_map


def test_chart_of_the_origin_blowup():
    R = RingPresentation.from_strings("x y", [])
    raw = adjoin_fractions(R, ["y"], "x", simplify=False)
    assert [str(g) for g in raw.ring.ideal.groebner()] == ["x*T1 - y"]
    chart = adjoin_fractions(R, ["y"], "x")
    assert chart.ring.nvars == 2 and chart.ring.ideal.groebner() == []
    assert chart.map(R("y")) == chart.ring("x*T1")


def test_principal_regular_center_gives_the_ring_back():
    R = RingPresentation.from_strings("x y", ["x*y - y^2"])
    (chart,) = blowup_charts(R, ["x + y"])
    assert chart.ring.variables == R.variables
    assert ideal_equal(chart.ring.ideal, R.ideal)[0]


def test_nilpotent_denominator_rejected():
    R = RingPresentation.from_strings("x y", ["x^2"])
    with pytest.raises(ChartError):
        adjoin_fractions(R, ["y"], "x")


def test_rees_of_the_maximal_ideal_of_the_plane():
    R = RingPresentation.from_strings("x y", [])
    S = rees_presentation(R, ["x", "y"])
    assert [str(g) for g in S.ideal.groebner()] == ["y*T1 - x*T2"]
    assert S.weights == (1, 1, 1, 1)


def test_rees_of_a_regular_principal_ideal_adds_nothing():
    R = RingPresentation.from_strings("x y", [])
    assert rees_presentation(R, ["x"]).ideal.groebner() == []


def test_rees_needs_generators():
    with pytest.raises(ValueError):
        rees_presentation(RingPresentation.from_strings("x", []), [])


def test_rees_kernel_vanishes_under_substitution(planes):
    gens = [planes("x - u"), planes("y - v")]
    S = rees_presentation(planes, gens)
    big = planes.ring.extend(["t"])
    t = big.var("t")
    images = [big.var(i) for i in range(planes.nvars)] + [g.embed(big) * t for g in gens]
    I = Ideal(big, [g.embed(big) for g in planes.ideal.gens])
    for k in S.ideal.groebner():
        assert I.contains(apply_ring_map(k, images, big))
    assert len(S.ideal.groebner()) > len(planes.ideal.gens)


def test_chart_fractions_satisfy_their_defining_relation(planes):
    gens = [planes("x - u"), planes("y - v")]
    for chart in blowup_charts(planes, gens):
        den = chart.map(chart.denominator)
        for g in gens:
            frac = chart.fractions[str(g)]
            assert chart.ring.ideal.contains(den * frac - chart.map(g))
        assert chart.ring.is_regular(den)
