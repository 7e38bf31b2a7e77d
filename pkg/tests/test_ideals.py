import random

import pytest
from hypothesis import given, strategies as st

from macaulayfy.groebner import Ideal
from macaulayfy.ideals import (
    RingPresentation,
    eliminate,
    equidimensional_hint,
    ideal_combine,
    ideal_dimension,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    independent_sets,
    saturate,
)
from macaulayfy.poly import PolyRing

from oracles import membership_both_ways, random_polynomial

P = PolyRing.make("x y u v")
x, y, u, v = P.gens()


def ideal(*gens):
    return Ideal(P, list(gens))


def test_products_and_powers():
    assert membership_both_ways(ideal_combine("product", ideal(x), ideal(y)), ideal(x * y))
    sq = ideal_combine("power", ideal(x, y), n=2)
    assert membership_both_ways(sq, ideal(x**2, x * y, y**2))
    with pytest.raises(ValueError):
        ideal_combine("cube", ideal(x))


def test_b_center_expansion_has_five_generators():
    Q = PolyRing.make("x1 x2 x3")
    x1, x2, x3 = Q.gens()
    b = ideal_product(Ideal(Q, [x1, x2, x3]), Ideal(Q, [x2, x3]))
    assert sorted(map(str, b.gens)) == sorted(["x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"])


def test_intersections():
    assert membership_both_ways(ideal_intersect(ideal(x), ideal(y)), ideal(x * y))
    I = ideal(x**2, y * u)
    assert membership_both_ways(ideal_intersect(I, I), I)
    assert membership_both_ways(ideal_intersect(ideal(x, y), ideal(u, v)),
                                ideal(x * u, x * v, y * u, y * v))


def test_quotients():
    I = ideal(x**2 * y)
    assert membership_both_ways(ideal_quotient(I, ideal(P.one())), I)
    assert membership_both_ways(ideal_quotient(I, ideal(x)), ideal(x * y))
    with pytest.raises(ValueError):
        ideal_quotient(I, ideal())


def test_quotient_in_a_quotient_ring():
    R = RingPresentation.from_strings("x y", ["x^2"])
    assert membership_both_ways(R.annihilator_of("x"), R.lift(["x"]))


def test_saturation_and_exponent():
    sat, n = saturate(ideal(x**2 * y), ideal(x))
    assert membership_both_ways(sat, ideal(y)) and n == 2
    sat, n = saturate(ideal(x**2 * y), ideal(P.one()))
    assert membership_both_ways(sat, ideal(x**2 * y)) and n == 0


def test_saturation_on_the_two_planes_ring(planes):
    q = planes.lift(["x - u", "y - v"])
    sat, _ = saturate(q, planes("x + u"))
    # strictly larger: the two lines meet only at the origin, which the
    # saturation removes
    assert not q.contains(P.one()) and sat.contains(sat.ring.one())


def test_elimination():
    S = PolyRing.make("x y z")
    a, b, c = S.gens()
    assert eliminate(Ideal(S, [b - a**2]), ["y"]).is_zero()
    E = eliminate(Ideal(S, [b - a**2, b**2 - c]), ["y"])
    assert membership_both_ways(E, Ideal(S, [a**4 - c]))
    I = Ideal(S, [a * b, c])
    assert membership_both_ways(eliminate(I, []), I)


def test_equality_with_witness():
    same, _ = ideal_equal(ideal(x, y), ideal(y + x, x))
    assert same
    same, (g, side) = ideal_equal(ideal(x), ideal(x**2))
    assert not same and g == x and side == "left"
    same, _ = ideal_equal(ideal_intersect(ideal(x, y), ideal(u, v)), ideal(x * u, x * v, y * u, y * v))
    assert same


def test_dimensions(planes):
    assert RingPresentation.from_strings("x y", []).dim() == 2
    assert planes.dim() == 2
    assert ideal_dimension(ideal(P.one())) == -1
    assert independent_sets([(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)], 4)[0] == 2


def test_equidimensionality_hint(planes):
    assert equidimensional_hint(planes)
    mixed = RingPresentation.from_strings("x y z", ["x*z", "y*z"])  # plane plus a line
    assert not equidimensional_hint(mixed)


def _random(seed, count=2):
    rng = random.Random(seed)
    S = PolyRing.make("a b c", 32003)
    return S, [Ideal(S, [S.from_dict(random_polynomial(rng, 3, 2, 2, S.p)) for _ in range(2)])
               for _ in range(count)]


@given(st.integers(0, 5000))
def test_intersection_is_in_both_and_contains_product(seed):
    S, (I, J) = _random(seed)
    K = ideal_intersect(I, J)
    assert all(I.contains(g) and J.contains(g) for g in K.gens)
    assert all(K.contains(g) for g in ideal_product(I, J).gens)


@given(st.integers(0, 5000))
def test_quotient_property(seed):
    S, (I, J) = _random(seed)
    if J.is_zero():
        return
    Q = ideal_quotient(I, J)
    assert all(I.contains(q * g) for q in Q.gens for g in J.gens)
    assert all(Q.contains(g) for g in I.gens)


@given(st.integers(0, 5000))
def test_saturation_is_stable(seed):
    S, (I, J) = _random(seed)
    if J.is_zero():
        return
    sat, n = saturate(I, J)
    again = ideal_quotient(sat, J)
    assert membership_both_ways(again, sat)
    assert all(I.contains(h * s) for s in sat.gens for h in ideal_power(J, n).gens)
    # second route: colon by J until the chain stops growing
    chain = I
    while True:
        nxt = ideal_quotient(chain, J)
        if membership_both_ways(nxt, chain):
            break
        chain = nxt
    assert membership_both_ways(chain, sat)
