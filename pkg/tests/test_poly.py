import pytest
from hypothesis import given, strategies as st

from macaulayfy.poly import (
    ExponentOverflowError,
    FieldSpec,
    MonomialOrder,
    PolynomialSyntaxError,
    PolyRing,
    RingMismatchError,
    apply_ring_map,
    is_prime,
)

R = PolyRing.make("x y z")
x, y, z = R.gens()


def test_lex_first_variable_wins():
    assert MonomialOrder.lex(2).compare((1, 0), (0, 1)) == 1


def test_compare_is_reflexive():
    assert MonomialOrder.grevlex(3).compare((1, 2, 0), (1, 2, 0)) == 0


def test_grevlex_breaks_ties_on_last_variable():
    # x*y^2 has no z, x^2*z does: the smaller last exponent wins
    assert MonomialOrder.grevlex(3).compare((1, 2, 0), (2, 0, 1)) == 1


def test_grevlex_compares_degree_first():
    assert MonomialOrder.grevlex(3).compare((0, 0, 2), (1, 0, 0)) == 1


def test_block_order_eliminates_first_block():
    o = MonomialOrder.block(3, 1)
    assert o.compare((1, 0, 0), (0, 5, 5)) == 1
    assert o.compare((0, 2, 0), (0, 1, 1)) == 1


def test_arithmetic_examples():
    assert (x + y) + (-y) == x
    assert (x + y) * (x - y) == x**2 - y**2
    F2 = PolyRing.make("x y", 2)
    a, b = F2.gens()
    assert (a + b) ** 2 == a**2 + b**2


def test_ring_maps():
    assert apply_ring_map(x**3, [x, y, z]) == x**3
    T = PolyRing.make("u T")
    u, t = T.gens()
    assert apply_ring_map(x**2, [u * t, u, t], T) == u**2 * t**2
    S = PolyRing.make("a b")
    a, b = S.gens()
    assert apply_ring_map(x + y, [a**2, b**2, a], S) == a**2 + b**2


def test_ring_map_arity_checked():
    with pytest.raises(ValueError):
        apply_ring_map(x, [x, y])


def test_mixing_rings_raises():
    other = PolyRing.make("x y z", 7)
    with pytest.raises(RingMismatchError):
        x + other.var(0)


def test_characteristic_must_be_prime():
    with pytest.raises(ValueError, match="characteristic must be prime"):
        FieldSpec(4)
    assert is_prime(32003) and is_prime(65537) and not is_prime(1)


def test_exponent_overflow():
    with pytest.raises(ExponentOverflowError):
        x ** (2**31)
    big = x ** (2**30)
    with pytest.raises(ExponentOverflowError):
        big * big


def test_parse_forms():
    assert R.parse("x^2 - 3*x*y + 2") == x**2 - 3 * x * y + 2
    assert R.parse("2x y") == 2 * x * y
    assert R.parse("-(x+y)**2") == -((x + y) ** 2)
    assert R.parse("x - 32004") == x - 1


@pytest.mark.parametrize("text, pos", [("x +", 3), ("x * q", 4), ("(x + y", 6), ("x ^ y", 4), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as err:
        R.parse(text)
    assert err.value.pos == pos


def test_printing_uses_centered_coefficients():
    assert str(x - y) == "x - y"
    assert str(R.parse("x^2*y - 2*z + 5")) == "x^2*y - 2*z + 5"
    assert str(R.zero()) == "0"


def test_leading_data():
    f = x * y**2 + x**2 * z + 3
    assert f.leading_monomial() == (1, 2, 0)
    assert f.leading_monomial(MonomialOrder.lex(3)) == (2, 0, 1)
    assert f.total_degree() == 3


monomials = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(monomials, st.integers(1, R.p - 1), max_size=5).map(R.from_dict)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@given(polys)
def test_print_parse_round_trip(f):
    assert R.parse(str(f)) == f


@given(monomials, monomials, monomials)
def test_orders_are_multiplicative(a, b, c):
    for order in (MonomialOrder.lex(3), MonomialOrder.grevlex(3), MonomialOrder.block(3, 1)):
        shift = lambda m: tuple(i + j for i, j in zip(m, c))  # noqa: E731
        assert order.compare(a, b) == order.compare(shift(a), shift(b))
        assert order.compare(a, b) == -order.compare(b, a)


@given(polys, st.lists(polys, min_size=3, max_size=3), st.lists(polys, min_size=3, max_size=3))
def test_ring_maps_are_homomorphisms(f, images, more):
    g = f * f + f
    assert apply_ring_map(g, images) == apply_ring_map(f, images) ** 2 + apply_ring_map(f, images)
