import random

import pytest
from hypothesis import given, strategies as st

from macaulayfy.groebner import (
    Ideal,
    Limits,
    ModuleElement,
    ResourceLimitError,
    Submodule,
    buchberger,
    groebner_basis,
    normal_form,
    syzygies,
)
from macaulayfy.poly import MonomialOrder, PolyRing

from oracles import all_spolys_reduce, as_dicts, naive_groebner, random_polynomial

R = PolyRing.make("x y")
x, y = R.gens()
A = PolyRing.make("a b c d")
a, b, c, d = A.gens()


def test_principal_ideal():
    assert groebner_basis(Ideal(R, [x])) == [x]


def test_lex_interreduces():
    assert groebner_basis(Ideal(R, [x + y, y]), MonomialOrder.lex(2)) == [x, y]


def test_twisted_cubic_is_already_a_basis():
    gens = [a * c - b**2, b * d - c**2, a * d - b * c]
    gb = groebner_basis(Ideal(A, gens))
    assert sorted(map(str, gb)) == sorted(str(g.monic()) for g in gens)


def test_normal_forms():
    assert normal_form(x**2, Ideal(R, [x**2 - y])) == y
    assert normal_form(R.one(), Ideal(R, [x, y])) == 1
    assert normal_form(x * y - y, Ideal(R, [x * y - y])) == 0


def test_unit_ideal_basis():
    assert groebner_basis(Ideal(R, [x, x + 1])) == [R.one()]


def _same_module(M: Submodule, N: Submodule) -> bool:
    return M.contains_module(N) and N.contains_module(M)


def test_syzygies_of_one_regular_element():
    assert syzygies([x], R).is_zero()


@pytest.mark.parametrize("gens", [[x, y], [x**2, x * y]])
def test_koszul_relation(gens):
    syz = syzygies(gens, R)
    expected = Submodule(R, 2, [ModuleElement(R, [y, -x])])
    assert _same_module(syz, expected)
    for s in syz.gens:
        assert s.pair(gens) == 0


def test_syzygies_of_vectors():
    v1 = ModuleElement(R, [x, y])
    v2 = ModuleElement(R, [y, x])
    v3 = ModuleElement(R, [x * y, y**2])
    syz = syzygies([v1, v2, v3], R)
    assert syz.rank == 3
    for s in syz.gens:
        assert s.pair([v1, v2, v3]).is_zero()
    assert syz.contains(ModuleElement(R, [y, R.zero(), -R.one()]))


def test_submodule_membership_under_each_module_order():
    gens = [ModuleElement(R, [x, y]), ModuleElement(R, [y, R.zero()])]
    target = ModuleElement(R, [x * y + y**2, y**2])
    for mo in ("pot", "top"):
        N = Submodule(R, 2, gens)
        assert not N.reducer(module_order=mo).reduce(target.to_internal(), full=False)


def test_resource_guard():
    rng = random.Random(3)
    S = PolyRing.make("a b c d e")
    polys = [S.from_dict(random_polynomial(rng, 5, 4, 4, S.p)) for _ in range(5)]
    with pytest.raises(ResourceLimitError) as err:
        buchberger(as_dicts(polys), S.p, MonomialOrder.grevlex(5).key_function(), limits=Limits(max_pairs=3))
    assert "pairs" in err.value.diagnostic


def _random_ideal(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    S = PolyRing.make([f"v{i}" for i in range(n)], 32003)
    polys = [S.from_dict(random_polynomial(rng, n, 3, rng.randint(1, 3), S.p)) for _ in range(rng.randint(1, 3))]
    return S, polys


@given(st.integers(0, 10_000), st.sampled_from(["grevlex", "lex"]))
def test_agrees_with_naive_oracle(seed, kind):
    S, polys = _random_ideal(seed)
    order = MonomialOrder(kind, S.nvars)
    key = order.key_function()
    ours = as_dicts(groebner_basis(Ideal(S, polys), order))
    theirs = naive_groebner(as_dicts(polys), S.p, key)
    assert ours == theirs
    assert all_spolys_reduce(ours, S.p, key)


@given(st.integers(0, 10_000))
def test_generators_reduce_to_zero(seed):
    S, polys = _random_ideal(seed)
    I = Ideal(S, polys)
    for f in polys:
        assert I.contains(f)
    g = polys[0] * S.var(0) + polys[-1]
    assert I.contains(g)


@given(st.integers(0, 10_000))
def test_syzygies_pair_to_zero(seed):
    S, polys = _random_ideal(seed)
    polys = [f for f in polys if f] or [S.var(0)]
    for s in syzygies(polys, S).gens:
        assert s.pair(polys) == 0
