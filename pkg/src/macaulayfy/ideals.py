"""Ideal calculus over a polynomial ring and quotient-ring presentations.

Every operation on the quotient ring ``A = P/I`` is carried out in ``P`` on
ideals that contain ``I``.  Intersections and quotients use a tag variable
and a block elimination order.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .groebner import Ideal
from .poly import FieldSpec, MonomialOrder, Polynomial, PolyRing, RingMismatchError

_TAG = "_t"


def _same(I: Ideal, J: Ideal):
    if not I.ring.compatible(J.ring):
        raise RingMismatchError("ideals live in different rings")


def _fresh(ring: PolyRing, base: str) -> str:
    name = base
    k = 0
    while name in ring.index:
        k += 1
        name = f"{base}{k}"
    return name


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    seen = []
    for f in I.gens:
        for g in J.gens:
            h = (f * g).monic()
            if h not in seen:
                seen.append(h)
    return Ideal(I.ring, seen)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative power")
    out = Ideal(I.ring, [I.ring.one()])
    for _ in range(n):
        out = ideal_product(out, I)
    return out


def ideal_combine(op: str, I: Ideal, J: Ideal | None = None, n: int | None = None) -> Ideal:
    if op == "sum":
        return ideal_sum(I, J)
    if op == "product":
        return ideal_product(I, J)
    if op == "power":
        return ideal_power(I, n)
    raise ValueError(f"unknown operation {op!r}")


def _tag_ring(ring: PolyRing, tags: Sequence[str]) -> tuple:
    names = [_fresh(ring, t) for t in tags]
    big = PolyRing(ring.field, tuple(names) + ring.names,
                   MonomialOrder.block(len(names) + ring.nvars, len(names)))
    return big, names


def eliminate(I: Ideal, drop: Iterable) -> Ideal:
    """``I`` intersected with the subring of the variables not in ``drop``.

    The result lives in ``I.ring``; its generators avoid the dropped variables.
    """
    ring = I.ring
    drop_idx = sorted({ring.index[v] if isinstance(v, str) else v for v in drop})
    if not drop_idx:
        return Ideal(ring, I.gens)
    keep = [i for i in range(ring.nvars) if i not in drop_idx]
    perm = drop_idx + keep
    order = MonomialOrder("block", ring.nvars, len(drop_idx), "grevlex", tuple(perm))
    gb = I.groebner(order)
    dropped = set(drop_idx)
    return Ideal(ring, [g for g in gb if not (g.support() & dropped)])


def _eliminate_tags(big: PolyRing, gens: Sequence[Polynomial], ntags: int, ring: PolyRing) -> Ideal:
    gb = Ideal(big, gens).groebner()
    out = []
    for g in gb:
        if any(any(m[:ntags]) for m in g.terms):
            continue
        out.append(Polynomial(ring, {m[ntags:]: c for m, c in g.terms.items()}, _clean=True))
    return Ideal(ring, out)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` intersected with ``J`` via ``t*I + (1-t)*J``, eliminating ``t``."""
    _same(I, J)
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    big, (t,) = _tag_ring(ring, [_TAG])
    T = big.var(t)
    gens = [T * f.embed(big) for f in I.gens] + [(1 - T) * g.embed(big) for g in J.gens]
    return _eliminate_tags(big, gens, 1, ring)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = ideal_intersect(out, J)
    return out


def principal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    ring = I.ring
    if not f:
        raise ValueError("quotient by the zero ideal")
    if f.is_constant():
        return Ideal(ring, I.gens)
    if not I.gens:
        return Ideal(ring, [])
    inter = ideal_intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [g.exact_divide(f) for g in inter.gens])


def ideal_quotient(I: Ideal, J: Ideal | Polynomial) -> Ideal:
    """``(I : J) = {a : a J contained in I}``."""
    if isinstance(J, Polynomial):
        J = Ideal(I.ring, [J])
    _same(I, J)
    if J.is_zero():
        raise ValueError("quotient by the zero ideal")
    parts = [principal_quotient(I, g) for g in J.gens]
    return intersect_all(parts)


def saturate_principal(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f^infinity`` as ``(I + (1 - y f))`` with ``y`` eliminated."""
    ring = I.ring
    if f.is_constant():
        return Ideal(ring, I.gens)
    big, (y,) = _tag_ring(ring, ["_y"])
    Y = big.var(y)
    gens = [g.embed(big) for g in I.gens] + [1 - Y * f.embed(big)]
    return _eliminate_tags(big, gens, 1, ring)


def saturate(I: Ideal, J: Ideal | Polynomial) -> tuple:
    """``(I : J^infinity, n)`` with ``n`` least such that ``I : J^n = I : J^(n+1)``."""
    if isinstance(J, Polynomial):
        J = Ideal(I.ring, [J])
    _same(I, J)
    if J.is_zero():
        return Ideal(I.ring, [I.ring.one()]), 0
    if J.is_unit():
        return Ideal(I.ring, I.gens), 0
    parts = [saturate_principal(I, g) for g in J.gens]
    sat = intersect_all(parts)
    return sat, saturation_exponent(I, J, sat)


def saturation_exponent(I: Ideal, J: Ideal, sat: Ideal) -> int:
    """Least ``n`` with ``J^n * sat`` inside ``I``."""
    current = [I.reduce(g) for g in sat.gens]
    current = [g for g in current if g]
    n = 0
    while current:
        n += 1
        nxt = []
        for s in current:
            for g in J.gens:
                r = I.reduce(s * g)
                if r and r not in nxt:
                    nxt.append(r)
        current = nxt
    return n


def contains(I: Ideal, J: Ideal) -> bool:
    return all(I.contains(g) for g in J.gens)


def ideal_equal(I: Ideal, J: Ideal) -> tuple:
    """``(True, None)`` or ``(False, (g, side))`` with ``g`` a generator of
    ``side`` ("left"/"right") whose normal form modulo the other is nonzero."""
    _same(I, J)
    gi = I.groebner()
    gj = J.groebner()
    if [g.terms for g in gi] == [g.terms for g in gj]:
        return True, None
    for g in I.gens:
        if not J.contains(g):
            return False, (g, "left")
    for g in J.gens:
        if not I.contains(g):
            return False, (g, "right")
    return True, None


def is_unit_ideal(I: Ideal) -> bool:
    return I.is_unit()


def independent_sets(leading: Sequence[tuple], nvars: int) -> tuple:
    """Maximum size of a variable subset avoiding every leading monomial's
    support, and all subsets attaining it (as sorted index tuples)."""
    supports = []
    for m in leading:
        s = 0
        for i, e in enumerate(m):
            if e:
                s |= 1 << i
        supports.append(s)
    if 0 in supports:
        return -1, []
    best = [-1, []]

    def ok(mask):
        return all(s & ~mask for s in supports)

    def rec(i, mask, size):
        if size + (nvars - i) < best[0]:
            return
        if i == nvars:
            if size > best[0]:
                best[0], best[1] = size, [mask]
            elif size == best[0]:
                best[1].append(mask)
            return
        with_i = mask | (1 << i)
        if ok(with_i):
            rec(i + 1, with_i, size + 1)
        rec(i + 1, mask, size)

    rec(0, 0, 0)
    sets = [tuple(i for i in range(nvars) if m >> i & 1) for m in best[1]]
    return best[0], sets


def ideal_dimension(I: Ideal) -> int:
    if I.is_unit():
        return -1
    d, _ = independent_sets(I.leading_monomials(), I.ring.nvars)
    return d


class RingPresentation:
    """``A = P/I`` for a polynomial ring ``P`` and defining ideal ``I``."""

    def __init__(self, ring: PolyRing, ideal: Ideal | Sequence | None = None,
                 weights: Sequence[int] | None = None, check_grading: bool = True,
                 name: str = ""):
        self.ring = ring
        if ideal is None:
            ideal = Ideal(ring, [])
        elif not isinstance(ideal, Ideal):
            ideal = Ideal(ring, [ring(g) for g in ideal])
        self.ideal = ideal
        self.weights = tuple(weights) if weights is not None else None
        self.name = name
        if self.weights is not None:
            if len(self.weights) != ring.nvars:
                raise ValueError("one weight per variable required")
            if check_grading:
                for g in ideal.gens:
                    if not g.is_homogeneous(self.weights):
                        raise ValueError(f"defining ideal is not homogeneous: {g}")
        self._cache: dict = {}

    @classmethod
    def from_strings(cls, variables: str, gens: Sequence[str], p: int = 32003,
                     graded: bool = True, name: str = "") -> "RingPresentation":
        ring = PolyRing.make(variables, p)
        return cls(ring, [ring(g) for g in gens], (1,) * ring.nvars if graded else None, name=name)

    def __repr__(self):
        return f"RingPresentation({', '.join(self.ring.names)} / {self.ideal})"

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def variables(self) -> tuple:
        return self.ring.names

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def graded(self) -> bool:
        return self.weights is not None

    def __call__(self, text) -> Polynomial:
        return self.ring(text)

    def lift(self, gens: Iterable = ()) -> Ideal:
        """The ideal ``I + (gens)`` of ``P``."""
        return Ideal(self.ring, self.ideal.gens + tuple(self.ring(g) for g in gens))

    def is_zero_ring(self) -> bool:
        return self.ideal.is_unit()

    def dim(self) -> int:
        if "dim" not in self._cache:
            self._cache["dim"] = ideal_dimension(self.ideal)
        return self._cache["dim"]

    def codim(self) -> int:
        return self.nvars - self.dim()

    def quotient(self, gens: Iterable, name: str = "") -> "RingPresentation":
        """``A / (gens) A``."""
        return RingPresentation(self.ring, self.lift(gens), self.weights, check_grading=False,
                                name=name)

    def reduce(self, f) -> Polynomial:
        return self.ideal.reduce(self.ring(f))

    def colon(self, gens: Iterable, f) -> Ideal:
        """``(gens)A : f`` lifted to ``P``."""
        return ideal_quotient(self.lift(gens), self.ring(f))

    def annihilator_of(self, f) -> Ideal:
        return self.colon([], f)

    def is_regular(self, f) -> bool:
        return contains(self.ideal, self.annihilator_of(f))

    def with_extra_variables(self, names: Sequence[str], weights: Sequence[int] | None = None):
        ring = self.ring.extend(names)
        ideal = Ideal(ring, [g.embed(ring) for g in self.ideal.gens])
        w = None
        if self.weights is not None:
            w = self.weights + tuple(weights or (1,) * len(names))
        return RingPresentation(ring, ideal, w, check_grading=False, name=self.name)


def krull_dimension(R: RingPresentation | Ideal) -> int:
    """Krull dimension of ``P/I`` (``-1`` for the zero ring)."""
    if isinstance(R, RingPresentation):
        return R.dim()
    return ideal_dimension(R)


def equidimensional_hint(R: RingPresentation) -> bool:
    """Heuristic: every maximal independent set of the initial ideal that
    cannot be enlarged has the full dimension.

    A True answer is not a proof of equidimensionality."""
    I = R.ideal
    if I.is_unit():
        return True
    lms = I.leading_monomials()
    n = R.nvars
    supports = []
    for m in lms:
        s = 0
        for i, e in enumerate(m):
            if e:
                s |= 1 << i
        supports.append(s)
    d = R.dim()

    def independent(mask):
        return all(s & ~mask for s in supports)

    maximal_sizes = set()

    def rec(i, mask):
        if i == n:
            if all(not independent(mask | (1 << j)) for j in range(n) if not mask >> j & 1):
                maximal_sizes.add(bin(mask).count("1"))
            return
        with_i = mask | (1 << i)
        if independent(with_i):
            rec(i + 1, with_i)
        rec(i + 1, mask)

    if n <= 16:
        rec(0, 0)
        return maximal_sizes == {d}
    return True
