"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a (module) polynomial is a dict mapping *terms* to residues mod p,
where a term is ``(component, e_1, ..., e_n)``.  Ideals are rank-one modules
whose terms all have component 0.  Pairs are selected by the normal strategy
(smallest lcm degree first) and pruned with the Gebauer-Moeller criteria.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from operator import add, sub
from typing import Callable, Iterable, Sequence

from .poly import MonomialOrder, Polynomial, PolyRing, RingMismatchError

log = logging.getLogger(__name__)


class ResourceLimitError(RuntimeError):
    """A Groebner computation exceeded its configured ceilings."""

    def __init__(self, message: str, diagnostic: dict):
        self.diagnostic = diagnostic
        super().__init__(f"{message}: {diagnostic}")


@dataclass
class Limits:
    max_pairs: int = 200_000
    max_basis: int = 50_000


LIMITS = Limits()


# --------------------------------------------------------------------------
# term orders on module terms


def term_key_function(order: MonomialOrder, module_order: str = "pot",
                      shifts: Sequence[tuple] | None = None) -> Callable[[tuple], tuple]:
    """Key for terms ``(c, e...)``; larger key means larger term.

    ``pot`` compares positions first (lower index wins), ``top`` compares the
    monomial first.  ``schreyer`` compares ``e + shifts[c]`` first and breaks
    ties by position.
    """
    raw = order.raw_key
    cache: dict = {}
    if module_order == "pot":
        def mk(t):
            return (-t[0],) + raw(t[1:])
    elif module_order == "top":
        def mk(t):
            return raw(t[1:]) + (-t[0],)
    elif module_order == "schreyer":
        if shifts is None:
            raise ValueError("schreyer order needs shifts")
        def mk(t):
            s = shifts[t[0]]
            return raw(tuple(map(add, t[1:], s))) + (-t[0],)
    else:
        raise ValueError(f"unknown module order {module_order!r}")

    def key(t):
        k = cache.get(t)
        if k is None:
            k = cache[t] = mk(t)
        return k

    return key


def _mask(t: tuple) -> int:
    m = 0
    for i in range(1, len(t)):
        if t[i]:
            m |= 1 << i
    return m


def _divides(a: tuple, b: tuple) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return (a[0],) + tuple(map(max, a[1:], b[1:]))


def _degree(t: tuple) -> int:
    return sum(t) - t[0]


# --------------------------------------------------------------------------
# engine


class _Reducer:
    """Reduction against a list of monic polynomials."""

    __slots__ = ("p", "key", "items")

    def __init__(self, p: int, key):
        self.p = p
        self.key = key
        self.items: list = []  # (lm, mask, tail)

    def add(self, lm, tail):
        self.items.append((lm, _mask(lm), tail))

    def find(self, t, tmask):
        c = t[0]
        for lm, mask, tail in self.items:
            if mask & ~tmask or lm[0] != c:
                continue
            ok = True
            for x, y in zip(lm, t):
                if x > y:
                    ok = False
                    break
            if ok:
                return lm, tail
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f``; with ``full=False`` stop at an irreducible leading term."""
        if not f:
            return {}
        p = self.p
        key = self.key
        f = dict(f)
        heap = [(_neg(key(t)), t) for t in f]
        heapq.heapify(heap)
        result: dict = {}
        pop = heapq.heappop
        push = heapq.heappush
        while heap:
            _, t = pop(heap)
            c = f.pop(t, 0)
            if not c:
                continue
            r = self.find(t, _mask(t))
            if r is None:
                result[t] = c
                if not full:
                    result.update(f)
                    return result
                continue
            lm, tail = r
            shift = tuple(map(sub, t, lm))
            for gm, gc in tail:
                nm = tuple(map(add, gm, shift))
                old = f.get(nm)
                if old is None:
                    v = (-c * gc) % p
                    f[nm] = v
                    push(heap, (_neg(key(nm)), nm))
                else:
                    v = (old - c * gc) % p
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
        return result


_NEG_CACHE: dict = {}


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def _leading(f: dict, key) -> tuple:
    return max(f, key=key)


def _monic_split(f: dict, key, p: int):
    lm = max(f, key=key)
    inv = pow(f[lm], -1, p)
    tail = [(t, c * inv % p) for t, c in f.items() if t != lm]
    tail.sort(key=lambda tc: key(tc[0]), reverse=True)
    return lm, tail


def buchberger(polys: Sequence[dict], p: int, key, module: bool = False,
               limits: Limits | None = None) -> list:
    """Reduced Groebner basis of the module polynomials ``polys``.

    Returns a list of monic dicts sorted by decreasing leading term.
    """
    limits = limits or LIMITS
    basis: list = []  # index -> (lm, tail)
    red = _Reducer(p, key)
    G: list = []  # indices of the current LM-minimal set
    pairs: dict = {}  # (i, j) -> lcm
    heap: list = []
    counter = 0

    def lm_of(i):
        return basis[i][0]

    def insert(h: dict):
        nonlocal counter, G
        lm, tail = _monic_split(h, key, p)
        ih = len(basis)
        basis.append((lm, tail))
        mh = lm
        # Gebauer-Moeller: new pairs
        cand = [ig for ig in G if lm_of(ig)[0] == mh[0]]
        lcms = {ig: _lcm(mh, lm_of(ig)) for ig in cand}

        def disjoint(ig):
            if module:
                return False
            g = lm_of(ig)
            return all(a == 0 or b == 0 for a, b in zip(mh[1:], g[1:]))

        D = []
        C = list(cand)
        while C:
            ig = C.pop()
            L = lcms[ig]
            if disjoint(ig) or (
                not any(_divides(lcms[ix], L) for ix in C)
                and not any(_divides(lcms[jx], L) for jx in D)
            ):
                D.append(ig)
        E = [ig for ig in D if not disjoint(ig)]
        # old pairs
        for pr, L in list(pairs.items()):
            i, j = pr
            if L[0] != mh[0] or not _divides(mh, L):
                continue
            if _lcm(lm_of(i), mh) != L and _lcm(lm_of(j), mh) != L:
                del pairs[pr]
        for ig in E:
            L = lcms[ig]
            pr = (ig, ih)
            pairs[pr] = L
            counter += 1
            heapq.heappush(heap, (_degree(L), _neg(key(L)), counter, pr))
        G = [ig for ig in G if not _divides(mh, lm_of(ig))]
        G.append(ih)
        red.items = [(basis[i][0], _mask(basis[i][0]), basis[i][1]) for i in G]
        if len(pairs) > limits.max_pairs or len(G) > limits.max_basis:
            raise ResourceLimitError(
                "Groebner basis resource ceiling exceeded",
                {"pairs": len(pairs), "basis": len(G), "inserted": len(basis),
                 "max_lcm_degree": max((_degree(x) for x in pairs.values()), default=0)},
            )

    start = []
    for f in polys:
        if f:
            start.append(dict(f))
    start.sort(key=lambda f: key(max(f, key=key)))
    for f in start:
        h = red.reduce(f)
        if h:
            insert(h)

    while heap:
        _, _, _, pr = heapq.heappop(heap)
        if pr not in pairs:
            continue
        del pairs[pr]
        i, j = pr
        s = _spoly(basis[i], basis[j], p)
        h = red.reduce(s)
        if h:
            insert(h)

    # minimal + interreduced
    final = sorted(G, key=lambda i: key(basis[i][0]), reverse=True)
    out = []
    for idx in final:
        lm, tail = basis[idx]
        others = _Reducer(p, key)
        others.items = [(basis[i][0], _mask(basis[i][0]), basis[i][1]) for i in final if i != idx]
        rest = others.reduce(dict(tail)) if tail else {}
        g = {lm: 1}
        g.update(rest)
        out.append(g)
    return out


def _spoly(a, b, p):
    lma, taila = a
    lmb, tailb = b
    L = _lcm(lma, lmb)
    sa = tuple(map(sub, L, lma))
    sb = tuple(map(sub, L, lmb))
    out: dict = {}
    for t, c in taila:
        nt = tuple(map(add, t, sa))
        out[nt] = (out.get(nt, 0) + c) % p
    for t, c in tailb:
        nt = tuple(map(add, t, sb))
        out[nt] = (out.get(nt, 0) - c) % p
    return {t: c for t, c in out.items() if c}


# --------------------------------------------------------------------------
# conversions


def poly_to_internal(f: Polynomial, comp: int = 0) -> dict:
    return {(comp,) + m: c for m, c in f.terms.items()}


def internal_to_poly(ring: PolyRing, d: dict) -> Polynomial:
    return Polynomial(ring, {t[1:]: c for t, c in d.items()}, _clean=True)


def _ideal_key(order: MonomialOrder):
    raw = order.raw_key
    cache: dict = {}

    def key(t):
        k = cache.get(t)
        if k is None:
            k = cache[t] = raw(t[1:])
        return k

    return key


# --------------------------------------------------------------------------
# ideals


class Ideal:
    """An ideal of a polynomial ring given by generators, with cached reduced bases."""

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        self.ring = ring
        out = []
        for g in gens:
            g = ring(g) if not isinstance(g, Polynomial) else g
            if not g.ring.compatible(ring):
                raise RingMismatchError("generator from a different ring")
            if g.ring is not ring:
                g = g.change_ring(ring)
            if g:
                out.append(g)
        self.gens = tuple(out)
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def groebner(self, order: MonomialOrder | None = None) -> list:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            key = _ideal_key(order)
            raw = buchberger([poly_to_internal(g) for g in self.gens], self.ring.p, key)
            gb = [internal_to_poly(self.ring, d) for d in raw]
            self._gb[order] = gb
        return gb

    def reducer(self, order: MonomialOrder | None = None) -> _Reducer:
        order = order or self.ring.order
        gb = self.groebner(order)
        key = _ideal_key(order)
        red = _Reducer(self.ring.p, key)
        for g in gb:
            d = poly_to_internal(g)
            lm, tail = _monic_split(d, key, self.ring.p)
            red.add(lm, tail)
        return red

    def reduce(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        f = self.ring(f)
        if not f.ring.compatible(self.ring):
            raise RingMismatchError("polynomial from a different ring")
        red = self._cached_reducer(order)
        return Polynomial(f.ring if f.ring is self.ring else self.ring,
                          {t[1:]: c for t, c in red.reduce(poly_to_internal(f)).items()},
                          _clean=True)

    def _cached_reducer(self, order=None):
        order = order or self.ring.order
        attr = self._gb.get(("reducer", order))
        if attr is None:
            attr = self._gb[("reducer", order)] = self.reducer(order)
        return attr

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner())

    def is_zero(self) -> bool:
        return not self.gens

    def leading_monomials(self, order: MonomialOrder | None = None) -> list:
        order = order or self.ring.order
        return [g.leading_monomial(order) for g in self.groebner(order)]


def groebner_basis(ideal, order: MonomialOrder | None = None) -> list:
    """Reduced Groebner basis of an :class:`Ideal` or :class:`Submodule`."""
    return ideal.groebner(order)


def normal_form(f, ideal) -> Polynomial:
    return ideal.reduce(f)


# --------------------------------------------------------------------------
# modules


class ModuleElement:
    """A vector in a free module ``P^rank``."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolyRing, components: Sequence):
        self.ring = ring
        self.components = tuple(ring(c) if not isinstance(c, Polynomial) else c for c in components)

    @classmethod
    def basis_vector(cls, ring: PolyRing, rank: int, i: int) -> "ModuleElement":
        return cls(ring, [ring.one() if j == i else ring.zero() for j in range(rank)])

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        return ModuleElement(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return ModuleElement(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return ModuleElement(self.ring, [-a for a in self.components])

    def scale(self, f) -> "ModuleElement":
        return ModuleElement(self.ring, [f * a for a in self.components])

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def pair(self, gens: Sequence) -> "ModuleElement | Polynomial":
        """``sum(self[i] * gens[i])`` for polynomial or vector ``gens``."""
        if len(gens) != self.rank:
            raise ValueError("length mismatch")
        if gens and isinstance(gens[0], ModuleElement):
            rank = gens[0].rank
            acc = [self.ring.zero()] * rank
            for c, g in zip(self.components, gens):
                if c:
                    acc = [a + c * b for a, b in zip(acc, g.components)]
            return ModuleElement(self.ring, acc)
        acc = self.ring.zero()
        for c, g in zip(self.components, gens):
            if c:
                acc = acc + c * g
        return acc

    def to_internal(self, offset: int = 0) -> dict:
        out = {}
        for i, f in enumerate(self.components):
            for m, c in f.terms.items():
                out[(i + offset,) + m] = c
        return out

    @classmethod
    def from_internal(cls, ring: PolyRing, rank: int, d: dict, offset: int = 0) -> "ModuleElement":
        comps: list = [dict() for _ in range(rank)]
        for t, c in d.items():
            comps[t[0] - offset][t[1:]] = c
        return cls(ring, [Polynomial(ring, x, _clean=True) for x in comps])

    def __repr__(self):
        return "(" + ", ".join(map(str, self.components)) + ")"


def as_vectors(ring: PolyRing, gens: Sequence) -> list:
    out = []
    for g in gens:
        if isinstance(g, ModuleElement):
            out.append(g)
        else:
            out.append(ModuleElement(ring, [ring(g)]))
    return out


class Submodule:
    """A submodule of ``P^rank`` given by generators."""

    def __init__(self, ring: PolyRing, rank: int, gens: Iterable = ()):
        self.ring = ring
        self.rank = rank
        out = []
        for g in gens:
            if not isinstance(g, ModuleElement):
                g = ModuleElement(ring, g)
            if g.rank != rank:
                raise ValueError("generator rank mismatch")
            if g:
                out.append(g)
        self.gens = tuple(out)
        self._gb: dict = {}

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={list(self.gens)})"

    def is_zero(self) -> bool:
        return not self.gens

    def _key(self, order, module_order):
        return term_key_function(order, module_order)

    def groebner(self, order: MonomialOrder | None = None, module_order: str = "pot") -> list:
        order = order or self.ring.order
        ck = (order, module_order)
        gb = self._gb.get(ck)
        if gb is None:
            key = self._key(order, module_order)
            raw = buchberger([g.to_internal() for g in self.gens], self.ring.p, key,
                             module=self.rank > 1)
            gb = [ModuleElement.from_internal(self.ring, self.rank, d) for d in raw]
            self._gb[ck] = gb
        return gb

    def reducer(self, order=None, module_order="pot") -> _Reducer:
        order = order or self.ring.order
        ck = ("reducer", order, module_order)
        red = self._gb.get(ck)
        if red is None:
            key = self._key(order, module_order)
            red = _Reducer(self.ring.p, key)
            for g in self.groebner(order, module_order):
                lm, tail = _monic_split(g.to_internal(), key, self.ring.p)
                red.add(lm, tail)
            self._gb[ck] = red
        return red

    def reduce(self, v: ModuleElement) -> ModuleElement:
        red = self.reducer()
        return ModuleElement.from_internal(self.ring, self.rank, red.reduce(v.to_internal()))

    def contains(self, v: ModuleElement) -> bool:
        return not self.reducer().reduce(v.to_internal(), full=False)

    def contains_module(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.gens)


def syzygies(gens: Sequence, ring: PolyRing | None = None, limits: Limits | None = None) -> Submodule:
    """Generators of the module of relations among ``gens``.

    The basis of the graph module ``{(g_i, e_i)}`` is computed in a
    position-over-term order that ranks the ``g`` coordinates first; its
    elements with vanishing ``g`` part carry the reduction traces and
    generate the syzygy module.
    """
    if not gens:
        raise ValueError("empty generator list")
    ring = ring or gens[0].ring
    vecs = as_vectors(ring, gens)
    r = vecs[0].rank
    k = len(vecs)
    polys = []
    for i, v in enumerate(vecs):
        d = v.to_internal()
        d[(r + i,) + (0,) * ring.nvars] = 1
        polys.append(d)
    key = term_key_function(ring.order, "pot")
    raw = buchberger(polys, ring.p, key, module=True, limits=limits)
    syz = []
    for d in raw:
        lm = max(d, key=key)
        if lm[0] >= r:
            syz.append(ModuleElement.from_internal(ring, k, d, offset=r))
    return Submodule(ring, k, syz)
