"""Free resolutions, Ext into the ambient ring, depth and Cohen-Macaulay tests.

Local cohomology of a graded ``A = P/I`` is never formed explicitly.  By
graded local duality ``H^p_m(A)`` is dual to ``Ext^{n-p}_P(A, P)`` up to a
twist, so vanishing, depth and annihilators are all read off the Ext modules,
which are homology modules of the dualised free resolution.

For rings that are not positively graded (blowup charts) the same formula
``n - max{i : Ext^i != 0}`` is the minimum of the local depths over all
closed points, since every maximal ideal of ``P`` has height ``n``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

from .groebner import Ideal, ModuleElement, Submodule, syzygies
from .ideals import (
    RingPresentation,
    equidimensional_hint,
    ideal_dimension,
    ideal_product,
    intersect_all,
    saturate_principal,
)
from .poly import Polynomial, PolyRing

log = logging.getLogger(__name__)


class ZeroRingError(ValueError):
    pass


class EquidimensionalityWarning(UserWarning):
    pass


@dataclass
class FreeComplex:
    """``F_L -> ... -> F_1 -> F_0``; ``maps[i]`` is the list of columns of
    ``F_{i+1} -> F_i`` (vectors of rank ``ranks[i]``)."""

    ring: PolyRing
    ranks: list
    maps: list

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def column_matrix(self, i: int) -> list:
        return self.maps[i]

    def rows(self, i: int) -> list:
        """Rows of ``F_{i+1} -> F_i`` as vectors of rank ``ranks[i+1]``."""
        cols = self.maps[i]
        ring = self.ring
        return [ModuleElement(ring, [c[r] for c in cols]) for r in range(self.ranks[i])]

    def is_complex(self) -> bool:
        for i in range(1, len(self.maps)):
            prev = self.maps[i - 1]
            for col in self.maps[i]:
                if col.pair(prev):
                    return False
        return True


def _constant_entry(cols: list):
    for c, col in enumerate(cols):
        for r, f in enumerate(col.components):
            if f and f.is_constant():
                return r, c
    return None


def _prune(maps: list, ranks: list, j: int) -> bool:
    """Split off one trivial summand ``P -> P`` from ``maps[j]`` if possible."""
    hit = _constant_entry(maps[j])
    if hit is None:
        return False
    r, c = hit
    cols = maps[j]
    ring = cols[c].ring
    u = cols[c][r].constant_value()
    inv = ring.field.inv(u)
    pivot = cols[c]
    new_cols = []
    for k, col in enumerate(cols):
        if k == c:
            continue
        factor = col[r]
        if factor:
            col = col - pivot.scale(factor.scale(inv))
        new_cols.append(ModuleElement(ring, [f for i, f in enumerate(col.components) if i != r]))
    maps[j] = new_cols
    ranks[j] -= 1
    ranks[j + 1] -= 1
    if j > 0:
        maps[j - 1] = [col for k, col in enumerate(maps[j - 1]) if k != r]
    if j + 1 < len(maps):
        maps[j + 1] = [ModuleElement(ring, [f for i, f in enumerate(col.components) if i != c])
                       for col in maps[j + 1]]
    return True


def free_resolution(N: Submodule, max_length: int | None = None) -> FreeComplex:
    """A free resolution of ``P^r / N`` built from iterated syzygies.

    Trivial summands (unit entries) are split off as they appear.  The
    resolution is cut after step ``n + 1``; every Ext^i with ``i <= n`` is
    still computed correctly from the truncation.
    """
    ring = N.ring
    n = ring.nvars
    max_length = n + 1 if max_length is None else max_length
    ranks = [N.rank]
    maps: list = []
    gens = list(N.gens)
    if not gens:
        return FreeComplex(ring, ranks, maps)
    maps.append(gens)
    ranks.append(len(gens))
    while True:
        while _prune(maps, ranks, len(maps) - 1):
            pass
        if not maps[-1]:
            maps.pop()
            ranks.pop()
            break
        if len(maps) >= max_length:
            break
        syz = syzygies(maps[-1], ring)
        if syz.is_zero():
            break
        maps.append(list(syz.gens))
        ranks.append(len(syz.gens))
        log.debug("resolution step %d: rank %d", len(maps), ranks[-1])
    return FreeComplex(ring, ranks, maps)


def resolve_ring(R: RingPresentation) -> FreeComplex:
    key = "resolution"
    if key not in R._cache:
        gens = [ModuleElement(R.ring, [g]) for g in R.ideal.groebner()]
        R._cache[key] = free_resolution(Submodule(R.ring, 1, gens))
    return R._cache[key]


# --------------------------------------------------------------------------
# Ext


def module_quotient(relations: Submodule, v: ModuleElement) -> Ideal:
    """``(relations : v) = {a : a v in relations}``."""
    ring = v.ring
    if relations.is_zero():
        return Ideal(ring, []) if v else Ideal(ring, [ring.one()])
    syz = syzygies([v] + list(relations.gens), ring)
    return Ideal(ring, [s[0] for s in syz.gens if s[0]])


def annihilator(generators, relations: Submodule) -> Ideal:
    """Annihilator of the module generated by ``generators`` modulo ``relations``.

    With ``generators`` an integer ``r`` the module is ``P^r / relations``.
    """
    ring = relations.ring
    if isinstance(generators, int):
        generators = [ModuleElement.basis_vector(ring, generators, i) for i in range(generators)]
    parts = []
    for g in generators:
        if relations.contains(g):
            continue
        parts.append(module_quotient(relations, g))
    if not parts:
        return Ideal(ring, [ring.one()])
    return intersect_all(parts)


@dataclass
class ExtModule:
    index: int
    generators: list  # cycles in the dual free module
    relations: Submodule  # boundaries
    zero: bool
    _ann: Ideal | None = None

    def annihilator(self) -> Ideal:
        if self._ann is None:
            ring = self.relations.ring
            if self.zero:
                self._ann = Ideal(ring, [ring.one()])
            else:
                self._ann = annihilator(self.generators, self.relations)
        return self._ann


@dataclass
class ExtProfile:
    """``Ext^i_P(M, P)`` for ``0 <= i <= n`` with ``n`` the number of variables."""

    ring: PolyRing
    nvars: int
    modules: dict = field(default_factory=dict)

    def nonzero_indices(self) -> list:
        return [i for i, e in sorted(self.modules.items()) if not e.zero]

    def is_zero(self, i: int) -> bool:
        e = self.modules.get(i)
        return True if e is None else e.zero

    def annihilator(self, i: int) -> Ideal:
        e = self.modules.get(i)
        if e is None:
            return Ideal(self.ring, [self.ring.one()])
        return e.annihilator()


def ext_profile(F: FreeComplex, with_annihilators: bool = False) -> ExtProfile:
    """Ext modules of the resolved module into ``P``."""
    ring = F.ring
    n = ring.nvars
    prof = ExtProfile(ring, n)
    L = len(F.maps)
    for i in range(0, min(L, n) + 1):
        r_i = F.ranks[i]
        if r_i == 0:
            prof.modules[i] = ExtModule(i, [], Submodule(ring, 0, []), True)
            continue
        if i < L:
            kernel = syzygies(F.rows(i), ring)
            cycles = list(kernel.gens)
        else:
            cycles = [ModuleElement.basis_vector(ring, r_i, k) for k in range(r_i)]
        if i > 0:
            bounds = Submodule(ring, r_i, F.rows(i - 1))
        else:
            bounds = Submodule(ring, r_i, [])
        zero = all(bounds.contains(c) for c in cycles)
        prof.modules[i] = ExtModule(i, cycles, bounds, zero)
        if with_annihilators and not zero:
            prof.modules[i].annihilator()
    return prof


def ring_ext_profile(R: RingPresentation, with_annihilators: bool = False) -> ExtProfile:
    key = ("ext", with_annihilators)
    if key not in R._cache:
        if R.is_zero_ring():
            raise ZeroRingError("the zero ring has no Ext profile here")
        prof = ext_profile(resolve_ring(R), with_annihilators)
        R._cache[key] = prof
        R._cache[("ext", False)] = prof
    return R._cache[key]


def depth(R: RingPresentation) -> int:
    """``n - max{i : Ext^i_P(A, P) != 0}``.

    For a graded ring this is the depth at the irrelevant ideal; in general it
    is the smallest depth of a localisation at a maximal ideal.
    """
    if R.is_zero_ring():
        raise ZeroRingError("depth of the zero ring is undefined")
    prof = ring_ext_profile(R)
    nz = prof.nonzero_indices()
    return R.nvars - max(nz)


depth_at_irrelevant = depth


@dataclass
class CMCertificate:
    cohen_macaulay: bool
    dim: int
    depth: int
    codim: int
    nonzero_ext: list
    profile: ExtProfile

    def to_dict(self) -> dict:
        return {
            "cohen_macaulay": self.cohen_macaulay,
            "dim": self.dim,
            "depth": self.depth,
            "codim": self.codim,
            "nonzero_ext": self.nonzero_ext,
        }


def cm_certificate(R: RingPresentation) -> CMCertificate:
    """Cohen-Macaulay (and unmixed) iff Ext^i vanishes for every ``i != codim``."""
    if R.is_zero_ring():
        raise ZeroRingError("the zero ring is not certified")
    prof = ring_ext_profile(R)
    codim = R.codim()
    nz = prof.nonzero_indices()
    return CMCertificate(nz == [codim], R.dim(), R.nvars - max(nz), codim, nz, prof)


def localized_cm_certificate(R: RingPresentation, unit: Polynomial) -> CMCertificate:
    """Certificate for ``R[1/unit]`` computed from the Ext modules of ``R``.

    ``Ext^i`` survives the localisation iff ``unit`` is not in the radical of
    its annihilator.  ``dim`` and ``codim`` are those of ``R[1/unit]``.
    """
    unit = R.ring(unit)
    if unit.is_constant():
        return cm_certificate(R)
    closure = saturate_principal(R.ideal, unit)
    if closure.is_unit():
        raise ZeroRingError("the localisation is the zero ring")
    n = R.nvars
    dim = ideal_dimension(closure)
    prof = ring_ext_profile(R)
    if prof.nonzero_indices() == [R.codim()]:
        # a Cohen-Macaulay ring stays Cohen-Macaulay, and keeps Ext^codim on its support
        nz = [n - dim]
    else:
        nz = [i for i in prof.nonzero_indices()
              if not saturate_principal(prof.annihilator(i), unit).is_unit()]
    return CMCertificate(nz == [n - dim], dim, n - max(nz), n - dim, nz, prof)


@dataclass
class NonCMData:
    a_ideal: Ideal
    noncm_dimension: int
    annihilators: dict  # local cohomology index p -> ann H^p_m(A), lifted to P

    def to_dict(self) -> dict:
        return {
            "s": self.noncm_dimension,
            "a_ideal": [str(g) for g in self.a_ideal.groebner()],
            "annihilators": {str(p): [str(g) for g in J.groebner()]
                             for p, J in sorted(self.annihilators.items())},
        }


def noncm_data(R: RingPresentation, check_equidimensional: bool = True) -> NonCMData:
    """The product of ``ann H^p_m(A)`` over ``p < dim A`` and the dimension of its locus."""
    if R.is_zero_ring():
        raise ZeroRingError("the zero ring has no non-CM locus")
    if "noncm" in R._cache:
        return R._cache["noncm"]
    if check_equidimensional and not equidimensional_hint(R):
        warnings.warn(f"{R.name or R} may not be equidimensional", EquidimensionalityWarning)
    prof = ring_ext_profile(R)
    n, d = R.nvars, R.dim()
    ring = R.ring
    anns = {}
    a = Ideal(ring, [ring.one()])
    for p in range(d):
        J = prof.annihilator(n - p)
        J = Ideal(ring, list(J.groebner()) + list(R.ideal.gens))
        anns[p] = J
        if not J.is_unit():
            a = Ideal(ring, ideal_product(a, J).gens)
            a = Ideal(ring, a.groebner())
    a = Ideal(ring, list(a.gens) + list(R.ideal.gens))
    a = Ideal(ring, a.groebner())
    s = ideal_dimension(a)
    out = NonCMData(a, s, anns)
    R._cache["noncm"] = out
    return out
