"""Rees algebras, blowup charts and ideal transforms.

A chart ``A[J/f]`` is presented as ``(I + (f T_j - g_j)) : f^infinity`` in
``P[T]``.  When a numerator is a scalar multiple of a variable not occurring
in ``f`` that variable is substituted away (``v = f T_j / c``) before the
saturation, which keeps charts of centers generated by coordinates in the
same number of variables as ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Ideal
from .ideals import RingPresentation, _fresh, eliminate, saturate_principal
from .poly import Polynomial, PolyRing, apply_ring_map


class ChartError(ValueError):
    pass


@dataclass
class ChartPresentation:
    """An affine chart ``A[J/f]``.

    ``images`` sends each variable of the source ring to the chart ring;
    ``fractions`` maps a label (usually the numerator as text) to the element
    ``g/f`` of the chart ring.  When ``localization`` is ``(B, u)`` the chart
    ring is isomorphic to ``B[1/u]``, which lets local properties be read off
    the smaller ring ``B``.
    """

    ring: RingPresentation
    source: RingPresentation
    images: list
    denominator: Polynomial
    fractions: dict = field(default_factory=dict)
    label: str = ""
    localization: tuple | None = None

    def map(self, f: Polynomial) -> Polynomial:
        return apply_ring_map(f, self.images, self.ring.ring)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "denominator": str(self.denominator),
            "variables": list(self.ring.variables),
            "ideal": [str(g) for g in self.ring.ideal.gens],
            "structure_map": {n: str(g) for n, g in zip(self.source.variables, self.images)},
            "inverts": str(self.localization[1]) if self.localization else None,
        }


# --------------------------------------------------------------------------
# helpers


def _monomial_gcd(polys: Sequence[Polynomial]) -> tuple | None:
    out = None
    for f in polys:
        for m in f.terms:
            out = m if out is None else tuple(map(min, out, m))
    return out


def regular_variables(R: RingPresentation) -> set:
    """Indices of ring variables that are nonzerodivisors on ``R``."""
    cache = R._cache.setdefault("regular_vars", {})
    return cache


def _is_regular_var(R: RingPresentation, i: int) -> bool:
    cache = regular_variables(R)
    if i not in cache:
        cache[i] = R.is_regular(R.ring.var(i))
    return cache[i]


def _single_variable(f: Polynomial):
    """``(index, coeff)`` if ``f = c * v`` for a variable ``v``."""
    if len(f.terms) != 1:
        return None
    (m, c), = f.terms.items()
    if sum(m) != 1:
        return None
    return m.index(1), c


def _drop_variables(ring: PolyRing, drop: set, names_keep=None) -> tuple:
    keep = [i for i in range(ring.nvars) if i not in drop]
    new = PolyRing(ring.field, tuple(ring.names[i] for i in keep))
    return new, keep


def _restrict(f: Polynomial, target: PolyRing, keep: list) -> Polynomial:
    return Polynomial(target, {tuple(m[i] for i in keep): c for m, c in f.terms.items()}, _clean=True)


def simplify_presentation(ring: PolyRing, gens: Sequence[Polynomial], protect: set = frozenset(),
                          max_rounds: int = 50):
    """Remove variables that the ideal solves for linearly.

    Returns ``(new_ring, new_ideal, images)`` where ``images`` sends each
    variable of ``ring`` to ``new_ring``.
    """
    images = ring.gens()
    ideal = Ideal(ring, gens)
    cur_ring = ring
    for _ in range(max_rounds):
        gb = ideal.groebner()
        pick = None
        for g in sorted(gb, key=len):
            for i in sorted(g.support(), reverse=True):
                if cur_ring.names[i] in protect:
                    continue
                lin = [(m, c) for m, c in g.terms.items() if m[i]]
                if len(lin) == 1 and lin[0][0][i] == 1 and sum(lin[0][0]) == 1:
                    pick = (g, i, lin[0][1])
                    break
            if pick:
                break
        if pick is None:
            break
        g, i, c = pick
        inv = cur_ring.field.inv(c)
        solved = (cur_ring.var(i).scale(c) - g).scale(inv)
        new_ring, keep = _drop_variables(cur_ring, {i})
        sub = [solved if k == i else cur_ring.var(k) for k in range(cur_ring.nvars)]
        sub = [_restrict(s, new_ring, keep) for s in sub]
        images = [apply_ring_map(f, sub, new_ring) for f in images]
        new_gens = [apply_ring_map(h, sub, new_ring) for h in gb]
        ideal = Ideal(new_ring, [h for h in new_gens if h])
        cur_ring = new_ring
    return cur_ring, Ideal(cur_ring, ideal.groebner()), images


def adjoin_fractions(R: RingPresentation, numerators: Sequence[Polynomial], denominator: Polynomial,
                     prefix: str = "T", simplify: bool = True, labels: Sequence[str] | None = None):
    """The ring ``R[g_1/f, ..., g_h/f]`` as a :class:`ChartPresentation`."""
    ring = R.ring
    f = ring(denominator)
    gs = [ring(g) for g in numerators]
    labels = list(labels) if labels is not None else [str(g) for g in gs]
    if not f:
        raise ChartError("zero denominator")
    # cancel a common monomial factor made of regular variables
    common = _monomial_gcd([f] + [g for g in gs if g])
    if common and any(common):
        m = tuple(e if e and _is_regular_var(R, i) else 0 for i, e in enumerate(common))
        if any(m):
            mono = ring.monomial(m)
            f = f.exact_divide(mono)
            gs = [g.exact_divide(mono) if g else g for g in gs]
    if f.is_constant():
        inv = ring.field.inv(f.constant_value())
        fr = {lab: g.scale(inv) for lab, g in zip(labels, gs)}
        return ChartPresentation(R, R, ring.gens(), ring(denominator), fr)

    newnames = []
    taken = set(ring.names)
    for j in range(len(gs)):
        k = j + 1
        name = f"{prefix}{k}"
        while name in taken:
            k += 1
            name = f"{prefix}{k}_"
        taken.add(name)
        newnames.append(name)
    big = ring.extend(newnames)
    n0 = ring.nvars
    fb = f.embed(big)
    fsupp = f.support()
    sigma = big.gens()
    substituted = set()
    solved_by = set()
    for j, g in enumerate(gs):
        sv = _single_variable(g) if simplify else None
        if sv is None:
            continue
        i, c = sv
        if i in fsupp or i in substituted:
            continue
        # earlier substitutions never involve v, so a plain assignment composes
        sigma[i] = (fb * big.var(n0 + j)).scale(big.field.inv(c))
        substituted.add(i)
        solved_by.add(j)
    rels = [apply_ring_map(h.embed(big), sigma, big) for h in R.ideal.gens]
    for j, g in enumerate(gs):
        if j in solved_by:
            continue
        rels.append(fb * big.var(n0 + j) - apply_ring_map(g.embed(big), sigma, big))
    small, keep = _drop_variables(big, substituted)
    rels = [_restrict(h, small, keep) for h in rels if h]
    images = [_restrict(s, small, keep) for s in sigma[:n0]]
    fs = _restrict(fb, small, keep)
    J = Ideal(small, rels)
    sat = saturate_principal(J, fs)
    if sat.is_unit():
        raise ChartError(f"denominator {denominator} is nilpotent on the ring")
    out_ring, out_ideal = small, Ideal(small, sat.groebner())
    frac = [small.var(keep.index(n0 + j)) for j in range(len(gs))]
    if simplify:
        out_ring, out_ideal, sub = simplify_presentation(small, sat.groebner())
        images = [apply_ring_map(h, sub, out_ring) for h in images]
        frac = [apply_ring_map(h, sub, out_ring) for h in frac]
    chart = RingPresentation(out_ring, out_ideal, None, check_grading=False)
    return ChartPresentation(chart, R, images, ring(denominator),
                             dict(zip(labels, frac)))


def compose_charts(first: ChartPresentation, second: ChartPresentation) -> ChartPresentation:
    """``second`` is a chart over ``first.ring``; return it as a chart over ``first.source``."""
    images = [second.map(h) for h in first.images]
    fr = {k: second.map(v) for k, v in first.fractions.items()}
    fr.update(second.fractions)
    return ChartPresentation(second.ring, first.source, images, first.denominator,
                             fr, second.label or first.label)


# --------------------------------------------------------------------------
# Rees algebra and charts of arbitrary ideals


def rees_presentation(R: RingPresentation, gens: Sequence[Polynomial], prefix: str = "T") -> RingPresentation:
    """``P[T_1..T_h] / K`` presenting ``A[Jt]``, ``K`` from eliminating ``y`` in
    ``I + (T_i - y f_i)``."""
    gens = [R.ring(g) for g in gens]
    if not gens:
        raise ValueError("the Rees algebra needs at least one generator")
    ring = R.ring
    tnames = []
    for j in range(len(gens)):
        tnames.append(_fresh(ring, f"{prefix}{j + 1}"))
    y = _fresh(ring, "y")
    big = ring.extend(tnames + [y])
    Y = big.var(y)
    n0 = ring.nvars
    rels = [g.embed(big) for g in R.ideal.gens]
    rels += [big.var(n0 + j) - Y * g.embed(big) for j, g in enumerate(gens)]
    K = eliminate(Ideal(big, rels), [y])
    rees_ring = ring.extend(tnames)
    keep = list(range(n0 + len(gens)))
    out = [_restrict(h, rees_ring, keep) for h in K.gens]
    weights = None
    if R.weights is not None:
        degs = []
        for g in gens:
            ds = g.weighted_degrees(R.weights)
            degs.append(max(ds) if ds else 0)
        weights = R.weights + tuple(degs)
    return RingPresentation(rees_ring, out, weights, check_grading=False,
                            name=f"Rees({R.name})" if R.name else "")


def blowup_charts(R: RingPresentation, gens: Sequence[Polynomial], denominators: Sequence | None = None,
                  simplify: bool = True) -> list:
    """One chart ``A[J/f]`` per denominator (default: every generator of ``J``)."""
    gens = [R.ring(g) for g in gens]
    dens = gens if denominators is None else [R.ring(f) for f in denominators]
    out = []
    for k, f in enumerate(dens):
        nums = [g for g in gens if g != f]
        labels = [str(g) for g in nums]
        ch = adjoin_fractions(R, nums, f, simplify=simplify, labels=labels)
        ch.fractions[str(f)] = ch.ring.ring.one()
        ch.label = f"chart[{f}]"
        out.append(ch)
    return out
