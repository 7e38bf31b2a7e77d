"""Parameter selection, blowup centers and chart-level certification.

The pipeline takes a graded equidimensional ``A = P/I`` whose non-CM locus
has dimension ``s <= 2``, picks parameters ``x_1..x_d`` with

* ``x_{s+1}, ..., x_d`` in ``a(A)``, and
* ``x_i`` in ``a(A/(x_{i+1}, ..., x_d))`` for ``i <= s``,

blows up ``q = (x_{s+1}..x_d)``, ``b = (x_s..x_d) q`` or
``c = (x_{s-1}..x_d) b`` and certifies every chart through its Ext profile.
Indices of parameters are 1-based throughout, matching ``x_1..x_d``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Sequence

from .blowup import ChartPresentation, adjoin_fractions, compose_charts
from .groebner import Ideal, ResourceLimitError
from .homology import cm_certificate, localized_cm_certificate, noncm_data
from .ideals import RingPresentation, ideal_dimension, saturate, saturate_principal
from .poly import Polynomial, PolyRing, apply_ring_map
from .sequences import CertifiedReport, b_transform_identity, parameter_battery, verify_transform_identity

log = logging.getLogger(__name__)


class ParameterSelectionError(RuntimeError):
    def __init__(self, message: str, ideal: Ideal | None = None):
        self.ideal = ideal
        super().__init__(message)


class ConstructionUndefined(ValueError):
    pass


@dataclass
class ParameterSystem:
    ring: RingPresentation
    elements: list
    split: int
    noncm_dimension: int
    seed: int = 0
    degrees: list = field(default_factory=list)

    @property
    def d(self) -> int:
        return len(self.elements)

    def x(self, i: int) -> Polynomial:
        """The ``i``-th parameter, 1-based."""
        return self.elements[i - 1]

    def ideal(self, indices: Sequence[int]) -> Ideal:
        R = self.ring
        return Ideal(R.ring, [self.x(i) for i in indices])

    def q_indices(self) -> list:
        return list(range(self.split + 1, self.d + 1))

    def check(self) -> dict:
        """Re-verify every clause of the parameter condition."""
        R = self.ring
        out = {}
        out["system_of_parameters"] = R.quotient(self.elements).dim() == 0 and self.d == R.dim()
        a = noncm_data(R).a_ideal
        out["tail_in_a"] = all(a.contains(self.x(i)) for i in range(self.split + 1, self.d + 1))
        head = []
        for i in range(1, self.split + 1):
            Q = R.quotient([self.x(j) for j in range(i + 1, self.d + 1)])
            ai = noncm_data(Q, check_equidimensional=False).a_ideal
            head.append(ai.contains(self.x(i)))
        out["head_in_a"] = all(head)
        return out

    def to_dict(self) -> dict:
        return {
            "elements": [str(x) for x in self.elements],
            "split": self.split,
            "noncm_dimension": self.noncm_dimension,
            "seed": self.seed,
            "degrees": self.degrees,
        }


def _weighted_degree(f: Polynomial, weights) -> int:
    ds = f.weighted_degrees(weights)
    return max(ds)


def _random_unit(rng: random.Random, p: int) -> int:
    return rng.randrange(1, p)


def _candidate_sources(R: RingPresentation, source: Ideal) -> list:
    """Homogeneous generators of ``source`` that are nonzero on ``A``; the
    variables when ``source`` is the unit ideal."""
    ring = R.ring
    if source.is_unit():
        return [ring.var(i) for i in range(ring.nvars) if R.weights[i] > 0]
    out = []
    for g in source.groebner():
        r = R.reduce(g)
        if r and r.is_homogeneous(R.weights):
            out.append(r.monic())
    return out


def _draw(rng: random.Random, R: RingPresentation, gens: list, attempt: int, budget: int) -> Polynomial:
    p = R.ring.p
    w = R.weights
    degs = [_weighted_degree(g, w) for g in gens]
    base = min(degs)
    lows = [g for g, dg in zip(gens, degs) if dg == base]
    sparse_phase = budget // 4
    if attempt < sparse_phase:
        k = min(len(lows), 2 + attempt % 2)
        picked = rng.sample(lows, k)
        out = R.ring.zero()
        for g in picked:
            out = out + g.scale(rng.choice((1, p - 1)))
        return out
    target = base + (attempt - sparse_phase) // 16
    linear = [R.ring.var(i) for i in range(R.nvars) if w[i] == 1]
    out = R.ring.zero()
    for g, dg in zip(gens, degs):
        if dg > target:
            continue
        mult = R.ring.constant(_random_unit(rng, p))
        for _ in range(target - dg):
            form = R.ring.zero()
            for v in linear:
                form = form + v.scale(rng.randrange(p))
            mult = mult * form
        out = out + mult * g
    return out


def select_parameters(R: RingPresentation, target_s: int | None = None, seed: int = 0,
                      budget: int = 64) -> ParameterSystem:
    """Choose ``x_d, x_{d-1}, ..., x_1`` satisfying the membership clauses."""
    if R.weights is None:
        raise ValueError("parameter selection needs a graded ring")
    d = R.dim()
    if d <= 0:
        raise ValueError("parameter selection needs dim A > 0")
    nd = noncm_data(R)
    s = nd.noncm_dimension if target_s is None else target_s
    s = max(s, 0)
    if s >= d:
        raise ValueError(f"split index {s} must be below dim A = {d}")
    rng = random.Random(seed)
    chosen: dict = {}
    for i in range(d, 0, -1):
        later = [chosen[j] for j in range(i + 1, d + 1)]
        if i > s:
            source = nd.a_ideal
        else:
            source = noncm_data(R.quotient(later), check_equidimensional=False).a_ideal
        gens = _candidate_sources(R, source)
        if not gens:
            raise ParameterSelectionError(f"no homogeneous candidates for x_{i}", source)
        for attempt in range(budget):
            cand = _draw(rng, R, gens, attempt, budget)
            if not cand or not R.reduce(cand):
                continue
            if R.quotient(later + [cand]).dim() == i - 1:
                chosen[i] = cand.monic()
                break
        else:
            raise ParameterSelectionError(
                f"retry budget exhausted while choosing x_{i}", source)
    elements = [chosen[i] for i in range(1, d + 1)]
    degrees = [_weighted_degree(x, R.weights) for x in elements]
    return ParameterSystem(R, elements, s, nd.noncm_dimension, seed, degrees)


# --------------------------------------------------------------------------
# centers


RECIPES = ("q", "b", "c")


@dataclass
class CenterIdeal:
    params: ParameterSystem
    recipe: str
    factors: list  # lists of 1-based parameter indices
    transform: bool = False

    @property
    def generators(self) -> list:
        """Distinct monomials in the parameters, as sorted index tuples."""
        seen = []
        for combo in cartesian(*self.factors):
            t = tuple(sorted(combo))
            if t not in seen:
                seen.append(t)
        return seen

    def element(self, idx: tuple) -> Polynomial:
        R = self.params.ring
        out = R.ring.one()
        for i in idx:
            out = out * self.params.x(i)
        return out

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.params.ring.ring, [self.element(t) for t in self.generators])

    def reduction(self) -> list:
        """A generating set of a reduction of the center (index tuples)."""
        s, d = self.params.split, self.params.d
        tail = range(s + 1, d + 1)
        if self.recipe == "q":
            return self.generators
        if self.recipe == "b":
            out = [(s, j) for j in tail] + [(j, j) for j in tail]
        else:
            out = [(s - 1, s, j) for j in tail] + [(s, s, j) for j in tail]
            out += [(s - 1, j, j) for j in tail] + [(j, j, j) for j in tail]
        return [tuple(sorted(t)) for t in out]

    def factorization(self, idx: tuple) -> tuple:
        target = tuple(sorted(idx))
        for combo in cartesian(*self.factors):
            if tuple(sorted(combo)) == target:
                return combo
        raise ValueError(f"{idx} is not a generator of the center")

    def label(self, idx: tuple) -> str:
        return "*".join(f"x{i}" for i in idx)

    def to_dict(self) -> dict:
        return {
            "recipe": self.recipe + ("~" if self.transform else ""),
            "factors": [[f"x{i}" for i in f] for f in self.factors],
            "generators": [self.label(t) for t in self.generators],
        }


def center_ideal(ps: ParameterSystem, recipe: str | None = None, transform: bool = False) -> CenterIdeal:
    s, d = ps.split, ps.d
    if recipe is None:
        if s > 2:
            raise ConstructionUndefined("construction undefined for s >= 3")
        recipe = RECIPES[s]
    if recipe not in RECIPES:
        raise ValueError(f"unknown recipe {recipe!r}")
    depth_needed = RECIPES.index(recipe)
    if s < depth_needed:
        raise ConstructionUndefined(f"recipe {recipe} needs s >= {depth_needed}")
    factors = [list(range(s + 1 - k, d + 1)) for k in range(depth_needed, -1, -1)]
    return CenterIdeal(ps, recipe, factors, transform)


# --------------------------------------------------------------------------
# coordinates in which the parameters are variables


def _fresh_names(existing, base, count):
    out = []
    k = 1
    while len(out) < count:
        name = f"{base}{k}"
        if name not in existing:
            out.append(name)
        k += 1
    return out


@dataclass
class ParameterCoordinates:
    ring: RingPresentation  # A in the new coordinates
    forward: list  # images of the original variables
    backward: list  # images of the new variables in the original ring
    params: list  # the parameters as variables of the new ring


def parameter_coordinates(ps: ParameterSystem) -> ParameterCoordinates | None:
    """Linear coordinates ``z_1..z_n`` with ``z_i = x_i`` for ``i <= d``.

    Returns ``None`` unless every parameter is a linear form."""
    R = ps.ring
    ring = R.ring
    n, p = ring.nvars, ring.p
    rows = []
    for x in ps.elements:
        if any(sum(m) != 1 for m in x.terms):
            return None
        row = [0] * n
        for m, c in x.terms.items():
            row[m.index(1)] = c
        rows.append(row)
    # pivot columns of the parameter rows
    work = [r[:] for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(work)) if work[k][col] % p), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][col], -1, p)
        work[r] = [v * inv % p for v in work[r]]
        for k in range(len(work)):
            if k != r and work[k][col]:
                fac = work[k][col]
                work[k] = [(a - fac * b) % p for a, b in zip(work[k], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    if r < len(rows):
        return None
    complement = [c for c in range(n) if c not in pivots]
    full = rows + [[1 if c == k else 0 for c in range(n)] for k in complement]
    inv = _invert(full, p)
    znames = _fresh_names(set(ring.names), "z", len(rows))
    names = znames + [ring.names[k] for k in complement]
    new = PolyRing(ring.field, tuple(names))
    zs = new.gens()
    # original variable v_k = sum_j inv[k][j] z_j
    forward = []
    for k in range(n):
        f = new.zero()
        for j in range(n):
            if inv[k][j]:
                f = f + zs[j].scale(inv[k][j])
        forward.append(f)
    backward = list(ps.elements) + [ring.var(k) for k in complement]
    ideal = [apply_ring_map(g, forward, new) for g in R.ideal.gens]
    weights = (1,) * n if R.weights is not None else None
    Rz = RingPresentation(new, ideal, weights, check_grading=False, name=R.name)
    return ParameterCoordinates(Rz, forward, backward, zs[: len(rows)])


def _invert(mat, p):
    n = len(mat)
    aug = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(k for k in range(col, n) if aug[k][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for k in range(n):
            if k != col and aug[k][col]:
                fac = aug[k][col]
                aug[k] = [(a - fac * b) % p for a, b in zip(aug[k], aug[col])]
    return [row[n:] for row in aug]


# --------------------------------------------------------------------------
# charts of centers


def _stage_chain(base: RingPresentation, zs: list, factors: list, choice: tuple, labels_for):
    """Iterated charts ``base[F_1/z_a1][F_2/z_a2]...`` over ``base``.

    A stage whose factor lies inside an earlier factor that also contains its
    denominator only inverts ``z_at / z_au``; such stages are skipped and
    returned as ``(stage, adjoined stage r, z_at / z_ar)``.
    """
    chart = None
    stage_fracs: list = []
    units: list = []
    root: list = []  # the adjoined stage whose fractions a skipped stage reuses
    for t, (F, a) in enumerate(zip(factors, choice)):
        src = next((u for u in range(t) if choice[u] in F and set(F) <= set(factors[u])), None)
        if src is not None:
            # with z_au / z_ar already a unit, inverting z_at / z_ar suffices
            r = root[src]
            stage_fracs.append(None)
            root.append(r)
            units.append((t, r, stage_fracs[r][a]))
            continue
        root.append(t)
        cur = base if chart is None else chart.ring
        img = (lambda h: h) if chart is None else chart.map
        nums = [img(zs[j - 1]) for j in F]
        den = img(zs[a - 1])
        step = adjoin_fractions(cur, nums, den, prefix=f"T{t + 1}_",
                                labels=[labels_for(j, a) for j in F])
        chart = step if chart is None else compose_charts(chart, step)
        stage_fracs = [fr if fr is None else {j: step.map(v) for j, v in fr.items()}
                       for fr in stage_fracs]
        units = [(k, u, step.map(v)) for k, u, v in units]
        stage_fracs.append({j: chart.fractions[labels_for(j, a)] for j in F})
    return chart, stage_fracs, units


def _invert_units(chart: ChartPresentation, stage_fracs: list, units: list, factors: list):
    """Adjoin the inverse of the product of ``units`` and fill in the skipped stages."""
    base = chart.ring
    ring = base.ring
    u = ring.one()
    for _, _, v in units:
        u = u * v
    if u.is_constant():
        inverse = ring.one().scale(ring.field.inv(u.constant_value()))
        loc = None
    else:
        loc = adjoin_fractions(base, [ring.one()], u, prefix="U", labels=["1/u"])
        inverse = loc.fractions["1/u"]
        chart = compose_charts(chart, loc)
        stage_fracs = [fr if fr is None else {j: loc.map(v) for j, v in fr.items()} for fr in stage_fracs]
    lift = (lambda h: h) if loc is None else loc.map
    for t, src, v in units:
        inv_v = inverse
        for t2, _, w in units:
            if t2 != t:
                inv_v = inv_v * lift(w)
        stage_fracs[t] = {j: stage_fracs[src][j] * inv_v for j in factors[t]}
    if loc is not None:
        chart.localization = (base, u)
    return chart, stage_fracs


def center_charts(center: CenterIdeal, use_reduction: bool = False) -> list:
    """Charts of ``Proj A[J t]`` for the center ``J`` (or of its transform)."""
    ps = center.params
    R = ps.ring
    dens = center.reduction() if use_reduction else center.generators
    coords = parameter_coordinates(ps)
    out = []
    if coords is None:
        gens = [center.element(t) for t in center.generators]
        labels = [center.label(t) for t in center.generators]
        for t in dens:
            den = center.element(t)
            ch = adjoin_fractions(R, gens, den, labels=labels)
            ch.label = f"chart[{center.label(t)}]"
            out.append(ch)
        if center.transform:
            out = [_transform_stage(center, ch, t)[0] for ch, t in zip(out, dens)]
        return out
    Rz = coords.ring
    for t in dens:
        choice = center.factorization(t)
        chart, fracs, units = _stage_chain(Rz, coords.params, center.factors, choice,
                                           lambda j, a: f"x{j}/x{a}")
        images = [chart.map(f) for f in coords.forward]
        ch = ChartPresentation(chart.ring, R, images, center.element(t), {}, f"chart[{center.label(t)}]")
        if center.transform:
            ch, step = _transform_stage(center, ch, t)
            if step is not None:
                fracs = [fr if fr is None else {j: step.map(v) for j, v in fr.items()} for fr in fracs]
                units = [(k, u, step.map(v)) for k, u, v in units]
        if units:
            ch, fracs = _invert_units(ch, fracs, units, center.factors)
        for g in center.generators:
            val = ch.ring.ring.one()
            for stage, j in zip(fracs, center.factorization(g)):
                val = val * stage[j]
            ch.fractions[center.label(g)] = val
        ch.ring.name = ch.label
        out.append(ch)
    return out


def transform_ideal(center: CenterIdeal) -> tuple:
    """``(J~, divisor)``: the saturation of the center by ``x_s`` (for ``q``)
    or by ``x_{s-1}`` (for ``b``)."""
    ps = center.params
    R = ps.ring
    s = ps.split
    if center.recipe == "q":
        if s < 1:
            raise ConstructionUndefined("the q-transform needs s >= 1")
        divisor = ps.x(s)
    elif center.recipe == "b":
        if s < 2:
            raise ConstructionUndefined("the b-transform needs s >= 2")
        divisor = ps.x(s - 1)
    else:
        raise ConstructionUndefined("no transform is defined for recipe c")
    J = Ideal(R.ring, list(R.ideal.gens) + [center.element(t) for t in center.generators])
    sat, _ = saturate(J, divisor)
    return sat, divisor


def ideal_transform_center(center: CenterIdeal, n_bound: int = 2) -> tuple:
    """The transform of the center together with its finiteness identities."""
    sat, divisor = transform_ideal(center)
    ps = center.params
    if center.recipe == "q":
        report = verify_transform_identity(ps.ring, divisor, [ps.x(i) for i in ps.q_indices()], n_bound)
    else:
        report = b_transform_identity(ps.ring, ps.elements, ps.split, n_bound)
    return sat, report


def _transform_stage(center: CenterIdeal, ch: ChartPresentation, t) -> tuple:
    """Adjoin the extra generators of the transform over ``x^t``; returns the
    chart and the step taken (``None`` when nothing was adjoined)."""
    R = center.params.ring
    cache = R._cache.setdefault("transform_extras", {})
    ck = (center.recipe, tuple(map(str, center.params.elements)))
    if ck not in cache:
        sat, _ = transform_ideal(center)
        J = Ideal(R.ring, list(R.ideal.gens) + [center.element(g) for g in center.generators])
        cache[ck] = [g for g in sat.groebner() if not J.contains(g)]
    extras = cache[ck]
    if not extras:
        ch.label += "~"
        return ch, None
    den = ch.map(center.element(t))
    nums = [ch.map(g) for g in extras]
    labels = [f"({g})/{center.label(t)}" for g in extras]
    step = adjoin_fractions(ch.ring, nums, den, prefix="W", labels=labels)
    out = compose_charts(ch, step)
    out.label = ch.label + "~"
    out.denominator = ch.denominator
    return out, step


# --------------------------------------------------------------------------
# certification


@dataclass
class ChartVerdict:
    label: str
    nvars: int
    dim: int
    depth: int
    cohen_macaulay: bool
    nonzero_ext: list
    denominator_regular: bool
    depth_bound: int
    depth_bound_ok: bool
    chart: ChartPresentation | None = None

    def to_dict(self, with_presentation: bool = False) -> dict:
        out = {
            "label": self.label,
            "nvars": self.nvars,
            "dim": self.dim,
            "depth": self.depth,
            "cohen_macaulay": self.cohen_macaulay,
            "nonzero_ext": self.nonzero_ext,
            "denominator_regular": self.denominator_regular,
            "depth_bound": self.depth_bound,
            "depth_bound_ok": self.depth_bound_ok,
        }
        if with_presentation and self.chart is not None:
            out["presentation"] = self.chart.to_dict()
        return out


@dataclass
class StageReport:
    center: CenterIdeal
    theorem: str
    depth_bound: int
    cm_expected: bool
    hypotheses: dict
    charts: list

    @property
    def all_cm(self) -> bool:
        return all(c.cohen_macaulay for c in self.charts)

    @property
    def theorem_holds(self) -> bool:
        ok = all(c.depth_bound_ok and c.denominator_regular for c in self.charts)
        if self.cm_expected:
            ok = ok and self.all_cm
        return ok

    def to_dict(self, with_presentation: bool = False) -> dict:
        return {
            "center": self.center.to_dict(),
            "parameters": self.center.params.to_dict(),
            "theorem": self.theorem,
            "depth_bound": self.depth_bound,
            "cm_expected": self.cm_expected,
            "hypotheses": self.hypotheses,
            "all_charts_cm": self.all_cm,
            "theorem_holds": self.theorem_holds,
            "charts": [c.to_dict(with_presentation) for c in self.charts],
        }


def _expectations(center: CenterIdeal) -> tuple:
    ps = center.params
    R = ps.ring
    d, s = ps.d, ps.split
    A_cm = cm_certificate(R).cohen_macaulay
    hyp = {"A_cohen_macaulay": A_cm}
    if center.transform:
        if center.recipe == "q":
            return "ideal transform of q", d - s + 1, s == 1, hyp
        return "ideal transform of b", d - s + 2, s == 2, hyp
    if center.recipe == "q":
        quo_cm = True
        if s > 0:
            quo_cm = cm_certificate(R.quotient([ps.x(i) for i in ps.q_indices()])).cohen_macaulay
        hyp["A_mod_q_cohen_macaulay"] = quo_cm
        return "blowup of q", d - s, s == 0 or quo_cm or A_cm, hyp
    if center.recipe == "b":
        bound = d - s + 1
        # the sharper bound divides by x_{s-1}, so it needs s >= 2
        if s >= 2:
            tail_cm = cm_certificate(R.quotient([ps.x(i) for i in range(s, d + 1)])).cohen_macaulay
            hyp["A_mod_xs_to_xd_cohen_macaulay"] = tail_cm
            if tail_cm:
                bound = d - s + 2
        return "blowup of b", bound, s == 1 or A_cm, hyp
    return "blowup of c", d - s + 2, s == 2 or A_cm, hyp


def certify_blowup(R: RingPresentation, center: CenterIdeal, use_reduction: bool = False,
                   keep_charts: bool = True) -> StageReport:
    """Build every chart of the center and certify depth and CM-ness."""
    if center.params.ring is not R:
        raise ValueError("center was built for a different ring")
    theorem, bound, cm_expected, hyp = _expectations(center)
    verdicts = []
    for ch in center_charts(center, use_reduction):
        if ch.localization is not None:
            cert = localized_cm_certificate(*ch.localization)
        else:
            cert = cm_certificate(ch.ring)
        den = ch.map(center.params.ring.ring(ch.denominator))
        regular = ch.ring.is_regular(den)
        verdicts.append(ChartVerdict(ch.label, ch.ring.nvars, cert.dim, cert.depth, cert.cohen_macaulay,
                                     cert.nonzero_ext, regular, bound, cert.depth >= bound,
                                     ch if keep_charts else None))
        log.info("%s: dim %d depth %d cm %s", ch.label, cert.dim, cert.depth, cert.cohen_macaulay)
    return StageReport(center, theorem, bound, cm_expected, hyp, verdicts)


@dataclass
class MacaulayficationReport:
    ring: RingPresentation
    noncm_dimension: int
    stages: list
    notes: list = field(default_factory=list)
    followups: list = field(default_factory=list)
    battery: CertifiedReport | None = None

    @property
    def verdict(self) -> bool:
        if not self.stages:
            return self.noncm_dimension < 0
        return self.stages[-1].all_cm

    def to_dict(self, with_presentation: bool = False) -> dict:
        return {
            "verdict": self.verdict,
            "noncm_dimension": self.noncm_dimension,
            "stages": [s.to_dict(with_presentation) for s in self.stages],
            "followups": self.followups,
            "notes": self.notes,
            "parameter_battery": self.battery.to_dict() if self.battery else None,
        }


@dataclass
class PipelineConfig:
    seed: int = 0
    use_reduction: bool = False
    transform: bool = False
    stage_limit: int = 1
    max_dim: int = 6
    budget: int = 64
    check_sequences: bool = True
    exp_bound: int = 2
    power_bound: int = 3


def _chart_noncm_dimension(chart: ChartPresentation) -> int:
    if chart.localization is None:
        return noncm_data(chart.ring, check_equidimensional=False).noncm_dimension
    base, unit = chart.localization
    locus = saturate_principal(noncm_data(base, check_equidimensional=False).a_ideal, unit)
    return -1 if locus.is_unit() else ideal_dimension(locus)


def macaulayfy(R: RingPresentation, config: PipelineConfig | None = None) -> MacaulayficationReport:
    """Non-CM locus, parameters, center and chart certification in one stage."""
    config = config or PipelineConfig()
    if R.dim() > config.max_dim:
        raise ValueError(f"dim A = {R.dim()} exceeds the configured maximum {config.max_dim}")
    nd = noncm_data(R)
    s = nd.noncm_dimension
    if s < 0:
        return MacaulayficationReport(R, s, [], ["ring is already Cohen-Macaulay"])
    if s > 2:
        raise ConstructionUndefined(
            "construction undefined for s >= 3: the non-CM locus must have dimension at most 2")
    ps = select_parameters(R, s, config.seed, config.budget)
    recipe = RECIPES[s]
    if config.transform:
        if s == 0:
            raise ConstructionUndefined("transform variants need s >= 1")
        recipe = RECIPES[s - 1]
    center = center_ideal(ps, recipe, config.transform)
    battery = None
    if config.check_sequences:
        battery = parameter_battery(R, ps.elements, ps.split, config.exp_bound, config.power_bound)
        if not battery.verdict:
            report = MacaulayficationReport(R, s, [], battery=battery)
            report.notes.append("parameter battery failed; certification not attempted")
            return report
    stage = certify_blowup(R, center, config.use_reduction)
    report = MacaulayficationReport(R, s, [stage], battery=battery)
    bad = [c for c in stage.charts if not c.cohen_macaulay]
    for c in bad:
        try:
            report.followups.append({"chart": c.label, "noncm_dimension": _chart_noncm_dimension(c.chart)})
        except (ValueError, ResourceLimitError) as exc:  # reported, not fatal
            report.followups.append({"chart": c.label, "error": str(exc)})
    if bad and config.stage_limit > 1:
        report.notes.append("further stages need graded chart rings; recursion not performed")
    return report
