"""d-sequences, bounded u.s.d checks and colon-ideal identity verifiers.

Everything happens in ``P`` on ideals containing the defining ideal of ``A``.
Bounded checks never prove a universal statement; their reports carry the
bounds they ran with and ``bounded=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Sequence

from .groebner import Ideal
from .ideals import (
    RingPresentation,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    saturate,
)
from .poly import Polynomial

MAX_USD_LENGTH = 6

PASS = "pass"
FAIL = "fail"
UNESTABLISHED = "hypothesis not established"


class BoundError(ValueError):
    pass


class ZeroDivisorError(ValueError):
    pass


def _gens_text(I: Ideal) -> list:
    return [str(g) for g in I.groebner()]


class ColonCache:
    """Memoised ``(I + base + (gens)) : f`` for a fixed ring and base ideal."""

    def __init__(self, R: RingPresentation, base: Sequence[Polynomial] = ()):
        self.R = R
        self.base = list(R.ideal.gens) + [R.ring(g) for g in base]
        self._store: dict = {}

    def ideal(self, gens) -> Ideal:
        return Ideal(self.R.ring, self.base + list(gens))

    def colon(self, gens, f: Polynomial) -> Ideal:
        key = (tuple(sorted(str(g) for g in gens)), str(f))
        if key not in self._store:
            self._store[key] = ideal_quotient(self.ideal(gens), f)
        return self._store[key]


@dataclass
class SequenceReport:
    verdict: bool
    checked: int = 0
    bounds: dict = field(default_factory=dict)
    bounded: bool = False
    failing_instance: dict | None = None

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "checked": self.checked, "bounded": self.bounded}
        if self.bounds:
            out["bounds"] = self.bounds
        if self.failing_instance is not None:
            out["failing_instance"] = self.failing_instance
        return out


def _d_sequence_failure(cache: ColonCache, seq: list):
    """First ``(i, j, left, right, witness, side)`` with unequal colons, 1-based."""
    checked = 0
    for i in range(1, len(seq) + 1):
        prefix = seq[: i - 1]
        for j in range(i, len(seq) + 1):
            left = cache.colon(prefix, seq[i - 1] * seq[j - 1])
            right = cache.colon(prefix, seq[j - 1])
            checked += 1
            same, wit = ideal_equal(left, right)
            if not same:
                return checked, (i, j, left, right, wit)
    return checked, None


def _failure_dict(i, j, left, right, wit, **extra) -> dict:
    g, side = wit
    out = {
        "i": i,
        "j": j,
        "left": _gens_text(left),
        "right": _gens_text(right),
        "witness": str(g),
        "witness_in": side,
    }
    out.update(extra)
    return out


def is_d_sequence(R: RingPresentation, seq: Sequence, modulo: Sequence = (),
                  cache: ColonCache | None = None) -> SequenceReport:
    """``(f_1..f_{i-1}) : f_i f_j == (f_1..f_{i-1}) : f_j`` for all ``i <= j``."""
    seq = [R.ring(f) for f in seq]
    if not seq:
        raise ValueError("empty sequence")
    cache = cache or ColonCache(R, modulo)
    checked, bad = _d_sequence_failure(cache, seq)
    if bad is None:
        return SequenceReport(True, checked)
    return SequenceReport(False, checked, failing_instance=_failure_dict(*bad))


def is_usd_sequence_bounded(R: RingPresentation, seq: Sequence, exp_bound: int = 2,
                            modulo: Sequence = (), max_length: int = MAX_USD_LENGTH) -> SequenceReport:
    """Every order and every exponent vector in ``[1, exp_bound]^h``."""
    seq = [R.ring(f) for f in seq]
    if not seq:
        raise ValueError("empty sequence")
    if len(seq) > max_length:
        raise BoundError(f"sequence length {len(seq)} exceeds the guard {max_length}")
    if exp_bound < 1:
        raise BoundError("exp_bound must be at least 1")
    cache = ColonCache(R, modulo)
    bounds = {"exp_bound": exp_bound, "permutations": "all"}
    total = 0
    for perm in permutations(range(len(seq))):
        for exps in product(range(1, exp_bound + 1), repeat=len(seq)):
            cur = [seq[k] ** e for k, e in zip(perm, exps)]
            checked, bad = _d_sequence_failure(cache, cur)
            total += checked
            if bad is not None:
                fi = _failure_dict(*bad, permutation=[k + 1 for k in perm], exponents=list(exps))
                return SequenceReport(False, total, bounds, True, fi)
    return SequenceReport(True, total, bounds, True)


# --------------------------------------------------------------------------
# identity verification


@dataclass
class CertifiedReport:
    name: str
    state: str
    instances: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.state == PASS

    def add(self, label: str, holds: bool, witness=None, **extra):
        entry = {"instance": label, "holds": holds}
        if witness is not None:
            entry["witness"] = str(witness[0])
            entry["witness_in"] = witness[1]
        entry.update(extra)
        self.instances.append(entry)
        if not holds and self.state == PASS:
            self.state = FAIL

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "state": self.state,
            "verdict": self.verdict,
            "bounds": self.bounds,
            "hypotheses": self.hypotheses,
            "instances": self.instances,
            "notes": self.notes,
        }


def _in_A(R: RingPresentation, I: Ideal) -> Ideal:
    return Ideal(R.ring, list(I.gens) + list(R.ideal.gens))


def _check_equal(report: CertifiedReport, R: RingPresentation, label: str, I: Ideal, J: Ideal, **extra):
    same, wit = ideal_equal(_in_A(R, I), _in_A(R, J))
    report.add(label, same, wit, **extra)
    return same


def _check_contained(report: CertifiedReport, R: RingPresentation, label: str, small: Ideal, big: Ideal):
    big = _in_A(R, big)
    for g in small.gens:
        if not big.contains(g):
            report.add(label, False, (g, "left"))
            return False
    report.add(label, True)
    return True


def _require_regular(R: RingPresentation, f: Polynomial, what: str):
    if not R.is_regular(f):
        raise ZeroDivisorError(f"{what} {f} is a zerodivisor on the ring")


def _transform_hypothesis(R: RingPresentation, f0: Polynomial, q: Sequence, bound: int) -> tuple:
    """d-sequence property of ``q`` on ``A/f0^l`` for ``l <= bound``."""
    results = {}
    for l in range(1, bound + 1):
        rep = is_d_sequence(R, q, modulo=[f0 ** l])
        results[f"d_sequence_mod_f0^{l}"] = rep.verdict
    return all(results.values()), results


def _open_gap_note(bound: int) -> str:
    return f"hypothesis checked for l <= {bound} only; the universal statement is not decided"


def verify_transform_identity(R: RingPresentation, f0, q: Sequence, n_bound: int = 3) -> CertifiedReport:
    """``q^(n-1) q~ == q~^n == q^n : <f0>`` for ``n <= n_bound``, ``q~ = q : <f0>``."""
    ring = R.ring
    f0 = ring(f0)
    q = [ring(g) for g in q]
    _require_regular(R, f0, "f0")
    report = CertifiedReport("transform_identity", PASS, bounds={"n_bound": n_bound})
    ok, hyp = _transform_hypothesis(R, f0, q, n_bound)
    report.hypotheses = hyp
    report.notes.append(_open_gap_note(n_bound))
    Q = R.lift(q)
    qt, _ = saturate(Q, f0)
    for n in range(1, n_bound + 1):
        qn = _in_A(R, ideal_power(Ideal(ring, q), n))
        rhs, _ = saturate(qn, f0)
        qtn = ideal_power(qt, n)
        mixed = ideal_product(ideal_power(Ideal(ring, q), n - 1), qt)
        _check_equal(report, R, f"q^{n - 1} q~ = q~^{n}", mixed, qtn, n=n)
        _check_equal(report, R, f"q~^{n} = q^{n} : <f0>", qtn, rhs, n=n)
    if not ok and report.state == FAIL:
        report.state = UNESTABLISHED
    return report


def product_colon_identity(R: RingPresentation, f0, fs: Sequence, n_bound: int = 3) -> CertifiedReport:
    """``[(f_1..f_k) q^n] : f0 == (f_1..f_k)[q^n : f0] + (0 : f0)``."""
    ring = R.ring
    f0 = ring(f0)
    fs = [ring(g) for g in fs]
    report = CertifiedReport("product_colon_identity", PASS, bounds={"n_bound": n_bound, "k": f"1..{len(fs)}"})
    hyp = is_d_sequence(R, fs, modulo=[f0])
    report.hypotheses = {"d_sequence_mod_f0": hyp.verdict}
    q = Ideal(ring, fs)
    ann = R.annihilator_of(f0)
    for n in range(1, n_bound + 1):
        qn = ideal_power(q, n)
        qn_colon = ideal_quotient(_in_A(R, qn), f0)
        for k in range(1, len(fs) + 1):
            fk = Ideal(ring, fs[:k])
            lhs = ideal_quotient(_in_A(R, ideal_product(fk, qn)), f0)
            rhs = ideal_sum(ideal_product(fk, qn_colon), ann)
            _check_equal(report, R, f"k={k}, n={n}", lhs, rhs, k=k, n=n)
    if not hyp.verdict and report.state == FAIL:
        report.state = UNESTABLISHED
    return report


def parameter_colon_identity(R: RingPresentation, params: Sequence, exponents: Sequence[int] | None = None,
              hypothesis_ok: bool | None = None) -> CertifiedReport:
    """``(x_1^n_1..x_{i-1}^n_{i-1}, x_{k+1}..x_d) : x_i^n_i  intersected with
    (x_1^n_1..x_{i-1}^n_{i-1}, x_k..x_d)`` equals the first ideal."""
    ring = R.ring
    xs = [ring(x) for x in params]
    d = len(xs)
    ns = list(exponents) if exponents is not None else [1] * d
    report = CertifiedReport("parameter_colon_identity", PASS, bounds={"exponents": ns})
    if hypothesis_ok is not None:
        report.hypotheses = {"parameter_condition": hypothesis_ok}
    for i in range(1, d + 1):
        head = [xs[t] ** ns[t] for t in range(i - 1)]
        for k in range(i, d + 1):
            base = R.lift(head + xs[k:])
            colon = ideal_quotient(base, xs[i - 1] ** ns[i - 1])
            other = R.lift(head + xs[k - 1:])
            lhs = ideal_intersect(colon, other)
            _check_equal(report, R, f"i={i}, k={k}", lhs, base, i=i, k=k)
    if hypothesis_ok is False and report.state == FAIL:
        report.state = UNESTABLISHED
    return report


def b_transform_identity(R: RingPresentation, params: Sequence, s: int, n_bound: int = 2,
              hypothesis_ok: bool | None = None) -> CertifiedReport:
    """``b~^n == b^n : <x_{s-1}> == q b^(n-1) [(x_s..x_d) : x_{s-1}]
    + x_s^n q^(n-1) [q : x_{s-1}]`` and ``b~^2 == b b~``."""
    ring = R.ring
    xs = [ring(x) for x in params]
    d = len(xs)
    if s < 2:
        raise ValueError("the b-transform identity needs s >= 2")
    report = CertifiedReport("b_transform_identity", PASS, bounds={"n_bound": n_bound})
    if hypothesis_ok is not None:
        report.hypotheses = {"parameter_condition": hypothesis_ok}
    x = lambda i: xs[i - 1]  # noqa: E731
    div = x(s - 1)
    _require_regular(R, div, "x_{s-1}")
    q = Ideal(ring, [x(i) for i in range(s + 1, d + 1)])
    mid = Ideal(ring, [x(i) for i in range(s, d + 1)])
    b = ideal_product(mid, q)
    bt, _ = saturate(_in_A(R, b), div)
    mid_colon = ideal_quotient(_in_A(R, mid), div)
    q_colon = ideal_quotient(_in_A(R, q), div)
    for n in range(1, n_bound + 1):
        btn = ideal_power(bt, n)
        bn_sat, _ = saturate(_in_A(R, ideal_power(b, n)), div)
        formula = ideal_sum(
            ideal_product(ideal_product(q, ideal_power(b, n - 1)), mid_colon),
            ideal_product(ideal_product(Ideal(ring, [x(s) ** n]), ideal_power(q, n - 1)), q_colon),
        )
        _check_equal(report, R, f"b~^{n} = b^{n} : <x_(s-1)>", btn, bn_sat, n=n)
        _check_equal(report, R, f"b^{n} : <x_(s-1)> = formula", bn_sat, formula, n=n)
    _check_equal(report, R, "b~^2 = b b~", ideal_power(bt, 2), ideal_product(b, bt))
    if hypothesis_ok is False and report.state == FAIL:
        report.state = UNESTABLISHED
    return report


COLON_IDENTITIES = {
    "product_colon": product_colon_identity,
    "parameter_colon": parameter_colon_identity,
    "b_transform": b_transform_identity,
}


def verify_colon_lemma(kind: str, R: RingPresentation, *args, **kwargs) -> CertifiedReport:
    try:
        fn = COLON_IDENTITIES[kind]
    except KeyError:
        raise ValueError(f"unknown identity {kind!r}; expected one of {sorted(COLON_IDENTITIES)}") from None
    return fn(R, *args, **kwargs)


# --------------------------------------------------------------------------
# checks tied to a parameter system


def parameter_battery(R: RingPresentation, params: Sequence, s: int, exp_bound: int = 2,
                      power_bound: int = 3) -> CertifiedReport:
    """d-sequence checks on ``x_1^n_1..x_s^n_s, x_sigma(s+1)^..`` over all
    tail permutations, and of the head modulo ``q^n``."""
    ring = R.ring
    xs = [ring(x) for x in params]
    d = len(xs)
    report = CertifiedReport("parameter_battery", PASS,
                             bounds={"exp_bound": exp_bound, "power_bound": power_bound})
    cache = ColonCache(R)
    tail = list(range(s, d))
    for perm in permutations(tail):
        order = list(range(s)) + list(perm)
        for exps in product(range(1, exp_bound + 1), repeat=d):
            seq = [xs[k] ** e for k, e in zip(order, exps)]
            _, bad = _d_sequence_failure(cache, seq)
            label = f"order={[k + 1 for k in order]}, exponents={list(exps)}"
            if bad is None:
                report.add(label, True)
            else:
                i, j, left, right, wit = bad
                report.add(label, False, wit, i=i, j=j)
                return report
    if s > 0:
        q = Ideal(ring, xs[s:])
        for n in range(1, power_bound + 1):
            qn = ideal_power(q, n)
            mod_cache = ColonCache(R, qn.gens)
            for exps in product(range(1, exp_bound + 1), repeat=s):
                seq = [xs[k] ** e for k, e in zip(range(s), exps)]
                _, bad = _d_sequence_failure(mod_cache, seq)
                label = f"modulo q^{n}, exponents={list(exps)}"
                if bad is None:
                    report.add(label, True)
                else:
                    i, j, left, right, wit = bad
                    report.add(label, False, wit, i=i, j=j)
                    return report
    return report


def chart_regular_sequence(R: RingPresentation, f0, q: Sequence) -> CertifiedReport:
    """In ``B = A[q~/f_h]`` the images of ``f_h, f_1/f_h, .., f_{h-1}/f_h, f0``
    form a regular sequence."""
    from .blowup import adjoin_fractions

    ring = R.ring
    f0 = ring(f0)
    q = [ring(g) for g in q]
    fh = q[-1]
    qt, _ = saturate(R.lift(q), f0)
    nums = [g for g in q[:-1]] + [g for g in qt.groebner() if not R.lift(q).contains(g)]
    labels = [f"q{k + 1}" for k in range(len(q) - 1)] + [f"e{k}" for k in range(len(nums) - len(q) + 1)]
    chart = adjoin_fractions(R, nums, fh, prefix="T", labels=labels)
    B = chart.ring
    seq = [chart.map(fh)] + [chart.fractions[f"q{k + 1}"] for k in range(len(q) - 1)] + [chart.map(f0)]
    report = CertifiedReport("chart_regular_sequence", PASS, bounds={"length": len(seq)})
    done = []
    for k, g in enumerate(seq):
        quo = B.lift(done)
        same, wit = ideal_equal(ideal_quotient(quo, g), quo)
        report.add(f"element {k + 1}", same, wit)
        done.append(g)
    unit = B.lift(done).is_unit()
    report.add("quotient is nonzero", not unit)
    return report


def transform_inclusion(R: RingPresentation, params: Sequence, s: int, n_bound: int = 2) -> CertifiedReport:
    """``(x_{s-1}..x_d) b~^n`` inside ``b^n`` for ``n <= n_bound``."""
    ring = R.ring
    xs = [ring(x) for x in params]
    report = CertifiedReport("transform_inclusion", PASS, bounds={"n_bound": n_bound})
    q = Ideal(ring, xs[s:])
    mid = Ideal(ring, xs[s - 1:])
    b = ideal_product(mid, q)
    bt, _ = saturate(_in_A(R, b), xs[s - 2])
    outer = Ideal(ring, xs[s - 2:])
    for n in range(1, n_bound + 1):
        small = ideal_product(outer, ideal_power(bt, n))
        _check_contained(report, R, f"n={n}", small, ideal_power(b, n))
    return report
