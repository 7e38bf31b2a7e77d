"""Reference implementations used only by the tests.

The Buchberger oracle here shares nothing with the package kernel except
the monomial order keys: plain dicts, a linear scan for divisors, every pair
processed, no criteria.
"""

from __future__ import annotations

import random

from macaulayfy.groebner import Ideal
from macaulayfy.ideals import RingPresentation, ideal_equal, ideal_quotient


def _lead(f: dict, key):
    return max(f, key=key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_multiple(f: dict, g: dict, c: int, shift, p: int) -> dict:
    out = dict(f)
    for m, v in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        nv = (out.get(mm, 0) - c * v) % p
        if nv:
            out[mm] = nv
        else:
            out.pop(mm, None)
    return out


def divide(f: dict, basis: list, p: int, key) -> dict:
    """Full remainder of ``f`` modulo ``basis`` (every term reduced)."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = _lead(f, key)
        c = f[m]
        for g in basis:
            lg = _lead(g, key)
            if _divides(lg, m):
                shift = tuple(x - y for x, y in zip(m, lg))
                f = _sub_multiple(f, g, c * pow(g[lg], -1, p) % p, shift, p)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _spoly(f: dict, g: dict, p: int, key) -> dict:
    lf, lg = _lead(f, key), _lead(g, key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    a = {tuple(x + y for x, y in zip(m, sf)): v * pow(f[lf], -1, p) % p for m, v in f.items()}
    return _sub_multiple(a, g, pow(g[lg], -1, p), sg, p)


def naive_groebner(polys: list, p: int, key) -> list:
    """Reduced Groebner basis, monic, sorted by descending leading monomial."""
    basis = [dict(f) for f in polys if f]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop()
        h = divide(_spoly(basis[i], basis[j], p, key), basis, p, key)
        if h:
            basis.append(h)
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    # minimalise, then reduce
    basis.sort(key=lambda g: key(_lead(g, key)))
    minimal = []
    for k, g in enumerate(basis):
        lg = _lead(g, key)
        if any(_divides(_lead(h, key), lg) for h in minimal):
            continue
        if any(_divides(_lead(h, key), lg) and _lead(h, key) != lg for h in basis[k + 1:]):
            continue
        minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lg = _lead(g, key)
        tail = {m: v for m, v in g.items() if m != lg}
        r = divide(tail, others, p, key)
        r[lg] = g[lg]
        inv = pow(g[lg], -1, p)
        reduced.append({m: v * inv % p for m, v in r.items()})
    reduced.sort(key=lambda g: key(_lead(g, key)), reverse=True)
    return reduced


def all_spolys_reduce(basis: list, p: int, key) -> bool:
    for j in range(len(basis)):
        for i in range(j):
            if divide(_spoly(basis[i], basis[j], p, key), basis, p, key):
                return False
    return True


def as_dicts(polys) -> list:
    return [dict(f.terms) for f in polys]


def random_polynomial(rng: random.Random, nvars: int, max_degree: int, nterms: int, p: int) -> dict:
    out = {}
    for _ in range(nterms):
        deg = rng.randint(0, max_degree)
        e = [0] * nvars
        for _ in range(deg):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.randrange(1, p)
    return out


# --------------------------------------------------------------------------
# depth by regular sequences of random linear forms


def is_regular_on(R: RingPresentation, gens: list, f) -> bool:
    base = R.lift(gens)
    same, _ = ideal_equal(ideal_quotient(base, f), base)
    return same


def regular_sequence_depth(R: RingPresentation, seed: int = 0, tries: int = 3) -> int:
    """Length of a maximal regular sequence of random linear forms.

    Over a large field a generic linear form avoids every associated prime
    other than the irrelevant ideal, so the length equals the depth with
    overwhelming probability; ``tries`` independent forms guard the rest.
    """
    rng = random.Random(seed)
    ring = R.ring
    p = ring.p
    chosen = []
    while True:
        if R.lift(chosen).is_unit():
            return len(chosen)
        for _ in range(tries):
            form = ring.zero()
            for v in ring.gens():
                form = form + v.scale(rng.randrange(1, p))
            if is_regular_on(R, chosen, form):
                chosen.append(form)
                break
        else:
            return len(chosen)


def zero_divisor_on_degree_one(R: RingPresentation) -> bool:
    """Every variable kills some nonzero element (spot check for depth 0)."""
    return all(not R.is_regular(v) for v in R.ring.gens())


def membership_both_ways(I: Ideal, J: Ideal) -> bool:
    return all(I.contains(g) for g in J.gens) and all(J.contains(g) for g in I.gens)
