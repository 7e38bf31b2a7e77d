"""Multivariate polynomials over a prime field.

Polynomials are sparse maps from exponent tuples to residues in ``[0, p)``.
Monomial orders are exposed as key functions whose tuple comparison agrees
with the order, so every order in this module is a weight-matrix order and
``key(m * n) == key(m) + key(n)`` holds componentwise.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from operator import add
from typing import Callable, Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003
SECOND_PRIME = 65537
EXPONENT_CAP = 2**31 - 1

Monomial = tuple  # tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class ExponentOverflowError(OverflowError):
    pass


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.characteristic):
            raise ValueError("characteristic must be prime")

    @property
    def p(self) -> int:
        return self.characteristic

    def inv(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.characteristic)

    def centered(self, a: int) -> int:
        a %= self.characteristic
        return a - self.characteristic if a > self.characteristic // 2 else a


# --------------------------------------------------------------------------
# monomial orders


def _grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e[1:]))


def _lex_key(e: Sequence[int]) -> tuple:
    return tuple(e)


_INNER = {"grevlex": _grevlex_key, "lex": _lex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``.  A block order ranks
    the first ``elim`` variables (after applying ``perm``) ahead of the rest,
    using ``inner`` inside each block, so it has the elimination property for
    the first block.  ``perm[i]`` is the index of the variable placed at
    position ``i``.
    """

    kind: str = "grevlex"
    nvars: int = 0
    elim: int = 0
    inner: str = "grevlex"
    perm: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.inner not in _INNER:
            raise ValueError(f"unknown inner order {self.inner!r}")
        if self.kind == "block" and not 0 <= self.elim <= self.nvars:
            raise ValueError("block size out of range")
        if self.perm is not None and sorted(self.perm) != list(range(self.nvars)):
            raise ValueError("perm must be a permutation of the variable indices")

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls("grevlex", nvars)

    @classmethod
    def lex(cls, nvars: int) -> "MonomialOrder":
        return cls("lex", nvars)

    @classmethod
    def block(cls, nvars: int, elim: int, inner: str = "grevlex") -> "MonomialOrder":
        return cls("block", nvars, elim, inner)

    def resized(self, nvars: int) -> "MonomialOrder":
        if self.kind == "block":
            return MonomialOrder("block", nvars, min(self.elim, nvars), self.inner)
        return MonomialOrder(self.kind, nvars)

    def raw_key(self, e: Sequence[int]) -> tuple:
        if self.perm is not None:
            e = [e[i] for i in self.perm]
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "grevlex":
            return _grevlex_key(e)
        inner = _INNER[self.inner]
        k = self.elim
        return inner(e[:k]) + inner(e[k:]) if k else inner(e)

    def key_function(self) -> Callable[[tuple], tuple]:
        """A memoised ``raw_key``; make one per computation."""
        cache: dict = {}
        raw = self.raw_key

        def key(m):
            k = cache.get(m)
            if k is None:
                k = cache[m] = raw(m)
            return k

        return key

    def compare(self, m1: Sequence[int], m2: Sequence[int]) -> int:
        if len(m1) != len(m2):
            raise ValueError("exponent vectors of different lengths")
        k1, k2 = self.raw_key(m1), self.raw_key(m2)
        return (k1 > k2) - (k1 < k2)


def compare_monomials(m1: Sequence[int], m2: Sequence[int], order: MonomialOrder) -> int:
    """Return 1, 0 or -1 as ``m1`` is greater than, equal to or less than ``m2``."""
    return order.compare(m1, m2)


# --------------------------------------------------------------------------
# rings and polynomials


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class PolyRing:
    field: FieldSpec
    names: tuple
    order: MonomialOrder = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for n in names:
            if not _IDENT.fullmatch(n):
                raise ValueError(f"bad variable name {n!r}")
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder.grevlex(len(names)))
        elif self.order.nvars != len(names):
            raise ValueError("order size does not match the variable count")

    @classmethod
    def make(cls, names: str | Iterable[str], p: int = DEFAULT_PRIME, order: str = "grevlex"):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        kind = MonomialOrder(order, len(names))
        return cls(FieldSpec(p), names, kind)

    @property
    def p(self) -> int:
        return self.field.characteristic

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict:
        return {n: i for i, n in enumerate(self.names)}

    def compatible(self, other: "PolyRing") -> bool:
        return self.field == other.field and self.names == other.names

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def extend(self, new_names: Sequence[str], front: bool = False) -> "PolyRing":
        names = tuple(new_names) + self.names if front else self.names + tuple(new_names)
        return PolyRing(self.field, names, self.order.resized(len(names)))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str | int) -> "Polynomial":
        i = self.index[name] if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, int):
            return self.constant(text)
        return self.parse(text)


class Polynomial:
    """An element of a :class:`PolyRing`; treat instances as immutable."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping, _clean: bool = False):
        self.ring = ring
        if _clean:
            self._terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError("exponent vector length differs from the variable count")
                c %= p
                if c:
                    clean[m] = c
            self._terms = clean
        self._hash = None

    # ---- access
    @property
    def terms(self) -> dict:
        return self._terms

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        key = (order or self.ring.order).raw_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self, order: MonomialOrder | None = None) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        key = (order or self.ring.order).raw_key
        return max(self._terms, key=key)

    def leading_coefficient(self, order: MonomialOrder | None = None) -> int:
        return self._terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set:
        return {sum(w * e for w, e in zip(weights, m)) for m in self._terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        w = weights or (1,) * self.ring.nvars
        return len(self.weighted_degrees(w)) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def support(self) -> set:
        """Indices of the variables occurring in the polynomial."""
        out = set()
        for m in self._terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def max_exponent(self) -> int:
        return max((max(m, default=0) for m in self._terms), default=0)

    # ---- arithmetic
    def _check(self, other):
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.ring.compatible(other.ring):
            raise RingMismatchError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self._terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.max_exponent() + other.max_exponent() > EXPONENT_CAP:
            raise ExponentOverflowError("exponent exceeds 2^31-1")
        p = self.ring.p
        out: dict = {}
        get = out.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(map(add, m1, m2))
                out[m] = (get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if n and self.max_exponent() * n > EXPONENT_CAP:
            raise ExponentOverflowError("exponent exceeds 2^31-1")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def exact_divide(self, g: "Polynomial") -> "Polynomial":
        """``self / g`` when ``g`` divides ``self``; raises ``ValueError`` otherwise."""
        g = self._check(g)
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        order = self.ring.order
        key = order.raw_key
        p = self.ring.p
        lm = max(g._terms, key=key)
        inv = pow(g._terms[lm], -1, p)
        rest = dict(self._terms)
        quotient = {}
        while rest:
            m = max(rest, key=key)
            shift = tuple(a - b for a, b in zip(m, lm))
            if min(shift) < 0:
                raise ValueError("polynomial is not divisible")
            q = rest[m] * inv % p
            quotient[shift] = q
            for gm, gc in g._terms.items():
                t = tuple(map(add, gm, shift))
                v = (rest.get(t, 0) - q * gc) % p
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        return Polynomial(self.ring, quotient, _clean=True)

    # ---- maps
    def apply_map(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        return apply_ring_map(self, images, target)

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Reinterpret in a ring with the same variables (e.g. another order)."""
        if ring.names != self.ring.names or ring.field != self.ring.field:
            raise RingMismatchError("rings differ in variables or field")
        return Polynomial(ring, self._terms, _clean=True)

    def embed(self, ring: PolyRing) -> "Polynomial":
        """Map into ``ring`` by matching variable names."""
        if ring.field != self.ring.field:
            raise RingMismatchError("different coefficient fields")
        try:
            pos = [ring.index[n] for n in self.ring.names]
        except KeyError as exc:
            raise RingMismatchError(f"variable {exc.args[0]} missing from target ring") from None
        n = ring.nvars
        out = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, x in zip(pos, m):
                e[i] = x
            out[tuple(e)] = c
        return Polynomial(ring, out, _clean=True)

    # ---- comparisons / display
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.compatible(other.ring) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def apply_ring_map(f: Polynomial, images: Sequence[Polynomial], target: PolyRing | None = None) -> Polynomial:
    """Substitute ``images[i]`` for the ``i``-th variable of ``f``."""
    if len(images) != f.ring.nvars:
        raise ValueError(f"expected {f.ring.nvars} images, got {len(images)}")
    if target is None:
        if not images:
            raise ValueError("target ring needed for a map out of a ring without variables")
        target = images[0].ring
    for g in images:
        if not g.ring.compatible(target):
            raise RingMismatchError("images live in different rings")
    powers: list[dict] = [{0: target.one(), 1: g} for g in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = images[i] ** e
        return cache[e]

    acc: dict = {}
    p = target.p
    for m, c in f.terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        for tm, tc in term.terms.items():
            v = (acc.get(tm, 0) + tc) % p
            if v:
                acc[tm] = v
            else:
                acc.pop(tm, None)
    return Polynomial(target, acc, _clean=True)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    fld = f.ring.field
    parts = []
    for m, c in f.sorted_terms():
        c = fld.centered(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
        if not factors:
            body = str(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(c)] + factors)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# text syntax


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*`` with ``*``, ``^`` and parentheses."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
            start = m.start(m.lastindex)
            kind = ("int", "name", "op")[m.lastindex - 1]
            val = m.group(m.lastindex)
            if val == "**":
                val = "^"
            self.tokens.append((kind, val, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial", 0, self.text)
        f = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos, self.text)
        return f

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("name", "int") or (kind == "op" and val == "("):
                acc = acc * self.factor()  # juxtaposition, e.g. "2x" or "x y"
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", pos, self.text)
            e = int(val)
            if e > EXPONENT_CAP:
                raise ExponentOverflowError("exponent exceeds 2^31-1")
            base = base ** e
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring.index:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", pos, self.text)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val2, pos2 = self.take()
            if val2 != ")":
                raise PolynomialSyntaxError("expected ')'", pos2, self.text)
            return inner
        if kind == "op" and val == "-":
            return -self.factor()
        if kind is None:
            raise PolynomialSyntaxError("unexpected end of input", pos, self.text)
        raise PolynomialSyntaxError(f"unexpected {val!r}", pos, self.text)
