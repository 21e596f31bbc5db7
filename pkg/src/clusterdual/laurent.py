"""Sparse multivariate Laurent polynomials with arbitrary-precision integer coefficients.

A polynomial is a mapping from exponent tuples (negative entries allowed) to
nonzero Python ints.  Terms are ordered graded-lexicographically: first by
total degree, then lexicographically on the exponent tuple.  Printing and
JSON serialisation list terms from the largest to the smallest.
"""

from __future__ import annotations

import heapq
import json
from typing import Iterable, Iterator, Mapping

Exponent = tuple[int, ...]


class InexactDivisionError(ArithmeticError):
    """The divisor does not divide the dividend in the Laurent ring."""


def _order_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPolynomial:
    """Immutable Laurent polynomial in ``n`` variables ``x1..xn``."""

    __slots__ = ("n", "_terms", "_hash", "_key")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        if n < 0:
            raise ValueError("variable count must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.n = n
        self._terms = clean
        self._hash = None
        self._key = None

    @classmethod
    def _wrap(cls, n: int, terms: dict[Exponent, int]) -> LaurentPolynomial:
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        obj._key = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> LaurentPolynomial:
        return cls._wrap(n, {})

    @classmethod
    def constant(cls, n: int, c: int) -> LaurentPolynomial:
        return cls._wrap(n, {(0,) * n: int(c)} if c else {})

    @classmethod
    def variable(cls, n: int, i: int) -> LaurentPolynomial:
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= n:
            raise IndexError(f"variable index {i} out of range 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._wrap(n, {tuple(e): 1})

    # -- basic protocol ---------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        """Terms in descending canonical order."""
        for e in sorted(self._terms, key=_order_key, reverse=True):
            yield e, self._terms[e]

    def key(self) -> tuple[tuple[Exponent, int], ...]:
        """Canonical hashable form; also a total order usable for sorting."""
        if self._key is None:
            self._key = tuple(self)
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, int):
            return self == LaurentPolynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __lt__(self, other: LaurentPolynomial) -> bool:
        return (len(self), self.key()) < (len(other), other.key())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, e: Exponent) -> int:
        return self._terms.get(tuple(e), 0)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: LaurentPolynomial) -> None:
        if self.n != other.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPolynomial._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial._wrap(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPolynomial:
        return (-self) + other

    def __mul__(self, other) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPolynomial._wrap(self.n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, p: int) -> LaurentPolynomial:
        if p < 0:
            if not self.is_monomial():
                raise ValueError("negative powers are only defined for monomials with unit coefficient")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative powers are only defined for monomials with unit coefficient")
            return LaurentPolynomial._wrap(self.n, {tuple(p * x for x in e): c ** (-p)})
        result = LaurentPolynomial.constant(self.n, 1)
        base = self
        while p:
            if p & 1:
                result = result * base
            p >>= 1
            if p:
                base = base * base
        return result

    def shift(self, e: Exponent) -> LaurentPolynomial:
        """Multiply by the monomial ``x^e``."""
        return LaurentPolynomial._wrap(self.n, {_add_exp(k, e): c for k, c in self._terms.items()})

    def exact_div(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return exact_div(self, other)

    # -- bounding box -----------------------------------------------------

    def min_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("the zero polynomial has no exponent bounding box")
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("the zero polynomial has no exponent bounding box")
        return tuple(max(col) for col in zip(*self._terms))

    def evaluate_at_ones(self) -> int:
        return sum(self._terms.values())

    def has_positive_coefficients(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # -- text / json ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self:
            factors = []
            for i, x in enumerate(e, start=1):
                if x == 1:
                    factors.append(f"x{i}")
                elif x:
                    factors.append(f"x{i}^{x}")
            mono = "*".join(factors)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.n}, {str(self)!r})"

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"e": list(e), "c": str(c)} for e, c in self]}

    @classmethod
    def from_json(cls, data: dict | str) -> LaurentPolynomial:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], [(tuple(t["e"]), int(t["c"])) for t in data["terms"]])


def monomial(e: Exponent, c: int = 1) -> LaurentPolynomial:
    e = tuple(int(x) for x in e)
    return LaurentPolynomial._wrap(len(e), {e: int(c)} if c else {})


def add(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return f + g


def mul(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return f * g


def min_exponents(f: LaurentPolynomial) -> tuple[int, ...]:
    return f.min_exponents()


def max_exponents(f: LaurentPolynomial) -> tuple[int, ...]:
    return f.max_exponents()


def evaluate_at_ones(f: LaurentPolynomial) -> int:
    return f.evaluate_at_ones()


def exact_div(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """Return ``q`` with ``q * g == f``, or raise :class:`InexactDivisionError`.

    The monomial content of ``g`` is split off first; the rest is ordinary
    long division under graded-lex order with a mandatory zero remainder.
    Quotient exponents are confined to the box ``[min f - min g, max f - max g]``,
    which every genuine quotient satisfies, so non-divisible input is
    rejected after finitely many steps.
    """
    f._check(g)
    if not g:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if not f:
        return LaurentPolynomial.zero(f.n)

    content = g.min_exponents()
    neg_content = tuple(-x for x in content)
    if g.is_monomial():
        (eg, cg), = g._terms.items()
        out = {}
        for e, c in f._terms.items():
            qc, rem = divmod(c, cg)
            if rem:
                raise InexactDivisionError(f"coefficient {c} not divisible by {cg}")
            out[_sub_exp(e, eg)] = qc
        return LaurentPolynomial._wrap(f.n, out)

    g = g.shift(neg_content)
    gterms = g._terms
    lead_g = max(gterms, key=_order_key)
    lead_gc = gterms[lead_g]
    lo = _sub_exp(f.min_exponents(), g.min_exponents())
    hi = _sub_exp(f.max_exponents(), g.max_exponents())
    if any(a > b for a, b in zip(lo, hi)):
        raise InexactDivisionError("bounding boxes are incompatible with exact division")

    rem = dict(f._terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, int] = {}
    while rem:
        _, neg_e = heapq.heappop(heap)
        lead = tuple(-x for x in neg_e)
        c = rem.get(lead)
        if c is None:
            continue
        mono = _sub_exp(lead, lead_g)
        if any(m < a or m > b for m, a, b in zip(mono, lo, hi)):
            raise InexactDivisionError(f"quotient term x^{mono} falls outside the admissible box")
        qc, r = divmod(c, lead_gc)
        if r:
            raise InexactDivisionError(f"coefficient {c} not divisible by leading coefficient {lead_gc}")
        quot[mono] = qc
        for e, gc in gterms.items():
            t = _add_exp(e, mono)
            old = rem.get(t)
            if old is None:
                rem[t] = -qc * gc
                heapq.heappush(heap, (-sum(t), tuple(-x for x in t)))
            else:
                new = old - qc * gc
                if new:
                    rem[t] = new
                else:
                    del rem[t]
    return LaurentPolynomial._wrap(f.n, quot).shift(neg_content)
