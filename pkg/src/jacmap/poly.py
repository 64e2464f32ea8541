"""Exact sparse bivariate polynomials over the rationals.

A :class:`Poly2` is an immutable mapping from monomials ``(ex, ey)`` to
nonzero :class:`fractions.Fraction` coefficients.  Besides ring arithmetic
it answers the structural questions the analyzer needs: total degree and
order, the gap-set, and the six parity predicates.

Degree and order of the zero polynomial are the float sentinels
``NEG_INF`` and ``POS_INF`` so that ordinary comparisons and sums keep
working (``3 < POS_INF + 2 - 1``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, int]
Coeff = Union[int, Fraction]
DegreeValue = Union[int, float]

NEG_INF: float = -math.inf
POS_INF: float = math.inf


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction.

    Floats are rejected: every coefficient must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


@dataclass(frozen=True)
class Parity:
    even: bool
    odd: bool
    x_even: bool
    x_odd: bool
    y_even: bool
    y_odd: bool


class Poly2:
    """Immutable sparse polynomial in ``x`` and ``y`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | Iterable[Tuple[Monomial, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Monomial, Fraction] = {}
        for (ex, ey), c in items:
            ex, ey = int(ex), int(ey)
            if ex < 0 or ey < 0:
                raise ValueError(f"negative exponent in monomial ({ex}, {ey})")
            acc[(ex, ey)] = acc.get((ex, ey), Fraction(0)) + as_fraction(c)
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Poly2":
        # terms must already be free of zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly2":
        return cls._raw({})

    @classmethod
    def const(cls, c: Coeff) -> "Poly2":
        c = as_fraction(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def x(cls) -> "Poly2":
        return cls._raw({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> "Poly2":
        return cls._raw({(0, 1): Fraction(1)})

    @classmethod
    def monomial(cls, ex: int, ey: int, c: Coeff = 1) -> "Poly2":
        return cls({(ex, ey): c})

    @classmethod
    def linear(cls, a: Coeff, b: Coeff, c: Coeff = 0) -> "Poly2":
        """``a*x + b*y + c``."""
        return cls({(1, 0): a, (0, 1): b, (0, 0): c})

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, ex: int, ey: int) -> Fraction:
        return self._terms.get((ex, ey), Fraction(0))

    def sorted_terms(self) -> list[Tuple[Monomial, Fraction]]:
        """Terms in graded-lex order: ascending total degree, then x-power descending."""
        return sorted(self._terms.items(), key=lambda t: (t[0][0] + t[0][1], -t[0][0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == ({(0, 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from jacmap.parse_io import format_poly

        return f"Poly2({format_poly(self)!r})"

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        return Poly2.const(other)

    def __neg__(self) -> "Poly2":
        return Poly2._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "Poly2":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly2._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly2":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly2":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly2":
        return self.mul_trunc(self._coerce(other), None)

    __rmul__ = __mul__

    def _integer_form(self) -> Tuple[Dict[Monomial, int], int]:
        den = 1
        for c in self._terms.values():
            d = c.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
        if den == 1:
            return {m: c.numerator for m, c in self._terms.items()}, 1
        return {m: c.numerator * (den // c.denominator) for m, c in self._terms.items()}, den

    def mul_trunc(self, other: "Poly2", max_degree: int | None) -> "Poly2":
        """Product with every term of total degree above ``max_degree`` dropped."""
        # integer numerators over a common denominator: one normalization per output term
        a, da = self._integer_form()
        b, db = other._integer_form()
        out: Dict[Monomial, int] = {}
        get = out.get
        for (ax, ay), ac in a.items():
            for (bx, by), bc in b.items():
                ex, ey = ax + bx, ay + by
                if max_degree is not None and ex + ey > max_degree:
                    continue
                m = (ex, ey)
                out[m] = get(m, 0) + ac * bc
        den = da * db
        if den == 1:
            return Poly2._raw({m: Fraction(c) for m, c in out.items() if c})
        return Poly2._raw({m: Fraction(c, den) for m, c in out.items() if c})

    def __pow__(self, n: int) -> "Poly2":
        return self.pow_trunc(n, None)

    def pow_trunc(self, n: int, max_degree: int | None) -> "Poly2":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                result = result.mul_trunc(base, max_degree)
            n >>= 1
            if n:
                base = base.mul_trunc(base, max_degree)
        return result

    def scale(self, c: Coeff) -> "Poly2":
        c = as_fraction(c)
        if not c:
            return Poly2.zero()
        return Poly2._raw({m: v * c for m, v in self._terms.items()})

    def truncate(self, max_degree: int) -> "Poly2":
        return Poly2._raw({m: c for m, c in self._terms.items() if m[0] + m[1] <= max_degree})

    def homogeneous_part(self, n: int) -> "Poly2":
        return Poly2._raw({m: c for m, c in self._terms.items() if m[0] + m[1] == n})

    def drop_below(self, n: int) -> "Poly2":
        """Keep only the terms of total degree ``>= n``."""
        return Poly2._raw({m: c for m, c in self._terms.items() if m[0] + m[1] >= n})

    # -- calculus -----------------------------------------------------------
    def partial(self, var: str) -> "Poly2":
        if var == "x":
            return Poly2._raw({(ex - 1, ey): c * ex for (ex, ey), c in self._terms.items() if ex})
        if var == "y":
            return Poly2._raw({(ex, ey - 1): c * ey for (ex, ey), c in self._terms.items() if ey})
        raise ValueError(f"unknown variable {var!r}")

    # -- structure ----------------------------------------------------------
    def degrees(self) -> set[int]:
        """Set of total degrees of the stored monomials."""
        return {ex + ey for ex, ey in self._terms}

    def degree(self) -> DegreeValue:
        return max(self.degrees(), default=NEG_INF)

    def order(self) -> DegreeValue:
        return min(self.degrees(), default=POS_INF)

    def degree_order(self) -> Tuple[DegreeValue, DegreeValue]:
        return self.degree(), self.order()

    def gap_set(self) -> set[int]:
        degs = [ex + ey for ex, ey in self._terms]
        gaps: set[int] = set()
        for i in range(len(degs)):
            for j in range(i + 1, len(degs)):
                gaps.add(abs(degs[i] - degs[j]))
        return gaps

    def parity(self) -> Parity:
        ms = self._terms.keys()
        return Parity(
            even=all((ex + ey) % 2 == 0 for ex, ey in ms),
            odd=all((ex + ey) % 2 == 1 for ex, ey in ms),
            x_even=all(ex % 2 == 0 for ex, _ in ms),
            x_odd=all(ex % 2 == 1 for ex, _ in ms),
            y_even=all(ey % 2 == 0 for _, ey in ms),
            y_odd=all(ey % 2 == 1 for _, ey in ms),
        )

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    # -- evaluation and substitution ---------------------------------------
    def evaluate(self, x, y) -> Fraction:
        x, y = as_fraction(x), as_fraction(y)
        total = Fraction(0)
        xp: Dict[int, Fraction] = {}
        yp: Dict[int, Fraction] = {}
        for (ex, ey), c in self._terms.items():
            if ex not in xp:
                xp[ex] = x**ex
            if ey not in yp:
                yp[ey] = y**ey
            total += c * xp[ex] * yp[ey]
        return total

    def evaluate_float(self, x: float, y: float) -> float:
        return sum(float(c) * x**ex * y**ey for (ex, ey), c in self._terms.items())

    def substitute(self, fx: "Poly2", fy: "Poly2", max_degree: int | None = None) -> "Poly2":
        """``self(fx, fy)``, optionally truncated above ``max_degree``.

        Horner in ``fx`` over coefficient polynomials in ``fy``.
        """
        if not self._terms:
            return Poly2.zero()
        by_ex: Dict[int, Dict[int, Fraction]] = {}
        for (ex, ey), c in self._terms.items():
            by_ex.setdefault(ex, {})[ey] = c
        max_ey = max(ey for _, ey in self._terms)
        ypow = [Poly2.const(1)]
        for _ in range(max_ey):
            ypow.append(ypow[-1].mul_trunc(fy, max_degree))

        def column(ex: int) -> Poly2:
            acc: Dict[Monomial, Fraction] = {}
            for ey, c in by_ex.get(ex, {}).items():
                for m, v in ypow[ey]._terms.items():
                    acc[m] = acc.get(m, 0) + c * v
            return Poly2._raw({m: v for m, v in acc.items() if v})

        top = max(by_ex)
        result = column(top)
        for ex in range(top - 1, -1, -1):
            result = result.mul_trunc(fx, max_degree) + column(ex)
        return result

    def compose_linear(self, m: Sequence[Sequence[Coeff]]) -> "Poly2":
        """Substitute ``(x, y) := m @ (x, y)``."""
        (a, b), (c, d) = m
        return self.substitute(Poly2.linear(a, b), Poly2.linear(c, d))


@dataclass(frozen=True)
class PolyMap:
    """A planar polynomial map ``(x, y) -> (P(x, y), Q(x, y))``."""

    P: Poly2
    Q: Poly2

    @classmethod
    def identity(cls) -> "PolyMap":
        return cls(Poly2.x(), Poly2.y())

    def __iter__(self):
        yield self.P
        yield self.Q

    def compose(self, inner: "PolyMap", max_degree: int | None = None) -> "PolyMap":
        """``self o inner``, i.e. ``(P(inner), Q(inner))``."""
        return PolyMap(
            self.P.substitute(inner.P, inner.Q, max_degree),
            self.Q.substitute(inner.P, inner.Q, max_degree),
        )

    def __call__(self, x, y) -> Tuple[Fraction, Fraction]:
        return self.P.evaluate(x, y), self.Q.evaluate(x, y)

    def degree(self) -> DegreeValue:
        return max(self.P.degree(), self.Q.degree())

    def truncate(self, max_degree: int) -> "PolyMap":
        return PolyMap(self.P.truncate(max_degree), self.Q.truncate(max_degree))

    def is_identity(self) -> bool:
        return self.P == Poly2.x() and self.Q == Poly2.y()

    def __str__(self) -> str:
        from jacmap.parse_io import format_map

        return format_map(self)


def partial(p: Poly2, var: str) -> Poly2:
    return p.partial(var)


def gap_set(p: Poly2) -> set[int]:
    return p.gap_set()


def degree_order(p: Poly2) -> Tuple[DegreeValue, DegreeValue]:
    return p.degree_order()


def parity(p: Poly2) -> Parity:
    return p.parity()


def evaluate(p: Poly2, point: Tuple[Coeff, Coeff]) -> Fraction:
    return p.evaluate(*point)


def compose_linear(p: Poly2, m: Sequence[Sequence[Coeff]]) -> Poly2:
    return p.compose_linear(m)


def arith(p: Poly2, q: Poly2, kind: str) -> Poly2:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown operation {kind!r}")


X = Poly2.x()
Y = Poly2.y()
