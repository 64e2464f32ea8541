"""Jacobian-map classification and the sufficient conditions for invertibility.

The pipeline for a map ``Phi = (P, Q)``:

1. ``jacobian_det`` / ``classify_jacobian``: is ``det J_Phi`` a nonzero constant?
2. ``split_linear``: ``P = P(0) + a x + b y + p``, ``Q = Q(0) + c x + d y + q``
   with ``o(p), o(q) > 1``.
3. ``normalize``: compose with the inverse of the linear part so the linear
   part becomes the identity; compute the trace part ``T*`` and the
   determinant part ``D*`` of the nonlinear jacobian contribution.
4. ``check_conditions``: degree/order, parity and gap-set tests on ``p, q``.
5. ``certify``: bundle everything into a :class:`Certificate`.

All arithmetic is exact.  Any true condition forces ``T* == 0`` and
``D* == 0``; with ``T* == 0`` the field ``-Phi*`` has trace ``-2`` and
determinant ``1`` everywhere, which is what makes ``Phi`` injective.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from jacmap.poly import Poly2, PolyMap

# fixed layout for the heuristic sign check of T*
SAMPLE_GRID = tuple(Fraction(k, 2) for k in range(-10, 11))


class SingularLinearPart(ValueError):
    pass


class ConstantTermPresent(ValueError):
    pass


class Verdict(enum.Enum):
    INVERTIBLE = "invertible"
    UNDECIDED = "jacobian_but_undecided"
    NOT_JACOBIAN = "not_jacobian"
    MALFORMED_ORDER = "malformed_order"


@dataclass(frozen=True)
class JacobianReport:
    det_poly: Poly2
    is_jacobian: bool
    det_value: Optional[Fraction]


@dataclass(frozen=True)
class LinearSplit:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    p: Poly2
    q: Poly2
    constants: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    @property
    def has_constant_term(self) -> Tuple[bool, bool]:
        return self.constants[0] != 0, self.constants[1] != 0

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def reconstruct(self) -> PolyMap:
        P = Poly2.linear(self.a, self.b, self.constants[0]) + self.p
        Q = Poly2.linear(self.c, self.d, self.constants[1]) + self.q
        return PolyMap(P, Q)


@dataclass(frozen=True)
class NormalizedMap:
    """``Phi*(u, v) = (u + pstar, v + qstar)``; ``u, v`` are stored as ``x, y``."""

    pstar: Poly2
    qstar: Poly2
    Tstar: Poly2
    Dstar: Poly2
    det_linear: Fraction = Fraction(1)

    @classmethod
    def from_parts(cls, pstar: Poly2, qstar: Poly2, det_linear: Fraction = Fraction(1)) -> "NormalizedMap":
        T, D = trace_det_parts(pstar, qstar)
        return cls(pstar, qstar, T, D, Fraction(det_linear))

    def as_map(self) -> PolyMap:
        return PolyMap(Poly2.x() + self.pstar, Poly2.y() + self.qstar)


@dataclass(frozen=True)
class LemmaMechanism:
    T_zero: bool
    D_zero: bool
    trace_sample_ok: bool


@dataclass(frozen=True)
class ConditionFlags:
    t2_i: bool
    t2_ii: bool
    t2_iii: bool
    t2_iv: bool
    corollary_homogeneous: bool
    t3_i: Optional[bool]
    t3_ii: Optional[bool]
    mechanism_T_zero: bool
    mechanism_D_zero: bool

    def theorem2_list(self) -> List[str]:
        names = ("i", "ii", "iii", "iv")
        vals = (self.t2_i, self.t2_ii, self.t2_iii, self.t2_iv)
        return [n for n, v in zip(names, vals) if v]

    def theorem4_list(self) -> List[str]:
        return [n for n, v in (("i", self.t3_i), ("ii", self.t3_ii)) if v]

    def any_condition(self) -> bool:
        return bool(self.theorem2_list() or self.theorem4_list() or self.corollary_homogeneous)


@dataclass(frozen=True)
class Certificate:
    map: PolyMap
    report: JacobianReport
    split: LinearSplit
    normalized: Optional[NormalizedMap]
    flags: Optional[ConditionFlags]
    verdict: Verdict
    via: Tuple[str, ...] = ()
    mechanism: str = ""
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def invertible(self) -> bool:
        return self.verdict is Verdict.INVERTIBLE


def jacobian_det(m: PolyMap) -> Poly2:
    P, Q = m
    return P.partial("x") * Q.partial("y") - P.partial("y") * Q.partial("x")


def classify_jacobian(m: PolyMap) -> JacobianReport:
    det = jacobian_det(m)
    ok = det.is_constant() and not det.is_zero()
    return JacobianReport(det, ok, det.constant_term() if ok else None)


def split_linear(m: PolyMap) -> LinearSplit:
    P, Q = m
    return LinearSplit(
        a=P.coeff(1, 0),
        b=P.coeff(0, 1),
        c=Q.coeff(1, 0),
        d=Q.coeff(0, 1),
        p=P.drop_below(2),
        q=Q.drop_below(2),
        constants=(P.constant_term(), Q.constant_term()),
    )


def trace_det_parts(p: Poly2, q: Poly2) -> Tuple[Poly2, Poly2]:
    """``T = p_x + q_y`` and ``D = p_x q_y - p_y q_x``."""
    px, py, qx, qy = p.partial("x"), p.partial("y"), q.partial("x"), q.partial("y")
    return px + qy, px * qy - py * qx


def normalize(m: PolyMap, translate: bool = False) -> NormalizedMap:
    """Compose ``m`` with the inverse of its linear part.

    Constant terms raise :class:`ConstantTermPresent` unless ``translate``
    is set, in which case ``m - m(0)`` is normalized instead.
    """
    s = split_linear(m)
    if any(s.has_constant_term) and not translate:
        raise ConstantTermPresent("map has constant terms; translate first")
    det = s.det
    if det == 0:
        raise SingularLinearPart("linear part is singular (ad - bc = 0)")
    inv = ((s.d / det, -s.b / det), (-s.c / det, s.a / det))
    pstar = s.p.compose_linear(inv)
    qstar = s.q.compose_linear(inv)
    return NormalizedMap.from_parts(pstar, qstar, det)


def gap_condition(p: Poly2, q: Poly2) -> bool:
    """True iff ``d(M) - 1`` is not a gap of ``q`` for every monomial ``M`` of ``p``."""
    gaps = q.gap_set()
    return all(ex + ey - 1 not in gaps for ex, ey in p.terms)


def symmetric_gap_condition(p: Poly2, q: Poly2) -> bool:
    return gap_condition(p, q) and gap_condition(q, p)


def _homogeneous_same_degree(p: Poly2, q: Poly2) -> bool:
    # the zero polynomial is homogeneous of every degree
    degs = p.degrees() | q.degrees()
    return len(degs) == 1 and min(degs) > 1 and p.is_homogeneous() and q.is_homogeneous()


def lemma_mechanism(n: NormalizedMap) -> LemmaMechanism:
    T = n.Tstar
    sample_ok = all(T.evaluate(u, v) >= 0 for u in SAMPLE_GRID for v in SAMPLE_GRID)
    return LemmaMechanism(T.is_zero(), n.Dstar.is_zero(), sample_ok)


def check_conditions(m: PolyMap, normalized: Optional[NormalizedMap] = None) -> ConditionFlags:
    s = split_linear(m)
    p, q = s.p, s.q
    dp, op = p.degree_order()
    dq, oq = q.degree_order()
    pp, qp = p.parity(), q.parity()

    t2_i = max(dp, dq) < op + oq - 1
    t2_ii = pp.even and qp.even
    t2_iii = pp.odd and qp.even and gap_condition(p, q)
    t2_iv = symmetric_gap_condition(p, q)
    cor = _homogeneous_same_degree(p, q)

    t3_i = t3_ii = None
    if s.is_identity() and not any(s.has_constant_term):
        t3_i = pp.x_even and qp.x_odd
        t3_ii = pp.y_odd and qp.y_even

    if normalized is None and s.det != 0:
        normalized = normalize(m, translate=True)
    T_zero = normalized is not None and normalized.Tstar.is_zero()
    D_zero = normalized is not None and normalized.Dstar.is_zero()
    return ConditionFlags(t2_i, t2_ii, t2_iii, t2_iv, cor, t3_i, t3_ii, T_zero, D_zero)


def certify(m: PolyMap) -> Certificate:
    report = classify_jacobian(m)
    split = split_linear(m)
    notes: List[str] = []
    if any(split.has_constant_term):
        notes.append("constant terms translated away: analyzed Phi - Phi(0)")

    if not report.is_jacobian:
        flags = check_conditions(m) if split.det != 0 else None
        return Certificate(m, report, split, None, flags, Verdict.NOT_JACOBIAN,
                           mechanism="jacobian determinant is not a nonzero constant",
                           notes=tuple(notes))

    # jacobian => det J at the origin = ad - bc != 0
    norm = normalize(m, translate=True)
    flags = check_conditions(m, norm)
    if split.p.order() <= 1 or split.q.order() <= 1:
        return Certificate(m, report, split, norm, flags, Verdict.MALFORMED_ORDER,
                           notes=tuple(notes))

    if split.p.is_zero() and split.q.is_zero():
        return Certificate(m, report, split, norm, flags, Verdict.INVERTIBLE,
                           via=("linear",), mechanism="linear nonsingular", notes=tuple(notes))

    via = [f"theorem2:{c}" for c in flags.theorem2_list()]
    if flags.corollary_homogeneous:
        via.append("corollary_homogeneous")
    if flags.t3_i is not None:
        via.extend(f"theorem4:{c}" for c in flags.theorem4_list())
    if flags.mechanism_T_zero:
        via.append("lemma:T_zero")

    if via:
        if flags.mechanism_T_zero and flags.mechanism_D_zero:
            mech = "T* == 0 and D* == 0: trace(-J) == -2, det(-J) == 1 everywhere"
        else:
            # any condition implies T* == D* == 0; reaching here is a bug
            raise AssertionError("a sufficient condition holds but T*/D* do not vanish")
        return Certificate(m, report, split, norm, flags, Verdict.INVERTIBLE,
                           via=tuple(via), mechanism=mech, notes=tuple(notes))

    mech = lemma_mechanism(norm)
    if mech.trace_sample_ok:
        notes.append("T* >= 0 on the sample grid (heuristic only, not a proof)")
    return Certificate(m, report, split, norm, flags, Verdict.UNDECIDED,
                       mechanism="no sufficient condition applies", notes=tuple(notes))
