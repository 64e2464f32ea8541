"""Polynomial inverses of jacobian maps.

Writing ``Phi = A + H`` (linear part ``A``, nonlinear part ``H``), an inverse
``Psi`` solves ``Psi = A^-1 (id - H(Psi))``.  Iterating this on maps truncated
at degree ``N`` fixes one more homogeneous degree per pass, so it settles in
at most ``N`` passes.  The truncated fixed point is then checked by exact,
untruncated composition in both orders; if that fails ``N`` is doubled.
"""
from __future__ import annotations

from dataclasses import dataclass

from jacmap.analyzer import classify_jacobian, split_linear
from jacmap.poly import Poly2, PolyMap


class NotJacobian(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


DEFAULT_CAP = 64


@dataclass(frozen=True)
class InverseResult:
    inverse: PolyMap
    truncation_degree_used: int
    verified: bool


def verify_inverse(m: PolyMap, candidate: PolyMap) -> bool:
    return m.compose(candidate).is_identity() and candidate.compose(m).is_identity()


def _fixed_point(m: PolyMap, N: int) -> PolyMap:
    s = split_linear(m)
    det = s.det
    ia, ib, ic, id_ = s.d / det, -s.b / det, -s.c / det, s.a / det
    u, v = Poly2.x(), Poly2.y()
    H = PolyMap(s.p, s.q)
    psi = PolyMap(u.scale(ia) + v.scale(ib), u.scale(ic) + v.scale(id_))
    for _ in range(N + 1):
        h = H.compose(psi, max_degree=N)
        ru, rv = u - h.P, v - h.Q
        nxt = PolyMap(ru.scale(ia) + rv.scale(ib), ru.scale(ic) + rv.scale(id_))
        if nxt == psi:
            break
        psi = nxt
    return psi


def formal_inverse(m: PolyMap, cap: int = DEFAULT_CAP) -> InverseResult:
    """Compute and exactly verify the polynomial inverse of a jacobian map.

    Raises :class:`NotJacobian` if ``det J`` is not a nonzero constant and
    :class:`CapExceeded` if no inverse of degree ``<= cap`` is found.
    """
    if not classify_jacobian(m).is_jacobian:
        raise NotJacobian("map is not a jacobian map")
    s = split_linear(m)
    # Phi = shift o Phi0 with Phi0(0) = 0, so Psi = Psi0 o unshift
    c0, c1 = s.constants
    unshift = PolyMap(Poly2.x() - c0, Poly2.y() - c1)
    m0 = PolyMap(m.P - c0, m.Q - c1)
    N = max(int(m.degree()), 1)
    if N > cap:
        raise CapExceeded(f"map degree {N} already exceeds cap {cap}")
    while True:
        psi = _fixed_point(m0, N)
        if c0 or c1:
            psi = psi.compose(unshift)
        if verify_inverse(m, psi):
            return InverseResult(psi, N, True)
        if N >= cap:
            raise CapExceeded(f"no polynomial inverse of degree <= {cap}")
        N = min(2 * N, cap)
