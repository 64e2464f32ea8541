"""Independent evidence and test corpora.

``grid_injectivity`` looks for exact collisions ``Phi(a) == Phi(b)`` on a
rational grid.  It can refute injectivity but never prove it.

The generators produce jacobian maps by construction: the Meisters family
and compositions of elementary maps (shears ``(x + f(y), y)``,
``(x, y + g(x))`` and invertible linear maps).
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from jacmap.analyzer import Verdict, certify, gap_condition
from jacmap.parse_io import parse_map
from jacmap.poly import Poly2, PolyMap, as_fraction

Point = Tuple[Fraction, Fraction]


class ParameterViolation(ValueError):
    pass


class SingularLinear(ValueError):
    pass


@dataclass
class CollisionReport:
    tested_pairs: int
    collisions: List[Tuple[Point, Point]]
    note: str = "finite grid: a collision refutes injectivity, its absence proves nothing"

    @property
    def injective_on_grid(self) -> bool:
        return not self.collisions


def rational_grid(lo, hi, n: int) -> List[Point]:
    lo, hi = as_fraction(lo), as_fraction(hi)
    axis = [lo + (hi - lo) * Fraction(i, n - 1) for i in range(n)]
    return [(a, b) for a in axis for b in axis]


def grid_injectivity(m: PolyMap, region=(-2, 2), n: int = 11) -> CollisionReport:
    if n < 2:
        raise ValueError("need at least 2 points per axis")
    pts = rational_grid(region[0], region[1], n)
    images: Dict[Point, List[Point]] = defaultdict(list)
    for pt in pts:
        images[m(*pt)].append(pt)
    collisions = []
    for group in images.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                collisions.append((group[i], group[j]))
    k = len(pts)
    return CollisionReport(k * (k - 1) // 2, collisions)


# -- generators ----------------------------------------------------------------

def gen_meisters(a, b, c, d, mu, alpha, beta) -> PolyMap:
    """``(ax + by + mu(alpha a + beta b) w^2, cx + dy + mu(alpha c + beta d) w^2)``,
    ``w = alpha y - beta x``."""
    a, b, c, d, mu, alpha, beta = map(as_fraction, (a, b, c, d, mu, alpha, beta))
    if mu == 0:
        raise ParameterViolation("mu must be nonzero")
    if alpha == 0 and beta == 0:
        raise ParameterViolation("(alpha, beta) must not be (0, 0)")
    if a * d - b * c == 0:
        raise ParameterViolation("ad - bc must be nonzero")
    w2 = Poly2.linear(-beta, alpha) ** 2
    P = Poly2.linear(a, b) + w2.scale(mu * (alpha * a + beta * b))
    Q = Poly2.linear(c, d) + w2.scale(mu * (alpha * c + beta * d))
    return PolyMap(P, Q)


@dataclass(frozen=True)
class AddToX:
    """``(X, Y) -> (X + f(Y), Y)``."""
    f: Poly2


@dataclass(frozen=True)
class AddToY:
    """``(X, Y) -> (X, Y + g(X))``."""
    g: Poly2


@dataclass(frozen=True)
class Linear:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction


Step = Union[AddToX, AddToY, Linear]


def apply_step(m: PolyMap, step: Step) -> PolyMap:
    X, Y = m
    if isinstance(step, AddToX):
        if any(ex for ex, _ in step.f.terms):
            raise ValueError("AddToX needs a polynomial in y only")
        return PolyMap(X + step.f.substitute(X, Y), Y)
    if isinstance(step, AddToY):
        if any(ey for _, ey in step.g.terms):
            raise ValueError("AddToY needs a polynomial in x only")
        return PolyMap(X, Y + step.g.substitute(X, Y))
    if isinstance(step, Linear):
        a, b, c, d = map(as_fraction, (step.a, step.b, step.c, step.d))
        if a * d - b * c == 0:
            raise SingularLinear("linear step is singular")
        return PolyMap(X.scale(a) + Y.scale(b), X.scale(c) + Y.scale(d))
    raise TypeError(f"unknown step {step!r}")


def gen_elementary(steps: Sequence[Step]) -> PolyMap:
    """Apply ``steps`` left to right starting from the identity."""
    m = PolyMap.identity()
    for step in steps:
        m = apply_step(m, step)
    return m


def _rand_coeff(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if c or not nonzero:
            return c


def random_steps(
    rng: random.Random, max_steps: int = 4, max_degree: int = 6, height: int = 8
) -> List[Step]:
    """Random step list whose composition has total degree ``<= max_degree``.

    Composition multiplies degrees, so each shear degree is drawn so the
    running product stays within the bound.
    """
    steps: List[Step] = []
    budget = max_degree  # product of shear degrees so far must divide into this
    for _ in range(rng.randint(1, max_steps)):
        kind = rng.choice(("x", "y", "lin"))
        if kind == "lin" or budget < 2:
            while True:
                a, b, c, d = (_rand_coeff(rng, height) for _ in range(4))
                if a * d - b * c:
                    break
            steps.append(Linear(a, b, c, d))
            continue
        deg = rng.randint(2, budget)
        budget //= deg
        coeffs = {k: _rand_coeff(rng, height) for k in range(1, deg)}
        coeffs[deg] = _rand_coeff(rng, height, nonzero=True)
        if kind == "x":
            steps.append(AddToX(Poly2({(0, k): c for k, c in coeffs.items()})))
        else:
            steps.append(AddToY(Poly2({(k, 0): c for k, c in coeffs.items()})))
    return steps


def random_corpus(size: int, seed: int = 0, **bounds) -> List[PolyMap]:
    rng = random.Random(seed)
    return [gen_elementary(random_steps(rng, **bounds)) for _ in range(size)]


# -- worked examples -----------------------------------------------------

X5X6_NOTE = (
    "listed as an example of the 'both even' condition, but x^5 has odd degree, "
    "so p and q are not even (t2_ii = false); the map is still certified, by the "
    "degree/order condition, the symmetric gap condition and T* == D* == 0"
)


@dataclass
class CatalogEntry:
    name: str
    map: PolyMap
    expected: Dict[str, object]
    notes: List[str] = field(default_factory=list)


def paper_catalog() -> List[CatalogEntry]:
    return [
        CatalogEntry(
            "meisters",
            gen_meisters(1, 0, 0, 1, 1, 1, 1),
            {"is_jacobian": True, "det_value": Fraction(1), "t2_i": True,
             "mechanism_T_zero": True, "mechanism_D_zero": True, "verdict": Verdict.INVERTIBLE},
        ),
        CatalogEntry(
            "x5x6",
            parse_map("(x + y + x^5 + x^6, y + x^5 + x^6)"),
            {"is_jacobian": True, "det_value": Fraction(1), "t2_ii": False,
             "mechanism_T_zero": True, "mechanism_D_zero": True, "verdict": Verdict.INVERTIBLE},
            [X5X6_NOTE],
        ),
        CatalogEntry(
            "shear-cubic",
            parse_map("(x + y^3, y)"),
            {"is_jacobian": True, "det_value": Fraction(1), "t2_i": True, "t2_iii": True,
             "t2_iv": True, "verdict": Verdict.INVERTIBLE},
        ),
        CatalogEntry(
            "gap-pair",
            parse_map("(x + y^2, x^6 + y^2)"),
            {"gap_PQ": True, "gap_QP": False, "is_jacobian": False, "verdict": Verdict.NOT_JACOBIAN},
        ),
        CatalogEntry(
            "cubic",
            parse_map("(2*x - y + x^3 + x^2*y + (1/3)*x*y^2 + (1/27)*y^3,"
                      " 3*x - 3*y + (12/5)*x^3 + (12/5)*x^2*y + (4/5)*x*y^2 + (4/45)*y^3)"),
            {"is_jacobian": True, "det_value": Fraction(-3), "corollary_homogeneous": True,
             "t2_i": True, "mechanism_T_zero": True, "mechanism_D_zero": True,
             "verdict": Verdict.INVERTIBLE},
        ),
    ]


def observed_facts(entry: CatalogEntry) -> Dict[str, object]:
    cert = certify(entry.map)
    facts: Dict[str, object] = {
        "is_jacobian": cert.report.is_jacobian,
        "det_value": cert.report.det_value,
        "verdict": cert.verdict,
        "gap_PQ": gap_condition(entry.map.P, entry.map.Q),
        "gap_QP": gap_condition(entry.map.Q, entry.map.P),
    }
    if cert.flags is not None:
        f = cert.flags
        facts.update(t2_i=f.t2_i, t2_ii=f.t2_ii, t2_iii=f.t2_iii, t2_iv=f.t2_iv,
                     corollary_homogeneous=f.corollary_homogeneous,
                     mechanism_T_zero=f.mechanism_T_zero, mechanism_D_zero=f.mechanism_D_zero)
    return facts


def check_entry(entry: CatalogEntry) -> List[str]:
    """Mismatches between expected and observed facts (empty when it reproduces)."""
    got = observed_facts(entry)
    return [f"{k}: expected {v!r}, got {got.get(k)!r}"
            for k, v in entry.expected.items() if got.get(k) != v]
