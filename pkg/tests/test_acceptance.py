"""Exit criteria: one test per criterion, each printing a PASS/FAIL line."""
import math
import random
import time
from fractions import Fraction

import pytest
import sympy

from jacmap import dynamics
from jacmap.analyzer import Verdict, certify, check_conditions, classify_jacobian, gap_condition, normalize
from jacmap.inverter import formal_inverse
from jacmap.oracle import check_entry, grid_injectivity, paper_catalog, random_corpus
from jacmap.parse_io import format_poly, parse_map, parse_poly
from jacmap.poly import Poly2, PolyMap, X, Y

CATALOG = {e.name: e for e in paper_catalog()}


@pytest.fixture(scope="module")
def corpus():
    return random_corpus(200, seed=2024)


@pytest.fixture(scope="module")
def certified(corpus):
    maps = [e.map for e in CATALOG.values()] + corpus
    return [m for m in maps if certify(m).verdict is Verdict.INVERTIBLE]


def test_01_gap_set(acceptance):
    p = parse_poly("x^3 + y^3 + x^2*y^2 + y^7")
    best = min(_timed(p.gap_set) for _ in range(20))
    ok = p.gap_set() == {0, 1, 3, 4} and best < 1e-3
    acceptance(1, "gap-set reproduction", ok, f"{sorted(p.gap_set())}, {best * 1e6:.1f} us")
    assert ok


def test_02_gap_condition_asymmetry(acceptance):
    P, Q = X + Y**2, X**6 + Y**2
    ok = gap_condition(P, Q) is True and gap_condition(Q, P) is False
    acceptance(2, "gap-condition asymmetry", ok)
    assert ok


def test_03_catalog_facts(acceptance):
    t0 = time.perf_counter()
    problems = []
    m = certify(CATALOG["meisters"].map)
    if not (m.report.is_jacobian and m.report.det_value == 1 and m.flags.t2_i):
        problems.append("a: Meisters instance")
    s = certify(CATALOG["shear-cubic"].map)
    if not (s.flags.t2_i and s.flags.t2_iii and s.flags.t2_iv and s.verdict is Verdict.INVERTIBLE):
        problems.append("b: (x + y^3, y)")
    cubic = CATALOG["cubic"].map
    c = certify(cubic)
    x, y = sympy.symbols("x y")
    P = sympy.sympify(format_poly(cubic.P).replace("^", "**"))
    Q = sympy.sympify(format_poly(cubic.Q).replace("^", "**"))
    sym_det = sympy.expand(sympy.diff(P, x) * sympy.diff(Q, y) - sympy.diff(P, y) * sympy.diff(Q, x))
    if not (c.report.det_value == -3 and sym_det == -3 and c.flags.corollary_homogeneous):
        problems.append("c: linear + cubic map")
    e = CATALOG["x5x6"]
    x5 = certify(e.map)
    if not (x5.report.is_jacobian and x5.normalized.Tstar.is_zero() and x5.normalized.Dstar.is_zero()
            and x5.flags.t2_ii is False and e.notes):
        problems.append("d: x^5 + x^6 map")
    problems += [f"{n}: {p}" for n, ent in CATALOG.items() for p in check_entry(ent)]
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 1.0
    acceptance(3, "worked-example catalog facts", ok, f"{elapsed:.3f} s" + (f"; {problems}" if problems else ""))
    assert ok


def test_04_mechanism_identity(acceptance, corpus):
    t0 = time.perf_counter()
    bad = [m for m in corpus if not _sum_vanishes(m)]
    elapsed = time.perf_counter() - t0
    ok = not bad and len(corpus) == 200 and elapsed < 30
    acceptance(4, "T* + D* == 0 on 200 random jacobian maps", ok, f"{len(bad)} violations, {elapsed:.2f} s")
    assert ok


def test_05_conditions_imply_mechanism(acceptance, corpus):
    hits = violations = 0
    for m in corpus:
        f = check_conditions(m)
        if f.t2_i or f.t2_ii or f.t2_iii or f.t2_iv or f.t3_i or f.t3_ii:
            hits += 1
            if not (f.mechanism_T_zero and f.mechanism_D_zero):
                violations += 1
    ok = violations == 0 and hits > 0
    acceptance(5, "conditions imply T* == D* == 0", ok, f"{hits} maps satisfy a condition, {violations} violations")
    assert ok


def test_06_inverse_roundtrip(acceptance, certified):
    t0 = time.perf_counter()
    results = [formal_inverse(m) for m in certified]
    elapsed = time.perf_counter() - t0
    shear = formal_inverse(parse_map("(x + y^3, y)"))
    ok = (all(r.verified for r in results) and shear.inverse == PolyMap(X - Y**3, Y)
          and shear.verified and elapsed < 10)
    acceptance(6, "inverse round-trip for certified maps", ok, f"{len(results)} maps, {elapsed:.2f} s")
    assert ok


def test_07_injectivity_oracle(acceptance, certified):
    collisions = sum(len(grid_injectivity(m, (-2, 2), 11).collisions) for m in certified)
    square = grid_injectivity(parse_map("(x^2, y)"), (-2, 2), 11)
    ok = collisions == 0 and len(square.collisions) >= 1
    acceptance(7, "grid injectivity oracle", ok,
               f"{collisions} collisions over {len(certified)} certified maps; (x^2, y): {len(square.collisions)}")
    assert ok


def test_08_dynamics_evidence(acceptance):
    t0 = time.perf_counter()
    lines, ok = [], True
    rng = random.Random(8)
    for name, e in CATALOG.items():
        if not classify_jacobian(e.map).is_jacobian:
            continue
        n = normalize(e.map, translate=True)
        if not n.Tstar.is_zero():
            continue
        rep = dynamics.basin_scan(n, -2.0, 2.0, 10, t_max=50.0, tol=1e-6)
        pts = rep.grid + [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(100)]
        eig = dynamics.eigen_certificate_sample(n, pts)
        good = (rep.converged_count == 100 and rep.max_final_norm < 1e-6 and rep.max_final_time <= 50.0
                and all(abs(t + 2.0) <= 1e-9 for t in eig.traces))
        ok &= good
        lines.append(f"{name} {rep.converged_count}/100")
    elapsed = time.perf_counter() - t0
    ok = ok and len(lines) == 4 and elapsed < 30
    acceptance(8, "basin scans converge, trace == -2", ok, f"{', '.join(lines)}; {elapsed:.2f} s")
    assert ok


def test_09_integrator_sanity(acceptance):
    n = normalize(PolyMap.identity())
    worst = 0.0
    for x0 in ((1.0, 0.0), (-2.0, 1.5), (0.5, -0.25)):
        tr = dynamics.integrate(n, x0, t_max=10.0, h0=1e-2, tol=1e-8)
        worst = max(worst, max(math.hypot(u - math.exp(-t) * x0[0], v - math.exp(-t) * x0[1])
                               for t, u, v in tr.samples if t <= 10.0))
        assert tr.final_time == pytest.approx(10.0)
    ok = worst < 1e-6
    acceptance(9, "linear trajectory matches e^-t x0", ok, f"max error {worst:.2e}")
    assert ok


def test_10_parser_roundtrip(acceptance):
    rng = random.Random(10)
    failures = 0
    for _ in range(1000):
        terms = {}
        for _ in range(rng.randint(0, 12)):
            d = rng.randint(0, 10)
            ex = rng.randint(0, d)
            terms[(ex, d - ex)] = Fraction(rng.randint(-100, 100), rng.randint(1, 100))
        p = Poly2(terms)
        failures += parse_poly(format_poly(p)) != p
    ok = failures == 0
    acceptance(10, "parser round-trip on 1000 random polynomials", ok, f"{failures} failures")
    assert ok


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def _sum_vanishes(m):
    n = normalize(m, translate=True)
    return (n.Tstar + n.Dstar).is_zero()
