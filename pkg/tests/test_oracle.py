import random
from fractions import Fraction

import pytest

from jacmap.analyzer import classify_jacobian
from jacmap.oracle import (
    AddToX,
    AddToY,
    Linear,
    ParameterViolation,
    SingularLinear,
    X5X6_NOTE,
    check_entry,
    gen_elementary,
    gen_meisters,
    grid_injectivity,
    paper_catalog,
    random_corpus,
    random_steps,
)
from jacmap.parse_io import parse_map
from jacmap.poly import PolyMap, X, Y


def test_grid_injectivity_examples():
    rep = grid_injectivity(parse_map("(x^2, y)"), (-1, 1), 5)
    assert ((Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0))) in rep.collisions
    assert not rep.injective_on_grid
    for m in (parse_map("(x + y^3, y)"), gen_meisters(1, 0, 0, 1, 1, 1, 1)):
        rep = grid_injectivity(m, (-2, 2), 11)
        assert rep.collisions == []
        assert rep.tested_pairs == 121 * 120 // 2
    with pytest.raises(ValueError):
        grid_injectivity(parse_map("(x, y)"), (-1, 1), 1)


def test_collisions_verify_exactly():
    m = parse_map("(x^2 + y^2, x*y)")
    rep = grid_injectivity(m, (-1, 1), 5)
    assert rep.collisions
    for a, b in rep.collisions:
        assert a != b and m(*a) == m(*b)


def test_gen_meisters_examples():
    assert gen_meisters(1, 0, 0, 1, 1, 1, 1) == PolyMap(X + (Y - X) ** 2, Y + (Y - X) ** 2)
    assert gen_meisters(1, 0, 0, 1, 1, 1, 0) == PolyMap(X + Y**2, Y)
    with pytest.raises(ParameterViolation):
        gen_meisters(1, 0, 0, 1, 0, 1, 1)
    with pytest.raises(ParameterViolation):
        gen_meisters(1, 0, 0, 1, 1, 0, 0)
    with pytest.raises(ParameterViolation):
        gen_meisters(1, 2, 2, 4, 1, 1, 1)


def test_gen_meisters_det_random():
    rng = random.Random(9)
    for _ in range(50):
        while True:
            vals = [Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(7)]
            a, b, c, d, mu, al, be = vals
            if mu and (al or be) and a * d - b * c:
                break
        assert classify_jacobian(gen_meisters(*vals)).det_value == a * d - b * c


def test_gen_elementary_examples():
    assert gen_elementary([AddToX(Y**3)]) == PolyMap(X + Y**3, Y)
    assert gen_elementary([AddToX(Y**2), AddToY(X**2)]) == PolyMap(X + Y**2, Y + (X + Y**2) ** 2)
    assert gen_elementary([Linear(0, 1, 1, 0)]) == PolyMap(Y, X)
    with pytest.raises(SingularLinear):
        gen_elementary([Linear(1, 2, 2, 4)])
    with pytest.raises(ValueError):
        gen_elementary([AddToX(X**2)])
    with pytest.raises(ValueError):
        gen_elementary([AddToY(Y**2)])


@pytest.mark.parametrize("seed", range(60))
def test_random_elementary_is_jacobian(seed):
    steps = random_steps(random.Random(seed))
    m = gen_elementary(steps)
    det = Fraction(1)
    for s in steps:
        if isinstance(s, Linear):
            det *= s.a * s.d - s.b * s.c
    assert m.degree() <= 6
    r = classify_jacobian(m)
    assert r.is_jacobian and r.det_value == det


def test_random_elementary_no_collisions():
    for m in random_corpus(15, seed=2):
        assert grid_injectivity(m, (-2, 2), 11).collisions == []


def test_catalog_reproduces():
    entries = {e.name: e for e in paper_catalog()}
    assert set(entries) == {"meisters", "x5x6", "shear-cubic", "gap-pair", "cubic"}
    for e in entries.values():
        assert check_entry(e) == [], e.name
    assert entries["x5x6"].notes == [X5X6_NOTE]
    assert entries["gap-pair"].expected["gap_PQ"] is True
    assert entries["gap-pair"].expected["gap_QP"] is False


def test_check_entry_reports_mismatch():
    e = paper_catalog()[0]
    e.expected["t2_ii"] = False  # Meisters' nonlinear part is even
    assert check_entry(e) == ["t2_ii: expected False, got True"]
