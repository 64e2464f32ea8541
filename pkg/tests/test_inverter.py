import pytest

from jacmap.analyzer import Verdict, certify, classify_jacobian
from jacmap.inverter import CapExceeded, NotJacobian, formal_inverse, verify_inverse
from jacmap.oracle import gen_meisters, paper_catalog, random_corpus
from jacmap.parse_io import parse_map
from jacmap.poly import PolyMap, X, Y

CUBIC = paper_catalog()[-1].map


def test_shear_inverse():
    res = formal_inverse(parse_map("(x + y^3, y)"))
    assert res.inverse == PolyMap(X - Y**3, Y)
    assert res.truncation_degree_used == 3
    assert res.verified


def test_identity_inverse():
    res = formal_inverse(PolyMap.identity())
    assert res.inverse.is_identity() and res.verified


def test_meisters_inverse():
    res = formal_inverse(gen_meisters(1, 0, 0, 1, 1, 1, 1))
    w2 = (Y - X) ** 2
    assert res.inverse == PolyMap(X - w2, Y - w2)
    assert res.verified


def test_verify_inverse_examples():
    m = parse_map("(x + y^3, y)")
    assert verify_inverse(m, parse_map("(x - y^3, y)"))
    assert not verify_inverse(m, parse_map("(x - y^3, y + x)"))
    res = formal_inverse(CUBIC)
    assert verify_inverse(CUBIC, res.inverse)


def test_inverse_with_constants():
    m = parse_map("(3 + x + y^2, -1 + 2*y)")
    res = formal_inverse(m)
    assert res.verified and verify_inverse(m, res.inverse)


def test_not_jacobian():
    with pytest.raises(NotJacobian):
        formal_inverse(parse_map("(x^2, y)"))


def test_cap_exceeded():
    # starting truncation is deg = 6, above the cap
    m = parse_map("(x + y^2, y + (x + y^2)^3)")
    with pytest.raises(CapExceeded):
        formal_inverse(m, cap=2)
    assert formal_inverse(m).verified


@pytest.mark.parametrize("m", random_corpus(40, seed=5))
def test_corpus_inverse_properties(m):
    res = formal_inverse(m)
    assert res.verified
    # observed for planar jacobian maps, not a claim being certified
    assert res.inverse.degree() <= m.degree()
    det = classify_jacobian(m).det_value
    assert classify_jacobian(res.inverse).det_value == 1 / det


def test_invertible_verdicts_invert():
    for m in random_corpus(40, seed=6):
        if certify(m).verdict is Verdict.INVERTIBLE:
            assert formal_inverse(m).verified
