import math
from fractions import Fraction

import pytest

import smallpoints as sp


def test_local_data_11a1():
    d = sp.analyze([0, -1, 1, -10, -20])
    assert d["conductor"] == "11"
    assert d["primes"] == [
        {"p": 11, "delta": 5, "eta": 1, "m": 5, "c": 5, "kodaira": "I5", "reduction": "split"}
    ]
    assert d["sigma"] == 5.0


def test_height_37a1():
    assert sp.canonical_height([0, 0, 1, -1, 0], (0, 0)) == pytest.approx(0.0255557041, abs=1e-9)


def test_rational_coefficients_and_points():
    h = sp.canonical_height([0, 0, 0, Fraction(-1, 16), Fraction(1, 64)], (Fraction(1, 4), Fraction(1, 8)))
    assert h > 0


def test_torsion():
    t = sp.torsion([0, -1, 1, 0, 0])
    assert t["order"] == 5
    assert t["structure"] == [5]


def test_bounds():
    assert sp.torsion_bound(1, 1.0) == pytest.approx(134861 * math.log(104613))
    assert sp.lang_constant(1, 1.0) == pytest.approx(7.486e-18, rel=1e-3)
    assert sp.tlem_brute(10, 0) == 35
    assert sp.tlem_bound(10, 0) == pytest.approx(36.43, abs=5e-3)


def test_torus():
    assert abs(sp.j_tau(1j) - 1728) < 1e-6
    assert sp.torus_neron(0.5, 0.0, 1j) == pytest.approx(-0.1732867951399863, abs=1e-12)


def test_verify_and_errors():
    text = "11a1 | 0 -1 1 -10 -20 | (5,5)\n37a1 | 0 0 1 -1 0 | (0,0)\n"
    out, passed, failed, skipped = sp.verify(text, seed=1, parallelism=2)
    assert failed == 0 and passed > 0
    assert out == sp.verify(text, seed=1)[0]
    with pytest.raises(sp.SmallpointsError):
        sp.verify("x | 0 0 1 -1 |\n")
    with pytest.raises(ValueError):
        sp.analyze([0, 0, 0, 0, 0])
