from fractions import Fraction

import pytest

from hilbp2.divisors import (
    B_n,
    ClassMismatch,
    CurveClass,
    D_l,
    DivisorClass,
    beta_l,
    beta_n,
    canonical_class,
    degree1_classes,
    effective_coordinates,
    effective_generators,
    expected_dimension,
    is_effective_curve,
    is_nef,
    line_class,
    moduli_dim_line_class,
    nef_generators,
    pair,
    very_ample_class,
)


@pytest.mark.parametrize("n", [2, 3, 7, 50])
def test_pairing_table(n):
    assert pair(D_l(n), beta_l(n)) == 1
    assert pair(D_l(n), beta_n(n)) == 0
    assert pair(B_n(n), beta_l(n)) == 0
    assert pair(B_n(n), beta_n(n)) == -2
    assert pair(canonical_class(n), line_class(n)) == -3


def test_pairing_is_bilinear():
    n = 4
    D = DivisorClass(n, 3, Fraction(-1, 2))
    c = CurveClass(n, 2, -5)
    assert pair(D, c) == 3 * 2 * 1 + Fraction(-1, 2) * (-5) * (-2)
    assert pair(D + D_l(n), c) == pair(D, c) + pair(D_l(n), c)
    assert pair(D, c + beta_n(n)) == pair(D, c) + pair(D, beta_n(n))


def test_nef_and_effective_generators_are_dual():
    for n in range(2, 9):
        for D in nef_generators(n):
            for c in effective_generators(n):
                assert pair(D, c) >= 0
        zeros = [[pair(D, c) == 0 for c in effective_generators(n)] for D in nef_generators(n)]
        # each nef generator vanishes on exactly one extremal curve
        assert [sum(z) for z in zeros] == [1, 1]


def test_nef_examples():
    assert is_nef(DivisorClass.parse(4, "3*D - 1/2*B"))
    assert not is_nef(DivisorClass.parse(4, "2*D - 1/2*B"))
    assert not is_nef(DivisorClass.parse(4, "B"))
    assert is_nef(very_ample_class(4))


def test_effective_examples():
    assert is_effective_curve(beta_n(3)) and is_effective_curve(line_class(3))
    assert is_effective_curve(beta_l(3))
    assert not is_effective_curve(CurveClass(3, 1, -3))
    assert effective_coordinates(beta_l(5)) == (4, 1)


@pytest.mark.parametrize("n", range(2, 11))
def test_degree_one_classes(n):
    got = degree1_classes(n)
    assert [(c.a, c.b) for c in got] == [(0, 1), (1, -(n - 1))]
    for c in got:
        assert pair(very_ample_class(n), c) == 1


def test_divisor_parse_and_format():
    D = DivisorClass.parse(4, "3*D - 1/2*B")
    assert (D.p, D.q) == (3, Fraction(-1, 2)) and str(D) == "3*D - 1/2*B"
    assert DivisorClass.parse(4, "-B + D") == DivisorClass(4, 1, -1)
    with pytest.raises(ValueError):
        DivisorClass.parse(4, "3*X")


def test_class_mismatch():
    with pytest.raises(ClassMismatch):
        pair(D_l(3), beta_l(4))


@pytest.mark.parametrize("n", [2, 3, 10, 50])
def test_dimensions(n):
    assert expected_dimension(beta_n(n)) == 2 * n - 3
    assert moduli_dim_line_class(n) == (2 * n, 2 * n)


def test_json():
    assert line_class(4).to_json() == {"a": 1, "b": -3}
    assert CurveClass(4, Fraction(1, 2), 0).to_json() == {"a": "1/2", "b": 0}
