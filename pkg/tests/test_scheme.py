import random
from fractions import Fraction

import pytest
import sympy

from hilbp2 import randgen as rg
from hilbp2.idealspace import parse_ideal
from hilbp2.scheme import (
    HomogeneousForm,
    PointedScheme,
    default_chart,
    form_monomials,
    local_expansion,
    local_ideal_of_form,
    make_component,
)

X = sympy.symbols("x0 x1 x2")
U, V = sympy.symbols("u v")


def test_form_monomials_order():
    assert form_monomials(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert form_monomials(2)[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))
    assert len(form_monomials(5)) == 21


def test_form_parse_and_eval():
    f = HomogeneousForm.parse("x0^2 - 3/2*x1*x2")
    assert f.degree == 2 and f((1, 2, 2)) == 1 - 6
    assert HomogeneousForm.parse(str(f)) == f
    with pytest.raises(ValueError):
        HomogeneousForm.parse("x0 + x1^2")


def test_default_chart_takes_largest_coordinate():
    assert default_chart((Fraction(1), Fraction(-3), Fraction(3))) == 1
    assert default_chart((Fraction(0), Fraction(0), Fraction(1))) == 2


def _oracle_expansion(form, comp, N):
    i = comp.chart
    j, k = [x for x in range(3) if x != i]
    pj, pk = comp.affine
    subs = {X[i]: 1, X[j]: pj + U, X[k]: pk + V}
    expr = sympy.expand(sympy.sympify(str(form), locals=dict(zip(("x0", "x1", "x2"), X))).subs(subs))
    poly = sympy.Poly(expr, U, V)
    return {(a, b): Fraction(str(c)) for (a, b), c in poly.terms() if a + b < N and c != 0}


@pytest.mark.parametrize("seed", range(6))
def test_local_expansion_matches_sympy(seed):
    rng = random.Random(seed)
    (pt,) = rg.random_points(rng, 1)
    comp = make_component(pt, parse_ideal(3, ["u^2", "u*v", "v^2"]))
    terms = {e: Fraction(rng.randint(-4, 4)) for e in form_monomials(3)}
    form = HomogeneousForm.from_terms(3, terms)
    assert local_expansion(form, comp, 4).terms() == _oracle_expansion(form, comp, 4)


def test_local_ideal_of_form():
    line = HomogeneousForm.parse("x2")
    c = local_ideal_of_form(line, (0, 1, 0), 3)
    assert c.length == 3 and c.chart == 1 and c.ideal == parse_ideal(3, ["v"])
    with pytest.raises(ValueError):
        local_ideal_of_form(line, (1, 1, 1), 2)
    node = HomogeneousForm.parse("x1*x2")
    with pytest.raises(ValueError):
        local_ideal_of_form(node, (1, 0, 0), 2)


def test_scheme_invariants():
    with pytest.raises(ValueError):
        PointedScheme.reduced([(1, 0, 0), (2, 0, 0)])
    with pytest.raises(ValueError):
        make_component((1, 0, 0), parse_ideal(2, ["1"]))
    with pytest.raises(ValueError):
        make_component((0, 1, 0), chart=0)


@pytest.mark.parametrize("seed", range(5))
def test_json_roundtrip(seed):
    xi = rg.random_scheme(random.Random(seed), 5)
    again = PointedScheme.from_json(xi.to_json())
    assert again == xi and again.to_json() == xi.to_json()
