import random
from math import comb

import pytest

from hilbp2 import randgen as rg
from hilbp2.ampleness import (
    LineFiber,
    PointFiber,
    collinear_support,
    h0_ideal_twist,
    kva_criterion,
    multiples_of,
    phi1_fiber,
    phi_map,
)
from hilbp2.idealspace import parse_ideal
from hilbp2.scheme import HomogeneousForm, PointedScheme, forms_dimension, local_expansion, make_component


def test_h0_examples():
    assert h0_ideal_twist(PointedScheme.reduced([(1, 2, 3)]), 1).dim == 2
    theta = PointedScheme.from_components([make_component((1, 0, 0), parse_ideal(3, ["u^2", "u*v", "v^2"]))])
    V = h0_ideal_twist(theta, 2)
    assert V.dim == 3 and [str(f) for f in V.forms()] == ["x1^2", "x1*x2", "x2^2"]


def test_h0_of_reduced_points_is_vanishing_forms():
    rng = random.Random(4)
    pts = rg.random_points(rng, 4)
    V = h0_ideal_twist(PointedScheme.reduced(pts), 2)
    assert V.dim == 2
    for f in V.forms():
        assert all(f(p) == 0 for p in pts)


@pytest.mark.parametrize("n", range(1, 7))
def test_dimension_laws(n):
    rng = random.Random(n)
    for _ in range(6):
        xi = rg.random_scheme(rng, n)
        assert h0_ideal_twist(xi, n - 1).dim == comb(n + 1, 2) - n
        V = h0_ideal_twist(xi, n)
        assert V.dim == comb(n + 2, 2) - n
        for f in V.forms():
            for c in xi.components:
                assert local_expansion(f, c) in c.ideal


def test_phi_map_examples():
    xi = PointedScheme.reduced([(1, 0, 0), (0, 1, 0)])
    p = phi_map(xi, 1)
    assert p.k == 1 and p.coords == {(2,): 1}  # the line x2


def test_phi2_is_injective_on_samples():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(2, 5)
        a, b = rg.random_scheme(rng, n), rg.random_scheme(rng, n)
        if a != b:
            assert phi_map(a, n) != phi_map(b, n)


def test_phi1_is_constant_on_a_line():
    rng = random.Random(12)
    L = HomogeneousForm.parse("x0 - 2*x1 + x2")
    schemes = [rg.random_collinear_scheme(rng, 4, L) for _ in range(4)]
    assert len({phi_map(s, 3) for s in schemes}) == 1


def test_kva_examples():
    assert kva_criterion(2, 2).status == "pass"
    assert kva_criterion(7, 7).to_json() == {"result": "pass"}
    r = kva_criterion(1, 2)
    assert (r.status, r.d) == ("violation", 1)
    assert kva_criterion(0, 5).status == "inapplicable"
    assert all(kva_criterion(n, n).status == "pass" for n in range(2, 51))
    with pytest.raises(ValueError):
        kva_criterion(-1, 2)


def test_phi1_fiber_examples():
    f = phi1_fiber(PointedScheme.reduced([(1, 0, 0), (0, 1, 0), (1, 1, 0)]))
    assert isinstance(f, LineFiber) and str(f.line) == "x2"
    assert isinstance(phi1_fiber(PointedScheme.reduced([(1, 0, 0), (0, 1, 0), (0, 0, 1)])), PointFiber)
    with pytest.raises(ValueError):
        phi1_fiber(PointedScheme.reduced([(1, 0, 0), (0, 1, 0)]))


def test_phi1_fiber_with_tangent_double_point():
    # double point at (1:0:0) pointing along x2 = 0, plus (0:1:0): collinear
    on = PointedScheme.from_components([make_component((1, 0, 0), parse_ideal(2, ["v"])), make_component((0, 1, 0))])
    off = PointedScheme.from_components([make_component((1, 0, 0), parse_ideal(2, ["u"])), make_component((0, 1, 0))])
    on3 = PointedScheme.from_components(list(on.components) + [make_component((1, 1, 0))])
    off3 = PointedScheme.from_components(list(off.components) + [make_component((1, 1, 0))])
    assert isinstance(phi1_fiber(on3), LineFiber)
    assert isinstance(phi1_fiber(off3), PointFiber)
    assert str(collinear_support([on3])) == "x2"
    assert collinear_support([off3]) is None


def test_collinear_support_examples():
    assert str(collinear_support([PointedScheme.reduced([(0, 1, 0), (0, 0, 1), (0, 1, 1)])])) == "x0"
    assert collinear_support([PointedScheme.reduced([(1, 0, 0), (0, 1, 0), (0, 0, 1)])]) is None
    # a single point lies on many lines
    assert collinear_support([PointedScheme.reduced([(1, 0, 0)])]) is None


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fibre_dichotomy_matches_collinearity(n):
    rng = random.Random(40 + n)
    for _ in range(10):
        xi = rg.random_scheme(rng, n)
        f = phi1_fiber(xi)
        line = collinear_support([xi])
        assert isinstance(f, LineFiber) == (line is not None)
        L = rg.random_line(rng)
        f = phi1_fiber(rg.random_collinear_scheme(rng, n, L))
        assert isinstance(f, LineFiber) and f.line == L.normalized()


def test_multiples_of():
    L = HomogeneousForm.parse("x0 + x1")
    W = multiples_of(L, 3)
    assert W.dim == forms_dimension(2)
    assert W.contains(HomogeneousForm.parse("x0^3 + x0^2*x1"))
    assert not W.contains(HomogeneousForm.parse("x0^3"))
