import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hilbp2 import randgen as rg
from hilbp2.idealspace import (
    IdealSubspace,
    NotAnIdeal,
    colength,
    contains,
    enumerate_monomial_ideals,
    from_generators,
    ideal_sum,
    in_socle,
    intersect,
    is_ideal,
    max_ideal_power,
    min_generators,
    monomial_ideal,
    parse_ideal,
    partitions,
    socle,
    staircase,
    theta,
)
from hilbp2.truncring import TruncRingCtx

from strategies import ring_elems

U, V = sympy.symbols("u v")


def _groebner_colength(gens, N):
    """Oracle: count standard monomials of (gens) + m^N from a sympy Groebner basis."""
    polys = [sympy.sympify(g, locals={"u": U, "v": V}) for g in gens]
    polys += [U**a * V**(N - a) for a in range(N + 1)]
    G = sympy.groebner(polys, U, V, order="grevlex")
    if list(G.exprs) == [1]:
        return 0
    leads = [sympy.Poly(g, U, V).monoms(order="grevlex")[0] for g in G.exprs]
    return sum(
        1
        for a in range(N)
        for b in range(N - a)
        if not any(a >= la and b >= lb for la, lb in leads)
    )


def test_from_generators_examples():
    c3 = TruncRingCtx(3)
    assert from_generators(c3, [c3.u, c3.v]).colength == 1
    zero = from_generators(c3, [])
    assert zero.rank == 0 and zero.colength == 6
    assert parse_ideal(3, ["u^2", "u*v", "v^2"]).colength == 3
    I = parse_ideal(3, ["v", "u^3"])
    assert I.colength == 3 and I.complement == (0, 1, 3)  # 1, u, u^2


def test_unit_ideal_is_a_value():
    I = parse_ideal(3, ["1 + u"])
    assert I.is_unit and I.colength == 0


def test_is_ideal_examples():
    c3, c2 = TruncRingCtx(3), TruncRingCtx(2)
    assert is_ideal(c3, [list(c3.monomial(a, 2 - a).coeffs) for a in range(3)])
    assert not is_ideal(c2, [list(c2.one().coeffs)])
    assert not is_ideal(c3, [list(c3.parse("u + v^2").coeffs)])
    with pytest.raises(NotAnIdeal):
        IdealSubspace.from_rows(c3, [list(c3.parse("u + v^2").coeffs)])


def test_colength_examples():
    assert colength(parse_ideal(3, ["u^2", "u*v", "v^2"])) == 3
    for N in (1, 2, 5):
        assert colength(max_ideal_power(TruncRingCtx(N), 1)) == 1
    assert colength(parse_ideal(3, ["v^2", "u*v", "u^3"])) == 4


def test_intersect_and_sum_examples():
    a = parse_ideal(3, ["u", "v^2"])
    b = parse_ideal(3, ["v", "u^2"])
    assert intersect(a, b) == parse_ideal(3, ["u^2", "u*v", "v^2"])
    assert intersect(a, a) == a
    s = ideal_sum(parse_ideal(3, ["u^2", "u*v", "v^2"]), parse_ideal(3, ["v", "u^3"]))
    assert s == parse_ideal(3, ["v", "u^2"]) and s.colength == 2


def test_socle_examples():
    assert len(socle(parse_ideal(3, ["u^2", "u*v", "v^2"]))) == 2
    soc = socle(parse_ideal(3, ["v", "u^2"]))
    assert [str(f) for f in soc] == ["u"]
    assert len(socle(parse_ideal(4, ["u", "v"]))) == 1


def test_min_generators_examples():
    assert min_generators(theta(TruncRingCtx(3))) == 3
    assert min_generators(parse_ideal(3, ["v", "u^3"])) == 2
    assert min_generators(parse_ideal(2, ["u", "v"])) == 2


def test_theta():
    th = theta(TruncRingCtx(3))
    assert th.colength == 3 and len(socle(th)) == 2 and min_generators(th) == 3
    assert th == max_ideal_power(TruncRingCtx(3), 2)


@pytest.mark.parametrize("n,count", [(1, 1), (4, 5), (6, 11), (10, 42)])
def test_monomial_enumeration_counts(n, count):
    ideals = enumerate_monomial_ideals(n)
    assert len(ideals) == count == len(set(ideals))
    assert all(I.colength == n for I in ideals)


@pytest.mark.parametrize("n", range(1, 8))
def test_monomial_socle_is_corner_count(n):
    ctx = TruncRingCtx(n)
    for p in partitions(n):
        I = monomial_ideal(ctx, p)
        assert len(socle(I)) == len(set(p))
        assert I.complement == tuple(sorted(ctx.index[c] for c in staircase(p)))


@given(st.lists(st.sampled_from(["u^2 - v", "u*v + v^2", "u^3", "v^2 - 2*u^2", "u - v^2", "v^3 + u*v"]),
                min_size=1, max_size=3), st.integers(2, 5))
def test_colength_matches_groebner(gens, N):
    assert parse_ideal(N, gens).colength == _groebner_colength(gens, N)


CTX = TruncRingCtx(4)


@given(ring_elems(CTX, 1), ring_elems(CTX, 1), ring_elems(CTX, 2))
def test_from_generators_is_idempotent(f, g, h):
    I = from_generators(CTX, [f, g, h])
    assert from_generators(CTX, I.elements()) == I
    assert is_ideal(CTX, I.rows)


@given(ring_elems(CTX, 1), ring_elems(CTX, 1), ring_elems(CTX, 1))
def test_intersection_sum_dimension_formula(f, g, h):
    I = from_generators(CTX, [f, h])
    J = from_generators(CTX, [g, h])
    inter, tot = intersect(I, J), ideal_sum(I, J)
    assert colength(inter) + colength(tot) == colength(I) + colength(J)
    assert contains(I, inter) and contains(J, inter) and contains(tot, I) and contains(tot, J)
    assert is_ideal(CTX, inter.rows) and is_ideal(CTX, tot.rows)


@given(ring_elems(CTX, 1), ring_elems(CTX, 1))
def test_socle_elements_are_killed_by_m(f, g):
    I = from_generators(CTX, [f, g])
    for s in socle(I):
        assert in_socle(I, s)
        assert I.reduce(s)
        for x in (CTX.u, CTX.v):
            assert (x * s) in I


def test_theta_is_the_only_three_generated_colength_three_ideal():
    rng = random.Random(5)
    ctx = TruncRingCtx(3)
    seen = 0
    for _ in range(200):
        gens = [rg.random_element(rng, ctx, min_degree=1) for _ in range(rng.randint(1, 3))]
        I = from_generators(ctx, gens)
        if I.colength != 3:
            continue
        seen += 1
        assert (min_generators(I) == 3) == (I == theta(ctx))
    for I in enumerate_monomial_ideals(3, ctx):
        assert (min_generators(I) == 3) == (I == theta(ctx))
    assert seen > 0


def test_extend_restrict_roundtrip():
    I = parse_ideal(3, ["v - u^2", "u^3"])
    assert I.extend(6).restrict(3) == I
    assert I.extend(6).colength == I.colength == 3
    assert I.minimal_context().ctx.N == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_two_colength_n_overideals_force_m_n(n):
    """Any eta of colength n+1 with two distinct colength-n overideals contains m^n."""
    ctx = TruncRingCtx(n + 1)
    rng = random.Random(n)
    for p in partitions(n + 1):
        for eta in [monomial_ideal(ctx, p)] + [rg.random_local_ideal(rng, n + 1, n + 1) for _ in range(3)]:
            overs = {
                IdealSubspace.from_rows(ctx, eta.matrix + [list(s.coeffs)])
                for s in socle(eta)
            }
            assert all(J.colength == n for J in overs)
            if len(overs) >= 2:
                assert eta.contains_power_of_max(n)
