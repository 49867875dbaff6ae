from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hilbp2.polyparse import PolynomialSyntaxError
from hilbp2.truncring import (
    ContextMismatch,
    TruncRingCtx,
    apply_operator,
    monomial_basis,
    mult_operator,
    multiply,
    substitute,
)
from hilbp2 import linalg

from strategies import ring_elems

U, V = sympy.symbols("u v")
CTX = TruncRingCtx(4)


def _truncated_product(f, g):
    """Oracle: multiply as sympy polynomials, then drop total degree >= N."""
    N = f.ctx.N
    expr = sympy.expand(sympy.sympify(str(f), locals={"u": U, "v": V}) * sympy.sympify(str(g), locals={"u": U, "v": V}))
    poly = sympy.Poly(expr, U, V)
    return {(a, b): Fraction(str(c)) for (a, b), c in poly.terms() if a + b < N and c != 0}


def test_basis_order_and_dimension():
    assert monomial_basis(3) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    for N in range(1, 9):
        assert TruncRingCtx(N).dim == N * (N + 1) // 2 == len(monomial_basis(N))


def test_multiply_examples():
    c3 = TruncRingCtx(3)
    assert str(multiply(c3.u, c3.v)) == "u*v"
    c2 = TruncRingCtx(2)
    assert not multiply(c2.parse("u + v"), c2.u)
    assert multiply(c3.parse("1 + u"), c3.parse("1 + v")) == c3.parse("1 + u + v + u*v")


def test_mult_operator_examples():
    c2 = TruncRingCtx(2)
    M = mult_operator(c2.u)
    # columns: 1 -> u, u -> 0, v -> 0
    assert [[M[i][j] for i in range(3)] for j in range(3)] == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    assert linalg.matmul(M, M) == [[0] * 3 for _ in range(3)]
    for N in (1, 3, 5):
        ctx = TruncRingCtx(N)
        assert mult_operator(ctx.one()) == linalg.identity(ctx.dim)


@given(ring_elems(CTX), ring_elems(CTX))
def test_multiply_matches_sympy(f, g):
    assert multiply(f, g).terms() == _truncated_product(f, g)


@given(ring_elems(CTX), ring_elems(CTX), ring_elems(CTX))
def test_ring_axioms(f, g, h):
    assert multiply(f, multiply(g, h)) == multiply(multiply(f, g), h)
    assert multiply(f, g) == multiply(g, f)
    assert multiply(f, g + h) == multiply(f, g) + multiply(f, h)


@given(ring_elems(CTX), ring_elems(CTX))
def test_operator_agrees_with_product(f, g):
    assert apply_operator(mult_operator(g), f) == multiply(g, f)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_u_and_v_are_nilpotent(N):
    ctx = TruncRingCtx(N)
    for g in (ctx.u, ctx.v):
        M = mult_operator(g)
        P = linalg.identity(ctx.dim)
        for _ in range(N):
            P = linalg.matmul(P, M)
        assert all(x == 0 for row in P for x in row)


@given(ring_elems(CTX, min_degree=1))
def test_maximal_ideal_elements_are_nilpotent(g):
    M = mult_operator(g)
    P = linalg.identity(CTX.dim)
    for _ in range(CTX.N):
        P = linalg.matmul(P, M)
    assert all(x == 0 for row in P for x in row)


def test_context_mismatch_is_an_error():
    with pytest.raises(ContextMismatch):
        multiply(TruncRingCtx(2).u, TruncRingCtx(3).u)


@pytest.mark.parametrize("text", ["-3/2*u^2*v + 1/3", "u*v - v^2 + 7", "0", "  u  +  v "])
def test_parse_format_roundtrip(text):
    f = CTX.parse(text)
    assert CTX.parse(str(f)) == f


@pytest.mark.parametrize("bad", ["u^", "u**2", "2x", "u^-1", "(u+v)"])
def test_parse_rejects_bad_input(bad):
    with pytest.raises(PolynomialSyntaxError):
        CTX.parse(bad)


@given(ring_elems(CTX), st.integers(-3, 3), st.integers(-3, 3))
def test_substitute_matches_sympy(f, a, b):
    u_img = CTX.from_terms({(1, 0): 1, (0, 2): a})
    v_img = CTX.from_terms({(0, 1): 1, (1, 1): b})
    got = substitute(f, u_img, v_img)
    expr = sympy.sympify(str(f), locals={"u": U, "v": V}).subs({U: U + a * V**2, V: V + b * U * V}, simultaneous=True)
    poly = sympy.Poly(sympy.expand(expr), U, V)
    want = {(i, j): Fraction(str(c)) for (i, j), c in poly.terms() if i + j < CTX.N and c != 0}
    assert got.terms() == want
