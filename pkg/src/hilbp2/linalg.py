"""Exact linear algebra over the rationals.

Matrices are plain lists of rows, each row a list of :class:`fractions.Fraction`.
Everything here returns fresh lists; inputs are never mutated.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = list[Fraction]
Matrix = list[Row]


def as_fraction_rows(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the reduced form together with the pivot
    column of each row. Pivots are chosen left to right, so the pivot set is
    the lexicographically first set of independent columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    mi = m[i]
                    m[i] = [a - f * b if b else a for a, b in zip(mi, pr)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def reduce_vector(vec: Sequence[Fraction], basis: Matrix, pivots: Sequence[int]) -> Row:
    """Remainder of ``vec`` after clearing the pivot columns of an RREF basis."""
    out = list(vec)
    for row, c in zip(basis, pivots):
        f = out[c]
        if f != 0:
            out = [a - f * b if b else a for a, b in zip(out, row)]
    return out


def in_span(vec: Sequence[Fraction], basis: Matrix, pivots: Sequence[int]) -> bool:
    return not any(reduce_vector(vec, basis, pivots))


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column, in RREF-dual form."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[free]
        basis.append(x)
    return basis


def span_sum(a: Matrix, b: Matrix, ncols: int) -> Matrix:
    return rref(list(a) + list(b), ncols)[0]


def span_intersection(a: Matrix, b: Matrix, ncols: int) -> Matrix:
    # V ∩ W = ann(ann V + ann W)
    if not a or not b:
        return []
    ann = nullspace(a, ncols) + nullspace(b, ncols)
    if not ann:
        return rref(a, ncols)[0]
    return rref(nullspace(ann, ncols), ncols)[0]


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, col)), Fraction(0)) for col in bt] for r in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> Row:
    return [sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]
