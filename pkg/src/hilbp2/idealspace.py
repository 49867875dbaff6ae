"""Ideals of R = Q[u,v] containing m^N, stored as subspaces of R/m^N.

An :class:`IdealSubspace` holds the reduced row echelon basis of ``I/m^N``
with respect to the graded monomial order of :mod:`hilbp2.truncring`, so two
ideals in the same context are equal exactly when their row matrices are.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import linalg
from .linalg import Matrix
from .truncring import (
    ContextMismatch,
    RingElem,
    TruncRingCtx,
    change_context,
    mult_operator,
    substitute,
)


class NotAnIdeal(ValueError):
    pass


class ContextTooSmall(ValueError):
    def __init__(self, message: str, required_N: int):
        super().__init__(f"{message} (requires N >= {required_N})")
        self.required_N = required_N


@dataclass(frozen=True, eq=False)
class IdealSubspace:
    ctx: TruncRingCtx
    rows: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, ctx: TruncRingCtx, rows: Sequence[Sequence], check: bool = True) -> "IdealSubspace":
        red, piv = linalg.rref(linalg.as_fraction_rows(rows), ctx.dim) if rows else ([], [])
        ideal = cls(ctx, tuple(tuple(r) for r in red), tuple(piv))
        if check and not ideal._closed():
            raise NotAnIdeal("subspace is not closed under multiplication by u and v")
        return ideal

    def _closed(self) -> bool:
        if self.is_unit or not self.rows:
            return True
        for op in _shift_operators(self.ctx):
            for r in self.rows:
                if not linalg.in_span(linalg.matvec(op, r), self.matrix, self.pivots):
                    return False
        return True

    # basic data ----------------------------------------------------------
    @property
    def matrix(self) -> Matrix:
        return [list(r) for r in self.rows]

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def is_unit(self) -> bool:
        return 0 in self.pivots

    @property
    def colength(self) -> int:
        return self.ctx.dim - self.rank

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealSubspace):
            return NotImplemented
        return self.ctx.N == other.ctx.N and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ctx.N, self.rows))

    def __repr__(self) -> str:
        if self.is_unit:
            return f"IdealSubspace(N={self.ctx.N}, unit)"
        return f"IdealSubspace(N={self.ctx.N}, colength={self.colength}, gens={self.generator_strings()})"

    def elements(self) -> list[RingElem]:
        return [RingElem(self.ctx, r) for r in self.rows]

    def generator_strings(self) -> list[str]:
        return [str(e) for e in self.elements()]

    @cached_property
    def complement(self) -> tuple[int, ...]:
        """Basis positions not used as pivots; their monomials span R/I."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.ctx.dim) if i not in piv)

    # membership ----------------------------------------------------------
    def reduce(self, f: RingElem) -> RingElem:
        """Normal form of ``f`` modulo the ideal (supported on the complement)."""
        self._check(f.ctx)
        return RingElem(self.ctx, tuple(linalg.reduce_vector(f.coeffs, self.matrix, self.pivots)))

    def __contains__(self, f: RingElem) -> bool:
        return not self.reduce(f)

    def contains_power_of_max(self, k: int) -> bool:
        """True when m^k is inside the ideal."""
        if k >= self.ctx.N:
            return True
        return all(self.ctx.monomial(a, d - a) in self for d in range(k, self.ctx.N) for a in range(d + 1))

    def _check(self, ctx: TruncRingCtx) -> None:
        if ctx.N != self.ctx.N:
            raise ContextMismatch(f"truncation orders differ: {self.ctx.N} vs {ctx.N}")

    # context changes -------------------------------------------------------
    def extend(self, N: int) -> "IdealSubspace":
        """The same ideal seen in R/m^N for larger N (adds the degrees in between)."""
        if N < self.ctx.N:
            return self.restrict(N)
        ctx = TruncRingCtx(N)
        rows = [change_context(e, ctx).coeffs for e in self.elements()]
        for d in range(self.ctx.N, N):
            rows.extend(ctx.monomial(a, d - a).coeffs for a in range(d + 1))
        return IdealSubspace.from_rows(ctx, rows, check=False)

    def restrict(self, N: int) -> "IdealSubspace":
        """Drop to a smaller truncation; requires m^N to lie in the ideal."""
        if N >= self.ctx.N:
            return self.extend(N)
        if not self.contains_power_of_max(N):
            raise ContextTooSmall(f"ideal does not contain m^{N}", self.ctx.N)
        ctx = TruncRingCtx(N)
        rows = [change_context(e, ctx).coeffs for e in self.elements()]
        return IdealSubspace.from_rows(ctx, [r for r in rows if any(r)], check=False)

    def minimal_context(self) -> "IdealSubspace":
        """Re-express in R/m^c where c = max(colength, 1); every colength-c ideal contains m^c."""
        return self.restrict(max(self.colength, 1)) if not self.is_unit else self


def _shift_operators(ctx: TruncRingCtx) -> tuple[Matrix, Matrix]:
    return _SHIFT_CACHE.setdefault(ctx.N, (mult_operator(ctx.u), mult_operator(ctx.v)))


_SHIFT_CACHE: dict[int, tuple[Matrix, Matrix]] = {}


def from_generators(ctx: TruncRingCtx, gens: Iterable[RingElem]) -> IdealSubspace:
    """Smallest ideal (containing m^N) generated by ``gens``.

    The span is saturated under multiplication by u and v until its rank
    stops growing. A result containing 1 is the unit ideal, reported through
    :attr:`IdealSubspace.is_unit` rather than an exception.
    """
    gens = list(gens)
    for g in gens:
        if g.ctx.N != ctx.N:
            raise ContextMismatch(f"generator lives in N={g.ctx.N}, expected {ctx.N}")
    ops = _shift_operators(ctx)
    basis, piv = linalg.rref([g.coeffs for g in gens], ctx.dim) if gens else ([], [])
    frontier = list(basis)
    while frontier:
        new = []
        for r in frontier:
            for op in ops:
                w = linalg.reduce_vector(linalg.matvec(op, r), basis, piv)
                if any(w):
                    basis, piv = linalg.rref(basis + [w], ctx.dim)
                    new.append(w)
        frontier = new
    return IdealSubspace(ctx, tuple(tuple(r) for r in basis), tuple(piv))


def parse_ideal(N: int, generators: Sequence[str]) -> IdealSubspace:
    ctx = TruncRingCtx(N)
    return from_generators(ctx, [ctx.parse(g) for g in generators])


def is_ideal(ctx: TruncRingCtx, rows: Sequence[Sequence]) -> bool:
    """Whether the span of ``rows`` is closed under multiplication by u and v."""
    if not rows:
        return True
    red, piv = linalg.rref(linalg.as_fraction_rows(rows), ctx.dim)
    for op in _shift_operators(ctx):
        for r in red:
            if not linalg.in_span(linalg.matvec(op, r), red, piv):
                return False
    return True


def colength(ideal: IdealSubspace) -> int:
    return ideal.colength


def _same_ctx(I: IdealSubspace, J: IdealSubspace) -> None:
    if I.ctx.N != J.ctx.N:
        raise ContextMismatch(f"truncation orders differ: {I.ctx.N} vs {J.ctx.N}")


def intersect(I: IdealSubspace, J: IdealSubspace) -> IdealSubspace:
    _same_ctx(I, J)
    rows = linalg.span_intersection(I.matrix, J.matrix, I.ctx.dim)
    return IdealSubspace.from_rows(I.ctx, rows, check=False)


def ideal_sum(I: IdealSubspace, J: IdealSubspace) -> IdealSubspace:
    _same_ctx(I, J)
    return IdealSubspace.from_rows(I.ctx, I.matrix + J.matrix, check=False)


def contains(I: IdealSubspace, J: IdealSubspace) -> bool:
    """Whether J is a subset of I."""
    _same_ctx(I, J)
    return all(linalg.in_span(r, I.matrix, I.pivots) for r in J.rows)


def socle(I: IdealSubspace) -> list[RingElem]:
    """Basis of {f mod I : u f, v f in I}, as representatives on the complement."""
    if I.is_unit:
        raise ValueError("the unit ideal has no socle")
    comp = I.complement
    ctx = I.ctx
    # conditions: for each operator, the normal form of op(e_j) for j in comp
    cond_rows: list[list[Fraction]] = []
    for op in _shift_operators(ctx):
        images = []
        for j in comp:
            col = [op[i][j] for i in range(ctx.dim)]
            images.append(linalg.reduce_vector(col, I.matrix, I.pivots))
        for i in comp:
            cond_rows.append([img[i] for img in images])
    kernel = linalg.nullspace(cond_rows, len(comp))
    out = []
    for k in kernel:
        coeffs = [Fraction(0)] * ctx.dim
        for pos, c in zip(comp, k):
            coeffs[pos] = c
        out.append(RingElem(ctx, tuple(coeffs)))
    return out


def socle_dimension(I: IdealSubspace) -> int:
    return len(socle(I))


def in_socle(I: IdealSubspace, f: RingElem) -> bool:
    """Whether u*f and v*f both lie in I."""
    ctx = I.ctx
    return (ctx.u * f) in I and (ctx.v * f) in I


def min_generators(I: IdealSubspace) -> int:
    """dim I/mI.

    Computed one truncation order higher, where m*I is no longer cut off by
    the truncation: in R/m^(N+1), I is spanned by its rows plus the degree-N
    monomials and m*I contains m^(N+1) = 0.
    """
    if I.is_unit:
        return 1
    big = I.extend(I.ctx.N + 1)
    ops = _shift_operators(big.ctx)
    m_rows = [linalg.matvec(op, r) for op in ops for r in big.rows]
    return big.rank - linalg.rank(m_rows) if m_rows else big.rank


def max_ideal_power(ctx: TruncRingCtx, k: int) -> IdealSubspace:
    """m^k as an ideal of R/m^N."""
    rows = [ctx.monomial(a, d - a).coeffs for d in range(k, ctx.N) for a in range(d + 1)]
    return IdealSubspace.from_rows(ctx, rows, check=False)


def theta(ctx: TruncRingCtx) -> IdealSubspace:
    """The square of the maximal ideal, the fat point of length 3."""
    if ctx.N < 3:
        raise ContextTooSmall("m^2 needs room for its degree-2 generators", 3)
    return max_ideal_power(ctx, 2)


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def staircase(partition: Sequence[int]) -> list[tuple[int, int]]:
    """Monomials u^a v^b outside the monomial ideal of a partition (row b has length part_b)."""
    return [(a, b) for b, part in enumerate(partition) for a in range(part)]


def monomial_ideal(ctx: TruncRingCtx, partition: Sequence[int]) -> IdealSubspace:
    stairs = set(staircase(partition))
    if any(a + b >= ctx.N for a, b in stairs):
        raise ContextTooSmall("staircase does not fit", max(a + b for a, b in stairs) + 1)
    rows = [ctx.monomial(a, b).coeffs for (a, b) in ctx.basis if (a, b) not in stairs]
    return IdealSubspace.from_rows(ctx, rows, check=False)


def enumerate_monomial_ideals(n: int, ctx: TruncRingCtx | None = None) -> list[IdealSubspace]:
    """All monomial ideals of colength n, one per partition of n."""
    if n < 1:
        raise ValueError("colength must be positive")
    ctx = ctx or TruncRingCtx(n)
    if ctx.N < n:
        raise ContextTooSmall(f"monomial ideals of colength {n}", n)
    return [monomial_ideal(ctx, p) for p in partitions(n)]


def transform(I: IdealSubspace, u_image: RingElem, v_image: RingElem) -> IdealSubspace:
    """Image of the ideal under the local coordinate change u -> u_image, v -> v_image."""
    gens = [substitute(e, u_image, v_image) for e in I.elements()]
    return IdealSubspace.from_rows(I.ctx, [g.coeffs for g in gens], check=False)
