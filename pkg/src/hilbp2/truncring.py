"""The truncated local ring Q[u,v]/(u,v)^N with a fixed monomial basis.

Basis monomials ``u^a v^b`` (``a + b < N``) are ordered by total degree and,
within a degree, by descending power of ``u``::

    1, u, v, u^2, u*v, v^2, u^3, ...
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, matvec
from .polyparse import format_polynomial, parse_polynomial

VARIABLES = ("u", "v")


class ContextMismatch(ValueError):
    """Raised when elements from different truncation orders are combined."""


def monomial_basis(N: int) -> tuple[tuple[int, int], ...]:
    return tuple((d - j, j) for d in range(N) for j in range(d + 1))


@dataclass(frozen=True)
class TruncRingCtx:
    N: int
    basis: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)
    index: Mapping[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"truncation order must be positive, got {self.N}")
        basis = monomial_basis(self.N)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "index", {m: i for i, m in enumerate(basis)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_slice(self, d: int) -> range:
        """Basis positions of the monomials of total degree ``d``."""
        start = d * (d + 1) // 2
        return range(start, start + d + 1)

    # constructors --------------------------------------------------------
    def zero(self) -> "RingElem":
        return RingElem(self, (Fraction(0),) * self.dim)

    def one(self) -> "RingElem":
        return self.monomial(0, 0)

    def monomial(self, a: int, b: int, coef=1) -> "RingElem":
        coeffs = [Fraction(0)] * self.dim
        if a + b < self.N:
            coeffs[self.index[(a, b)]] = Fraction(coef)
        return RingElem(self, tuple(coeffs))

    @property
    def u(self) -> "RingElem":
        return self.monomial(1, 0)

    @property
    def v(self) -> "RingElem":
        return self.monomial(0, 1)

    def from_terms(self, terms: Mapping[tuple[int, int], Fraction]) -> "RingElem":
        coeffs = [Fraction(0)] * self.dim
        for (a, b), c in terms.items():
            if a + b < self.N:
                coeffs[self.index[(a, b)]] += Fraction(c)
        return RingElem(self, tuple(coeffs))

    def parse(self, text: str) -> "RingElem":
        return self.from_terms(parse_polynomial(text, VARIABLES))

    def from_vector(self, vec: Sequence) -> "RingElem":
        if len(vec) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(vec)}")
        return RingElem(self, tuple(Fraction(x) for x in vec))


@lru_cache(maxsize=None)
def _product_table(N: int) -> tuple[tuple[int, ...], ...]:
    basis = monomial_basis(N)
    index = {m: i for i, m in enumerate(basis)}
    table = []
    for a1, b1 in basis:
        table.append(tuple(index.get((a1 + a2, b1 + b2), -1) for a2, b2 in basis))
    return tuple(table)


@dataclass(frozen=True)
class RingElem:
    ctx: TruncRingCtx
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.dim:
            raise ValueError("coefficient vector does not match context dimension")

    def _check(self, other: "RingElem") -> None:
        if not isinstance(other, RingElem):
            raise TypeError(f"expected RingElem, got {type(other).__name__}")
        if other.ctx.N != self.ctx.N:
            raise ContextMismatch(f"truncation orders differ: {self.ctx.N} vs {other.ctx.N}")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RingElem":
        return RingElem(self.ctx, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "RingElem":
        c = Fraction(c)
        return RingElem(self.ctx, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, RingElem):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {m: c for m, c in zip(self.ctx.basis, self.coeffs) if c != 0}

    def order(self) -> int | None:
        """Lowest total degree with a nonzero coefficient (None for zero)."""
        for (a, b), c in zip(self.ctx.basis, self.coeffs):
            if c != 0:
                return a + b
        return None

    def __str__(self) -> str:
        return format_polynomial(self.terms(), VARIABLES)


def multiply(f: RingElem, g: RingElem) -> RingElem:
    """Product in R/m^N; monomials of total degree >= N are dropped."""
    f._check(g)
    table = _product_table(f.ctx.N)
    out = [Fraction(0)] * f.ctx.dim
    gnz = [(j, c) for j, c in enumerate(g.coeffs) if c != 0]
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        row = table[i]
        for j, b in gnz:
            k = row[j]
            if k >= 0:
                out[k] += a * b
    return RingElem(f.ctx, tuple(out))


def mult_operator(g: RingElem) -> Matrix:
    """Matrix of ``f -> g*f``; column ``j`` is the expansion of ``g * basis[j]``."""
    ctx = g.ctx
    cols = [multiply(g, ctx.monomial(a, b)).coeffs for a, b in ctx.basis]
    return [[cols[j][i] for j in range(ctx.dim)] for i in range(ctx.dim)]


def apply_operator(op: Matrix, f: RingElem) -> RingElem:
    return RingElem(f.ctx, tuple(matvec(op, f.coeffs)))


def change_context(f: RingElem, ctx: TruncRingCtx) -> RingElem:
    """Re-express ``f`` in another truncation (dropping or zero-padding)."""
    return ctx.from_terms(f.terms())


def substitute(f: RingElem, u_image: RingElem, v_image: RingElem) -> RingElem:
    """Evaluate ``f(u_image, v_image)``; the images must lie in the maximal ideal.

    With images whose linear parts are independent this is a ring automorphism
    of R/m^N (a local coordinate change).
    """
    f._check(u_image)
    f._check(v_image)
    if u_image.coeffs[0] != 0 or v_image.coeffs[0] != 0:
        raise ValueError("substitution images must have zero constant term")
    ctx = f.ctx
    upow = [ctx.one()]
    vpow = [ctx.one()]
    for _ in range(1, ctx.N):
        upow.append(multiply(upow[-1], u_image))
        vpow.append(multiply(vpow[-1], v_image))
    out = ctx.zero()
    for (a, b), c in zip(ctx.basis, f.coeffs):
        if c != 0:
            out = out + multiply(upow[a], vpow[b]).scale(c)
    return out


def linear_part_det(u_image: RingElem, v_image: RingElem) -> Fraction:
    """Jacobian determinant at the origin of the substitution (u, v) -> images."""
    ctx = u_image.ctx
    if ctx.N < 2:
        return Fraction(1)
    iu, iv = ctx.index[(1, 0)], ctx.index[(0, 1)]
    return u_image.coeffs[iu] * v_image.coeffs[iv] - u_image.coeffs[iv] * v_image.coeffs[iu]


def elems_from_strings(ctx: TruncRingCtx, texts: Iterable[str]) -> list[RingElem]:
    return [ctx.parse(t) for t in texts]
