"""Curves in the class beta_n: construction from (eta, socle pair) and recognition.

A punctual curve in this class is a pencil of colength-n ideals

    I_eta + Span(lam*f + mu*g),   (lam : mu) in P^1,

where eta has colength n+1, contains m^n, and f, g are independent socle
elements of R/I_eta. Globally such a curve moves a single punctual part and
keeps the rest of the scheme fixed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .divisors import beta_n, expected_dimension
from .idealspace import (
    IdealSubspace,
    contains,
    ideal_sum,
    in_socle,
    intersect,
    socle,
)
from .pluecker import PencilOfSubspaces, pencil_from_two
from .scheme import Component, PointedScheme
from .truncring import RingElem, TruncRingCtx, change_context


class NotBetaN(ValueError):
    """A construction or recognition condition failed; ``condition`` names it."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition


@dataclass(frozen=True)
class BetaNPencil:
    eta: IdealSubspace  # in R/m^n
    f: RingElem
    g: RingElem

    @property
    def n(self) -> int:
        return self.eta.colength - 1

    def member(self, lam, mu) -> IdealSubspace:
        lam, mu = Fraction(lam), Fraction(mu)
        if lam == 0 and mu == 0:
            raise ValueError("(0:0) is not a point of P^1")
        h = self.f.scale(lam) + self.g.scale(mu)
        return IdealSubspace.from_rows(self.eta.ctx, self.eta.matrix + [list(h.coeffs)], check=True)

    def subspace_pencil(self) -> PencilOfSubspaces:
        """The same family as a pencil of subspaces of R/m^n."""
        return pencil_from_two(self.member(1, 0).rows, self.member(0, 1).rows, self.eta.ctx.dim)

    @property
    def span(self) -> IdealSubspace:
        return IdealSubspace.from_rows(
            self.eta.ctx, self.eta.matrix + [list(self.f.coeffs), list(self.g.coeffs)], check=False
        )


def build_pencil(eta: IdealSubspace, f1: RingElem, f2: RingElem) -> BetaNPencil:
    """Pencil of colength-n ideals I_eta + C(lam f1 + mu f2), n = colength(eta) - 1."""
    if eta.is_unit:
        raise NotBetaN("colength", "eta is the unit ideal")
    n = eta.colength - 1
    if n < 2:
        raise NotBetaN("colength", f"eta has colength {eta.colength}; need at least 3")
    if not eta.contains_power_of_max(n):
        raise NotBetaN("m^n in eta", f"eta does not contain m^{n}")
    if f1.ctx.N != eta.ctx.N or f2.ctx.N != eta.ctx.N:
        raise NotBetaN("context", "f1, f2 must live in the context of eta")
    ctx = TruncRingCtx(n)
    eta_n = eta.restrict(n)
    f = eta_n.reduce(change_context(f1, ctx))
    g = eta_n.reduce(change_context(f2, ctx))
    if linalg.rank([list(f.coeffs), list(g.coeffs)]) < 2:
        raise NotBetaN("independence", "f1 and f2 are dependent modulo eta")
    for name, h in (("f1", f), ("f2", g)):
        if not in_socle(eta_n, h):
            raise NotBetaN("socle", f"u*{name} or v*{name} is not in eta")
    return BetaNPencil(eta_n, f, g)


@dataclass(frozen=True)
class Recognition:
    eta: IdealSubspace
    pencil: BetaNPencil
    common: tuple[tuple[Fraction, ...], ...]
    span: tuple[tuple[Fraction, ...], ...]


def _distinct(ideals: Sequence[IdealSubspace]) -> list[IdealSubspace]:
    out: list[IdealSubspace] = []
    for I in ideals:
        if I not in out:
            out.append(I)
    return out


def recognize(samples: Sequence[IdealSubspace]) -> Recognition:
    """Recover (eta, pencil) from finitely many members of a beta_n curve.

    eta is the intersection of the first two distinct samples; it must have
    colength n+1 and contain m^n, and every sample must contain eta and lie
    in the sum of the first two.
    """
    samples = _distinct(samples)
    if len(samples) < 2:
        raise NotBetaN("samples", "need at least two distinct ideals")
    N = samples[0].ctx.N
    if any(s.ctx.N != N for s in samples):
        raise NotBetaN("context", "samples live in different truncations")
    n = samples[0].colength
    if any(s.colength != n for s in samples):
        raise NotBetaN("colength", "samples have different colengths")
    I = intersect(samples[0], samples[1])
    if I.colength != n + 1:
        raise NotBetaN("colength", f"intersection has colength {I.colength}, expected {n + 1}")
    if not I.contains_power_of_max(n):
        raise NotBetaN("m^n in eta", f"intersection does not contain m^{n}")
    top = ideal_sum(samples[0], samples[1])
    for s in samples[2:]:
        if not contains(s, I):
            raise NotBetaN("common part", "a sample does not contain eta")
        if not contains(top, s):
            raise NotBetaN("span", "a sample is not inside the span of the first two")
    eta = I.restrict(n)
    first, second = samples[0].restrict(n), samples[1].restrict(n)
    f = _new_vector(eta, first)
    g = _new_vector(eta, second)
    pencil = BetaNPencil(eta, f, g)
    return Recognition(eta, pencil, eta.rows, pencil.span.rows)


def _new_vector(eta: IdealSubspace, J: IdealSubspace) -> RingElem:
    for e in J.elements():
        r = eta.reduce(e)
        if r:
            return r
    raise NotBetaN("span", "sample equals eta")


# global curves ---------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    point: tuple[Fraction, Fraction, Fraction]
    k: int
    fixed: tuple[Component, ...]
    local: Recognition

    def to_json(self) -> dict:
        return {
            "point": [str(x) for x in self.point],
            "k": self.k,
            "fixed": PointedScheme(self.fixed).to_json()["points"] if self.fixed else [],
            "eta": self.local.eta.generator_strings(),
        }


def decompose_global(samples: Sequence[PointedScheme]) -> Decomposition:
    """Split members of a global curve into one moving punctual pencil plus a fixed part."""
    uniq: list[PointedScheme] = []
    for s in samples:
        if s not in uniq:
            uniq.append(s)
    if len(uniq) < 2:
        raise NotBetaN("samples", "need at least two distinct schemes")
    n = uniq[0].length
    if any(s.length != n for s in uniq):
        raise NotBetaN("length", "samples have different lengths")
    fixed = [c for c in uniq[0].components if all(c in s.components for s in uniq[1:])]
    moving_points = set()
    moving: list[Component] = []
    for s in uniq:
        rest = [c for c in s.components if c not in fixed]
        moving_points.update(c.point for c in rest)
        if len(rest) != 1:
            raise NotBetaN("one moving point", f"a sample has {len(rest)} moving components")
        moving.append(rest[0])
    if len(moving_points) != 1:
        raise NotBetaN("one moving point", f"moving parts are supported at {len(moving_points)} points")
    (x,) = moving_points
    if any(c.point == x for c in fixed):
        raise NotBetaN("one moving point", "fixed part meets the moving point")
    if len({c.chart for c in moving}) != 1:
        raise NotBetaN("chart", "moving components use different charts")
    k = moving[0].length
    N = max(c.ideal.ctx.N for c in moving)
    local = recognize([c.ideal.extend(N) for c in moving])
    return Decomposition(x, k, tuple(fixed), local)


# dimension counts ------------------------------------------------------------

def moduli_dim_beta_n(n: int) -> tuple[int, int]:
    """(dimension, expected dimension) of the moduli of curves in class beta_n.

    The top stratum M_2(x) + (n-2 distinct points) has 2 + 2(n-2) moduli;
    the expected dimension is -K.beta_n + 2n - 3.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 2 + 2 * (n - 2), int(expected_dimension(beta_n(n)))


def pencil_family_dimension(eta: IdealSubspace) -> int:
    """Dimension of Grass(socle, 2): the pencils sharing this eta."""
    s = len(socle(eta))
    return 2 * (s - 2) if s >= 2 else -1
