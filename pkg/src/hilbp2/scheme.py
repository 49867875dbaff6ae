"""Zero-dimensional subschemes of P^2 and homogeneous forms.

A :class:`PointedScheme` is a list of components, each a point with exact
homogeneous coordinates plus a local ideal written in affine coordinates
centred at the point. In the chart ``x_i = 1`` the local coordinates are
``u = x_j/x_i - p_j`` and ``v = x_k/x_i - p_k`` with ``j < k`` the other two
indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .idealspace import IdealSubspace, from_generators, parse_ideal
from .polyparse import format_polynomial, parse_polynomial
from .truncring import RingElem, TruncRingCtx

FORM_VARIABLES = ("x0", "x1", "x2")

Point = tuple[Fraction, Fraction, Fraction]


@lru_cache(maxsize=None)
def form_monomials(m: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent vectors of degree-m monomials in x0, x1, x2, lexicographically descending."""
    return tuple((a, b, m - a - b) for a in range(m, -1, -1) for b in range(m - a, -1, -1))


def forms_dimension(m: int) -> int:
    return comb(m + 2, 2) if m >= 0 else 0


@dataclass(frozen=True)
class HomogeneousForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != forms_dimension(self.degree):
            raise ValueError(f"a degree-{self.degree} form has {forms_dimension(self.degree)} coefficients")

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "HomogeneousForm":
        terms = parse_polynomial(text, FORM_VARIABLES)
        degrees = {sum(e) for e in terms}
        if len(degrees) > 1:
            raise ValueError(f"form {text!r} is not homogeneous")
        if degree is None:
            if not degrees:
                raise ValueError("cannot infer the degree of the zero form")
            degree = degrees.pop()
        elif degrees and degrees != {degree}:
            raise ValueError(f"form {text!r} does not have degree {degree}")
        mons = form_monomials(degree)
        return cls(degree, tuple(terms.get(e, Fraction(0)) for e in mons))

    @classmethod
    def from_terms(cls, degree: int, terms: dict) -> "HomogeneousForm":
        return cls(degree, tuple(Fraction(terms.get(e, 0)) for e in form_monomials(degree)))

    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        return {e: c for e, c in zip(form_monomials(self.degree), self.coeffs) if c != 0}

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for (a, b, c), coef in zip(form_monomials(self.degree), self.coeffs):
            if coef:
                total += coef * Fraction(point[0]) ** a * Fraction(point[1]) ** b * Fraction(point[2]) ** c
        return total

    def normalized(self) -> "HomogeneousForm":
        lead = next((c for c in self.coeffs if c != 0), None)
        if lead is None:
            return self
        return HomogeneousForm(self.degree, tuple(c / lead for c in self.coeffs))

    def __str__(self) -> str:
        return format_polynomial(self.terms(), FORM_VARIABLES)


def normalize_point(coords: Sequence) -> Point:
    pt = tuple(Fraction(c) for c in coords)
    if len(pt) != 3:
        raise ValueError("points of P^2 need three homogeneous coordinates")
    lead = next((c for c in pt if c != 0), None)
    if lead is None:
        raise ValueError("(0:0:0) is not a point")
    return tuple(c / lead for c in pt)  # type: ignore[return-value]


def default_chart(point: Sequence[Fraction]) -> int:
    """Index of the coordinate of largest absolute value (lowest index on ties)."""
    best = max(abs(c) for c in point)
    return next(i for i, c in enumerate(point) if abs(c) == best)


@dataclass(frozen=True)
class Component:
    point: Point
    ideal: IdealSubspace
    chart: int

    @property
    def length(self) -> int:
        return self.ideal.colength

    @property
    def affine(self) -> tuple[Fraction, Fraction]:
        """Affine coordinates (p_j, p_k) of the point in its chart."""
        i = self.chart
        j, k = [x for x in range(3) if x != i]
        return self.point[j] / self.point[i], self.point[k] / self.point[i]


def make_component(point: Sequence, ideal: IdealSubspace | None = None, chart: int | None = None) -> Component:
    pt = normalize_point(point)
    if chart is None:
        chart = default_chart(pt)
    if pt[chart] == 0:
        raise ValueError(f"chart x{chart} = 1 does not contain the point {pt}")
    if ideal is None:
        ideal = parse_ideal(1, [])
    if ideal.is_unit:
        raise ValueError("local ideal must be proper")
    return Component(pt, ideal.minimal_context(), chart)


@dataclass(frozen=True)
class PointedScheme:
    components: tuple[Component, ...]
    length: int = field(init=False)

    def __post_init__(self):
        keys = [c.point for c in self.components]
        if len(set(keys)) != len(keys):
            raise ValueError("support points must be pairwise distinct")
        if not self.components:
            raise ValueError("a scheme needs at least one point")
        object.__setattr__(self, "length", sum(c.length for c in self.components))

    @classmethod
    def from_components(cls, comps: Sequence[Component]) -> "PointedScheme":
        return cls(tuple(sorted(comps, key=lambda c: c.point)))

    @classmethod
    def reduced(cls, points: Sequence[Sequence]) -> "PointedScheme":
        return cls.from_components([make_component(p) for p in points])

    @property
    def support(self) -> list[Point]:
        return [c.point for c in self.components]

    def component_at(self, point: Sequence) -> Component | None:
        pt = normalize_point(point)
        return next((c for c in self.components if c.point == pt), None)

    # JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "points": [
                {
                    "coords": [str(x) for x in c.point],
                    "chart": c.chart,
                    "local": {"N": c.ideal.ctx.N, "generators": c.ideal.generator_strings()},
                }
                for c in self.components
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "PointedScheme":
        comps = []
        for entry in data["points"]:
            local = entry.get("local")
            ideal = None
            if local is not None:
                ideal = parse_ideal(int(local["N"]), local.get("generators", []))
            comps.append(make_component(entry["coords"], ideal, entry.get("chart")))
        return cls.from_components(comps)


def local_expansion(form: HomogeneousForm, comp: Component, N: int | None = None) -> RingElem:
    """Dehomogenize in the component's chart and Taylor-expand at the point, mod m^N."""
    N = comp.ideal.ctx.N if N is None else N
    return _expansion_matrix(form.degree, comp.point, comp.chart, N).apply(form.coeffs)


@dataclass(frozen=True)
class _Expansion:
    ctx: TruncRingCtx
    columns: tuple[tuple[Fraction, ...], ...]  # one per form monomial

    def apply(self, coeffs: Sequence[Fraction]) -> RingElem:
        out = [Fraction(0)] * self.ctx.dim
        for c, col in zip(coeffs, self.columns):
            if c:
                for i, x in enumerate(col):
                    if x:
                        out[i] += c * x
        return RingElem(self.ctx, tuple(out))


@lru_cache(maxsize=4096)
def _expansion_matrix(m: int, point: Point, chart: int, N: int) -> _Expansion:
    ctx = TruncRingCtx(N)
    j, k = [x for x in range(3) if x != chart]
    pj, pk = point[j] / point[chart], point[k] / point[chart]

    def binom_series(p: Fraction, e: int) -> list[Fraction]:
        # (p + t)^e truncated below degree N: coefficients of t^s
        return [comb(e, s) * p ** (e - s) for s in range(min(e, N - 1) + 1)]

    cols = []
    for exps in form_monomials(m):
        su = binom_series(pj, exps[j])
        sv = binom_series(pk, exps[k])
        col = [Fraction(0)] * ctx.dim
        for a, ca in enumerate(su):
            if ca == 0:
                continue
            for b, cb in enumerate(sv):
                if a + b < N and cb:
                    col[ctx.index[(a, b)]] += ca * cb
        cols.append(tuple(col))
    return _Expansion(ctx, tuple(cols))


def local_ideal_of_form(form: HomogeneousForm, point: Sequence, length: int, chart: int | None = None) -> Component:
    """The length-``length`` subscheme of the curve {form = 0} at a smooth point: (f) + m^length."""
    pt = normalize_point(point)
    if form(pt) != 0:
        raise ValueError(f"point {pt} is not on the curve {form}")
    chart = default_chart(pt) if chart is None else chart
    probe = Component(pt, parse_ideal(1, []), chart)
    f = local_expansion(form, probe, N=length)
    ideal = from_generators(f.ctx, [f])
    if ideal.colength != length:
        raise ValueError(f"curve is singular at {pt}; local length {ideal.colength} != {length}")
    return make_component(pt, ideal, chart)
