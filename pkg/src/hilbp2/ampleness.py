"""Sections of twisted ideal sheaves on P^2 and the maps they induce.

``h0_ideal_twist(xi, m)`` is the space of degree-m forms vanishing on the
scheme ``xi``; the Grassmannian maps send ``xi`` to that space (for m = n-1
and m = n, n the length of ``xi``). Also here: the arithmetic side of the
k-very-ampleness criterion for O(a) on P^2, and the fixed-component test that
tells apart the two kinds of fibres of the degree-(n-1) map.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import sympy

from . import linalg
from .pluecker import PlueckerVector, pluecker_coords
from .scheme import (
    FORM_VARIABLES,
    Component,
    HomogeneousForm,
    PointedScheme,
    _expansion_matrix,
    form_monomials,
    forms_dimension,
    local_expansion,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormSubspace:
    """A subspace of degree-m forms, as reduced echelon rows over the monomials of :func:`form_monomials`."""

    degree: int
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def forms(self) -> list[HomogeneousForm]:
        return [HomogeneousForm(self.degree, r) for r in self.rows]

    def contains(self, form: HomogeneousForm) -> bool:
        red, piv = linalg.rref(self.rows, forms_dimension(self.degree)) if self.rows else ([], [])
        return linalg.in_span(form.coeffs, red, piv)

    def to_json(self) -> dict:
        return {"degree": self.degree, "dim": self.dim, "basis": [str(f) for f in self.forms()]}


def _local_conditions(comp: Component, m: int) -> list[list[Fraction]]:
    """Rows of the linear conditions 'F lies in the local ideal' on the coefficients of F."""
    ideal = comp.ideal
    exp = _expansion_matrix(m, comp.point, comp.chart, ideal.ctx.N)
    reduced = [linalg.reduce_vector(col, ideal.matrix, ideal.pivots) for col in exp.columns]
    return [[r[i] for r in reduced] for i in ideal.complement]


def h0_ideal_twist(xi: PointedScheme, m: int) -> FormSubspace:
    """Degree-m forms whose local expansion at every point lies in the local ideal."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    ncols = forms_dimension(m)
    conds = [row for comp in xi.components for row in _local_conditions(comp, m)]
    basis = linalg.nullspace(conds, ncols) if conds else linalg.identity(ncols)
    red, _ = linalg.rref(basis, ncols) if basis else ([], [])
    return FormSubspace(m, tuple(tuple(r) for r in red))


def phi_map(xi: PointedScheme, m: int) -> PlueckerVector:
    """Plücker vector of the sections of I_xi(m) inside all degree-m forms."""
    n = xi.length
    if m not in (n - 1, n):
        log.warning("phi_map called with degree %d for a length-%d scheme", m, n)
    V = h0_ideal_twist(xi, m)
    if V.dim == 0:
        raise ValueError(f"no degree-{m} form vanishes on the scheme")
    return pluecker_coords(V.rows, forms_dimension(m))


# k-very ampleness --------------------------------------------------------------

@dataclass(frozen=True)
class KvaResult:
    """Outcome of the sufficient numerical criterion for O(a) to be k-very ample.

    ``status`` is ``"pass"`` (no obstructing curve degree exists, so the
    bundle is k-very ample), ``"violation"`` (the criterion is inconclusive;
    ``d`` is the smallest offending degree) or ``"inapplicable"``
    (C.C <= 4k + 5 for C = (a+3) lines).
    """

    status: str
    a: int
    k: int
    d: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"result": self.status}
        if self.d is not None:
            out["d"] = self.d
        return out


def kva_criterion(a: int, k: int) -> KvaResult:
    """Search the curve degrees d that could obstruct k-very ampleness of O(a).

    With C = (a+3) lines (so K + C = a lines), an obstruction needs a curve of
    degree d >= 1 with  C.D - k - 1 <= D.D < C.D/2 < k + 1,  i.e.
    (a+3)d - k - 1 <= d^2,  2 d^2 < (a+3)d,  (a+3)d < 2(k+1).
    """
    if a < 0 or k < 0:
        raise ValueError("a and k must be nonnegative")
    c = a + 3
    if c * c <= 4 * k + 5:
        return KvaResult("inapplicable", a, k, note=f"C.C = {c * c} <= 4k+5 = {4 * k + 5}")
    d = 1
    while c * d < 2 * (k + 1):
        if c * d - k - 1 <= d * d and 2 * d * d < c * d:
            return KvaResult("violation", a, k, d, note="sufficient criterion fails; no conclusion")
        d += 1
    return KvaResult("pass", a, k, note="sufficient criterion holds")


# fibres of the degree-(n-1) map ------------------------------------------------

_SYMS = sympy.symbols(FORM_VARIABLES)


def form_to_sympy(form: HomogeneousForm) -> sympy.Expr:
    return sympy.Add(
        *[
            sympy.Rational(c.numerator, c.denominator) * _SYMS[0] ** a * _SYMS[1] ** b * _SYMS[2] ** e
            for (a, b, e), c in form.terms().items()
        ]
    )


def linear_form_from_sympy(expr) -> HomogeneousForm:
    poly = sympy.Poly(expr, *_SYMS)
    terms = {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}
    return HomogeneousForm.from_terms(1, terms).normalized()


@dataclass(frozen=True)
class PointFiber:
    kind = "point"

    def to_json(self) -> dict:
        return {"fiber": "point"}


@dataclass(frozen=True)
class LineFiber:
    line: HomogeneousForm
    kind = "line"

    def to_json(self) -> dict:
        return {"fiber": "line", "line": str(self.line)}


def fixed_component(V: FormSubspace):
    """gcd of a basis of V as a sympy expression (1 when there is no fixed part)."""
    g = sympy.Integer(0)
    for f in V.forms():
        g = sympy.gcd(g, form_to_sympy(f))
        if g.is_number:
            return sympy.Integer(1)
    return g


def phi1_fiber(xi: PointedScheme) -> PointFiber | LineFiber:
    """Classify the fibre of the degree-(n-1) map through ``xi``.

    The fibre is a whole Hilb^n(C) exactly when the forms through ``xi`` have
    a line C as fixed component; otherwise it is the point ``xi``.
    """
    n = xi.length
    if n < 3:
        raise ValueError("fibre classification needs length >= 3")
    V = h0_ideal_twist(xi, n - 1)
    expected = comb(n + 1, 2) - n
    if V.dim != expected:
        raise ValueError(f"h0(I(n-1)) has dimension {V.dim}, expected {expected}")
    g = fixed_component(V)
    if g.is_number:
        return PointFiber()
    _, factors = sympy.factor_list(g, *_SYMS)
    for fac, _mult in factors:
        if sympy.Poly(fac, *_SYMS).total_degree() == 1:
            return LineFiber(linear_form_from_sympy(fac))
    return PointFiber()


def line_through(points: Sequence[Sequence[Fraction]]) -> list[HomogeneousForm]:
    """All linear forms vanishing at the given points (a basis, echelon form)."""
    rows = [[Fraction(c) for c in p] for p in points]
    # coefficient order of degree-1 forms is (x0, x1, x2)
    return [HomogeneousForm(1, tuple(r)) for r in linalg.rref(linalg.nullspace(rows, 3), 3)[0]]


def collinear_support(samples: Sequence[PointedScheme]) -> HomogeneousForm | None:
    """The unique line containing every sample, or None.

    Candidate lines come from the rank of the 3-column matrix of support
    points; they are then cut down by requiring the line's local equation to
    lie in every local ideal, so non-reduced parts must be tangent to it.
    """
    points = [c.point for s in samples for c in s.components]
    candidates = line_through(points)
    if not candidates:
        return None
    conds = []
    for s in samples:
        for comp in s.components:
            if comp.length == 1:
                continue
            ideal = comp.ideal
            for i in ideal.complement:
                row = []
                for L in candidates:
                    r = linalg.reduce_vector(local_expansion(L, comp).coeffs, ideal.matrix, ideal.pivots)
                    row.append(r[i])
                conds.append(row)
    combos = linalg.nullspace(conds, len(candidates)) if conds else linalg.identity(len(candidates))
    if len(combos) != 1:
        return None
    coeffs = [sum((c * L.coeffs[i] for c, L in zip(combos[0], candidates)), Fraction(0)) for i in range(3)]
    return HomogeneousForm(1, tuple(coeffs)).normalized()


def multiples_of(p: HomogeneousForm, m: int) -> FormSubspace:
    """The subspace p * (all forms of degree m - deg p)."""
    d = m - p.degree
    rows = []
    for e in form_monomials(d):
        terms: dict[tuple[int, int, int], Fraction] = {}
        for pe, c in p.terms().items():
            key = (pe[0] + e[0], pe[1] + e[1], pe[2] + e[2])
            terms[key] = terms.get(key, Fraction(0)) + c
        rows.append(list(HomogeneousForm.from_terms(m, terms).coeffs))
    red, _ = linalg.rref(rows, forms_dimension(m)) if rows else ([], [])
    return FormSubspace(m, tuple(tuple(r) for r in red))
