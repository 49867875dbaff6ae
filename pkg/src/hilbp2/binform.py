"""Binary forms, pencils of them, and the curves they trace in Hilb^n of a line.

A degree-n binary form ``a_0 U^n + a_1 U^(n-1) V + ... + a_n V^n`` is a point
of Hilb^n(P^1) = P^n, and a pencil ``lam*F + mu*G`` is a line there. Placing
the P^1 on a line C of the plane (``(U:V) -> U*P0 + V*P1``) turns the pencil
into a curve in the Hilbert scheme of the plane. Its intersection numbers
with D_l and B_n are read off exactly: the first from one linear equation in
(lam : mu), the second from the degree of the discriminant of the member.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from . import linalg
from .divisors import B_n, CurveClass, D_l, pair
from .polyparse import format_polynomial, parse_polynomial
from .scheme import HomogeneousForm, PointedScheme, local_ideal_of_form, normalize_point

BINARY_VARIABLES = ("U", "V")


class DegenerateProbe(ValueError):
    pass


class NotSplit(ValueError):
    pass


class FamilyInsideBoundary(ValueError):
    """Every member of the pencil is non-reduced; the class count is invalid."""


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple[Fraction, ...]  # a_0 .. a_n

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not any(self.coeffs):
            raise ValueError("the zero binary form is not a point of P^n")
        lead = next(c for c in self.coeffs if c != 0)
        if lead != 1:
            object.__setattr__(self, "coeffs", tuple(c / lead for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "BinaryForm":
        terms = parse_polynomial(text, BINARY_VARIABLES)
        degrees = {a + b for a, b in terms}
        if len(degrees) > 1:
            raise ValueError(f"binary form {text!r} is not homogeneous")
        if degree is None:
            if not degrees:
                raise ValueError("cannot infer the degree of the zero form")
            degree = degrees.pop()
        elif degrees and degrees != {degree}:
            raise ValueError(f"binary form {text!r} does not have degree {degree}")
        n = degree
        return cls(tuple(terms.get((n - i, i), Fraction(0)) for i in range(n + 1)))

    @classmethod
    def from_roots(cls, roots: Sequence[tuple]) -> "BinaryForm":
        """Product of the factors s*U - r*V, one for each root (r : s)."""
        coeffs = [Fraction(1)]
        for r, s in roots:
            r, s = Fraction(r), Fraction(s)
            # multiply by (s*U - r*V)
            new = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i] += c * s
                new[i + 1] -= c * r
            coeffs = new
        return cls(tuple(coeffs))

    def __call__(self, U, V) -> Fraction:
        n = self.degree
        U, V = Fraction(U), Fraction(V)
        return sum((c * U ** (n - i) * V ** i for i, c in enumerate(self.coeffs)), Fraction(0))

    def combine(self, other: "BinaryForm", lam, mu) -> "BinaryForm":
        if other.degree != self.degree:
            raise ValueError("forms of different degree")
        lam, mu = Fraction(lam), Fraction(mu)
        return BinaryForm(tuple(lam * a + mu * b for a, b in zip(self.coeffs, other.coeffs)))

    def to_sympy(self):
        U, V = sympy.symbols(BINARY_VARIABLES)
        n = self.degree
        return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * U ** (n - i) * V ** i
                           for i, c in enumerate(self.coeffs) if c])

    def __str__(self) -> str:
        n = self.degree
        return format_polynomial({(n - i, i): c for i, c in enumerate(self.coeffs)}, BINARY_VARIABLES)


def sylvester_matrix(f: Sequence[Fraction], g: Sequence[Fraction]) -> list[list[Fraction]]:
    """Sylvester matrix of two coefficient lists (highest power of U first)."""
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in f] + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in g] + [Fraction(0)] * (size - m - 1 - i))
    return rows


def resultant(f: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
    """Resultant of two binary forms given by coefficient lists of their formal degrees.

    Vanishes exactly when the forms share a root in P^1 (over the algebraic
    closure), including a common root at (1:0).
    """
    if len(f) == 1 and len(g) == 1:
        return Fraction(1)
    return linalg.det(sylvester_matrix(f, g))


def discriminant(H: BinaryForm | Sequence[Fraction]) -> Fraction:
    """Res(dH/dU, dH/dV): a nonzero multiple of the discriminant of H.

    By Euler's identity n*H = U*H_U + V*H_V the two partials share a root
    exactly when H has a repeated root, so this vanishes iff H does. Takes a
    form or a raw coefficient list (the latter is not rescaled, so the value
    is polynomial in the coefficients).
    """
    coeffs = list(H.coeffs) if isinstance(H, BinaryForm) else [Fraction(c) for c in H]
    n = len(coeffs) - 1
    if n < 2:
        return Fraction(1)
    dU = [(n - i) * c for i, c in enumerate(coeffs[:-1])]
    dV = [i * c for i, c in enumerate(coeffs) if i > 0]
    return resultant(dU, dV)


@dataclass(frozen=True)
class FormPencil:
    F: BinaryForm
    G: BinaryForm
    line: HomogeneousForm
    P0: tuple[Fraction, Fraction, Fraction]
    P1: tuple[Fraction, Fraction, Fraction]
    allow_base_points: bool = False

    def __post_init__(self):
        if self.F.degree != self.G.degree:
            raise ValueError("F and G must have the same degree")
        if self.line.degree != 1:
            raise ValueError("the support curve must be a line")
        if linalg.rank([list(self.F.coeffs), list(self.G.coeffs)]) < 2:
            raise ValueError("F and G are projectively equal")
        if not self.allow_base_points and not self.coprime:
            raise ValueError("F and G share a root; the pencil has a base point")
        for P in (self.P0, self.P1):
            if self.line(P) != 0:
                raise ValueError(f"parameterizing point {P} is not on the line")
        if linalg.rank([list(self.P0), list(self.P1)]) < 2:
            raise ValueError("parameterizing points coincide")

    @property
    def n(self) -> int:
        return self.F.degree

    @property
    def coprime(self) -> bool:
        return resultant(self.F.coeffs, self.G.coeffs) != 0

    @classmethod
    def on_line(cls, F: BinaryForm, G: BinaryForm, line: HomogeneousForm, allow_base_points=False) -> "FormPencil":
        P0, P1 = default_parameterization(line)
        return cls(F, G, line, P0, P1, allow_base_points)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "F": str(self.F),
            "G": str(self.G),
            "line": str(self.line),
            "P0": [str(x) for x in self.P0],
            "P1": [str(x) for x in self.P1],
        }

    def member_form(self, lam, mu) -> BinaryForm:
        return self.F.combine(self.G, lam, mu)

    def point(self, U, V) -> tuple[Fraction, Fraction, Fraction]:
        U, V = Fraction(U), Fraction(V)
        return tuple(U * a + V * b for a, b in zip(self.P0, self.P1))  # type: ignore[return-value]

    def parameter(self, q: Sequence) -> tuple[Fraction, Fraction]:
        """(U : V) of a point q on the line; a pair is taken to be (U : V) already."""
        q = [Fraction(x) for x in q]
        if len(q) == 2:
            if not any(q):
                raise DegenerateProbe("(0:0) is not a point of P^1")
            return q[0], q[1]
        if self.line(q) != 0:
            raise DegenerateProbe(f"probe {q} is not on the line {self.line}")
        # solve U*P0 + V*P1 = q
        A = [[self.P0[i], self.P1[i], q[i]] for i in range(3)]
        red, piv = linalg.rref(A, 3)
        if piv != [0, 1]:
            raise DegenerateProbe(f"cannot express {q} on the line")
        return red[0][2], red[1][2]


def default_parameterization(line: HomogeneousForm) -> tuple[tuple, tuple]:
    basis = linalg.rref(linalg.nullspace([list(line.coeffs)], 3), 3)[0]
    P0, P1 = (tuple(normalize_point(b)) for b in basis)
    return P0, P1


def embed_member(p: FormPencil, lam, mu) -> PointedScheme:
    """The length-n subscheme of the line cut out by lam*F + mu*G.

    Only members that split into linear factors over Q are supported; a root
    of multiplicity r becomes the curvilinear length-r scheme (line) + m^r.
    """
    H = p.member_form(lam, mu)
    comps = []
    for (U, V), mult in rational_roots(H):
        comps.append(local_ideal_of_form(p.line, p.point(U, V), mult))
    return PointedScheme.from_components(comps)


def rational_roots(H: BinaryForm) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """Roots (U : V) with multiplicities; raises NotSplit if H has an irreducible factor of degree > 1."""
    Us, Vs = sympy.symbols(BINARY_VARIABLES)
    _, factors = sympy.factor_list(H.to_sympy(), Us, Vs)
    out = []
    total = 0
    for fac, mult in factors:
        poly = sympy.Poly(fac, Us, Vs)
        if poly.total_degree() == 0:
            continue
        if poly.total_degree() != 1:
            raise NotSplit(f"member {H} has the irreducible factor {fac}")
        a = Fraction(str(poly.coeff_monomial(Us)))
        b = Fraction(str(poly.coeff_monomial(Vs)))
        # a U + b V = 0 at (U : V) = (b : -a)
        out.append(((b, -a), int(mult)))
        total += int(mult)
    if total != H.degree:
        raise NotSplit(f"member {H} does not split")
    return sorted(out)


# intersection numbers ----------------------------------------------------------

def pencil_D_degree(p: FormPencil, q: Sequence) -> int:
    """Members meeting a general line through q: solutions of lam F(q) + mu G(q) = 0.

    The equation is linear in (lam : mu), so it has exactly one root unless
    F(q) = G(q) = 0 (the probe then sits at a base point and is rejected).
    """
    U, V = p.parameter(q)
    a, b = p.F(U, V), p.G(U, V)
    if a == 0 and b == 0:
        raise DegenerateProbe("F and G both vanish at the probe")
    roots = linalg.nullspace([[a, b]], 2)
    return len(roots)


def pencil_discriminant(p: FormPencil) -> list[Fraction]:
    """Coefficients c_j of disc(lam F + mu G) = sum_j c_j lam^(d-j) mu^j, d = 2(n-1).

    Recovered by exact interpolation of t -> disc(F + t G) at t = 0..d.
    """
    d = 2 * (p.n - 1)
    ts = [Fraction(t) for t in range(d + 1)]
    vals = [discriminant([a + t * b for a, b in zip(p.F.coeffs, p.G.coeffs)]) for t in ts]
    vander = [[t ** j for j in range(d + 1)] + [v] for t, v in zip(ts, vals)]
    red, _ = linalg.rref(vander, d + 2)
    return [row[-1] for row in red]


def binary_root_count(coeffs: Sequence[Fraction]) -> int:
    """Number of roots in P^1, with multiplicity, of sum_j c_j lam^(d-j) mu^j."""
    lam, mu = sympy.symbols("lam mu")
    d = len(coeffs) - 1
    expr = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * lam ** (d - j) * mu ** j
                       for j, c in enumerate(coeffs) if c])
    if expr == 0:
        raise FamilyInsideBoundary("polynomial vanishes identically")
    _, factors = sympy.factor_list(expr, lam, mu)
    return int(sum(sympy.Poly(f, lam, mu).total_degree() * m for f, m in factors))


def pencil_B_degree(p: FormPencil) -> int:
    """Intersection with B_n: the number of non-reduced members, with multiplicity."""
    coeffs = pencil_discriminant(p)
    if not any(coeffs):
        raise FamilyInsideBoundary("class computation invalid, family inside B_n")
    return binary_root_count(coeffs)


def pencil_class(p: FormPencil, probe: Sequence | None = None) -> CurveClass:
    """Solve a*beta_l + b*beta_n from the two intersection numbers.

    D_l pairs to a and B_n pairs to -2b, so a = D-degree and b = -B-degree/2.
    """
    n = p.n
    if probe is None:
        probe = generic_probe(p)
    dD = pencil_D_degree(p, probe)
    dB = pencil_B_degree(p)
    c = CurveClass(n, dD, Fraction(-dB, 2))
    if pair(D_l(n), c) != dD or pair(B_n(n), c) != dB:
        raise AssertionError("pairing inconsistent with the class solve")
    return c


def generic_probe(p: FormPencil) -> tuple[Fraction, Fraction, Fraction]:
    """First point U*P0 + V*P1, (U, V) = (1, t) for t = 0, 1, ..., off the base locus."""
    t = 0
    while True:
        if p.F(1, t) != 0 or p.G(1, t) != 0:
            return p.point(1, t)
        t += 1


def moduli_dim_grass_bundle(n: int) -> int:
    """Dimension of the bundle of 2-planes in Sym^n over the dual plane: 2 + 2((n+1) - 2)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 2 + 2 * ((n + 1) - 2)
