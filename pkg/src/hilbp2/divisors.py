"""Numerical classes on the Hilbert scheme of n points of P^2.

Curve classes are written ``a*beta_l + b*beta_n`` and divisor classes
``p*D_l + q*B_n`` (so ``q = -1/2`` encodes ``-B_n/2``). The pairing is the
bilinear extension of

    D_l.beta_l = 1,  D_l.beta_n = 0,  B_n.beta_l = 0,  B_n.beta_n = -2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class ClassMismatch(ValueError):
    pass


def _require_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")


@dataclass(frozen=True)
class CurveClass:
    n: int
    a: Fraction  # coefficient of beta_l
    b: Fraction  # coefficient of beta_n

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other: "CurveClass") -> "CurveClass":
        _same_n(self.n, other.n)
        return CurveClass(self.n, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        return self + other.scale(-1)

    def scale(self, c) -> "CurveClass":
        return CurveClass(self.n, c * self.a, c * self.b)

    @property
    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def __str__(self) -> str:
        return _format(self.a, "beta_l", self.b, "beta_n")

    def to_json(self) -> dict:
        return {"a": _num(self.a), "b": _num(self.b)}


@dataclass(frozen=True)
class DivisorClass:
    n: int
    p: Fraction  # coefficient of D_l
    q: Fraction  # coefficient of B_n

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_n(self.n, other.n)
        return DivisorClass(self.n, self.p + other.p, self.q + other.q)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + other.scale(-1)

    def scale(self, c) -> "DivisorClass":
        return DivisorClass(self.n, c * self.p, c * self.q)

    def __str__(self) -> str:
        return _format(self.p, "D", self.q, "B")

    def to_json(self) -> dict:
        return {"p": str(self.p), "q": str(self.q)}

    @classmethod
    def parse(cls, n: int, text: str) -> "DivisorClass":
        """Parse strings such as ``'3*D - 1/2*B'``."""
        p = q = Fraction(0)
        src = "".join(text.split())
        if not src:
            raise ValueError("empty divisor")
        for sign, coef, sym in re.findall(r"([+-]?)(\d+(?:/\d+)?)?\*?([DB])", src):
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            if sym == "D":
                p += c
            else:
                q += c
        leftover = re.sub(r"([+-]?)(\d+(?:/\d+)?)?\*?([DB])", "", src)
        if leftover:
            raise ValueError(f"cannot parse divisor {text!r}")
        return cls(n, p, q)


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def _format(c1: Fraction, s1: str, c2: Fraction, s2: str) -> str:
    parts = []
    for c, s in ((c1, s1), (c2, s2)):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        parts.append(("-" if c < 0 else "+", f"{mag}{s}"))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _same_n(n1: int, n2: int) -> None:
    if n1 != n2:
        raise ClassMismatch(f"classes live on different Hilbert schemes (n={n1} vs n={n2})")


# named classes -------------------------------------------------------------

def beta_l(n: int) -> CurveClass:
    return CurveClass(n, 1, 0)


def beta_n(n: int) -> CurveClass:
    return CurveClass(n, 0, 1)


def line_class(n: int) -> CurveClass:
    """beta_l - (n-1) beta_n, the class of a line inside Hilb^n of a line."""
    return CurveClass(n, 1, -(n - 1))


def D_l(n: int) -> DivisorClass:
    return DivisorClass(n, 1, 0)


def B_n(n: int) -> DivisorClass:
    return DivisorClass(n, 0, 1)


def canonical_class(n: int) -> DivisorClass:
    return DivisorClass(n, -3, 0)


def very_ample_class(n: int) -> DivisorClass:
    """n D_l - B_n/2."""
    return DivisorClass(n, n, Fraction(-1, 2))


PAIRING_TABLE = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-2)))


def pair(D: DivisorClass, c: CurveClass) -> Fraction:
    _same_n(D.n, c.n)
    return D.p * c.a * PAIRING_TABLE[0][0] + D.p * c.b * PAIRING_TABLE[0][1] \
        + D.q * c.a * PAIRING_TABLE[1][0] + D.q * c.b * PAIRING_TABLE[1][1]


# cones -----------------------------------------------------------------------

def nef_generators(n: int) -> tuple[DivisorClass, DivisorClass]:
    _require_n(n)
    return D_l(n), DivisorClass(n, n - 1, Fraction(-1, 2))


def effective_generators(n: int) -> tuple[CurveClass, CurveClass]:
    _require_n(n)
    return beta_n(n), line_class(n)


def is_nef(D: DivisorClass) -> bool:
    _require_n(D.n)
    return all(pair(D, g) >= 0 for g in effective_generators(D.n))


def effective_coordinates(c: CurveClass) -> tuple[Fraction, Fraction]:
    """(x, y) with c = x*beta_n + y*(beta_l - (n-1) beta_n)."""
    _require_n(c.n)
    y = c.a
    x = c.b + (c.n - 1) * y
    return x, y


def is_effective_curve(c: CurveClass) -> bool:
    x, y = effective_coordinates(c)
    return x >= 0 and y >= 0


def degree1_classes(n: int) -> list[CurveClass]:
    """Effective integral classes of degree 1 against n D_l - B_n/2.

    Any effective integral class is x*beta_n + y*(beta_l - (n-1) beta_n)
    with x, y nonnegative integers (its pairings with the two integral nef
    generators), and its degree is x + y.
    """
    _require_n(n)
    H = very_ample_class(n)
    gens = effective_generators(n)
    out = []
    for x in range(2):
        for y in range(2):
            c = gens[0].scale(x) + gens[1].scale(y)
            if pair(H, c) == 1:
                out.append(c)
    return sorted(out, key=lambda c: (c.a, c.b))


# dimensions ----------------------------------------------------------------

def expected_dimension(c: CurveClass) -> Fraction:
    """-K.c + dim X^[n] - dim Aut(P^1) = -K.c + 2n - 3."""
    return pair(canonical_class(c.n).scale(-1), c) + 2 * c.n - 3


def moduli_dim_line_class(n: int) -> tuple[int, int]:
    """(actual, expected) dimension of the moduli of curves in class beta_l - (n-1) beta_n.

    The actual dimension is read off the Grassmannian bundle of 2-planes in
    Sym^n of a rank-2 bundle over the dual plane: 2 + 2((n+1) - 2).
    """
    _require_n(n)
    bundle = 2 + 2 * ((n + 1) - 2)
    return bundle, int(expected_dimension(line_class(n)))
