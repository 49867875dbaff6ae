"""Parser and printer for the sparse polynomial input grammar.

A polynomial is a signed sum of terms ``c*x^a*y^b``: ``c`` is an optional
rational literal such as ``-3/2``, each factor is a variable name with an
optional nonnegative integer exponent. Whitespace is insignificant.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

_TERM_SPLIT = re.compile(r"(?=[+-])")
_COEF = re.compile(r"^(\d+(?:/\d+)?)$")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


class PolynomialSyntaxError(ValueError):
    pass


def parse_polynomial(text: str, variables: Sequence[str]) -> dict[tuple[int, ...], Fraction]:
    """Parse ``text`` into a map from exponent tuples to nonzero coefficients."""
    src = "".join(text.split())
    if not src:
        raise PolynomialSyntaxError("empty polynomial")
    index = {name: i for i, name in enumerate(variables)}
    out: dict[tuple[int, ...], Fraction] = {}
    for chunk in _TERM_SPLIT.split(src):
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise PolynomialSyntaxError(f"dangling sign in {text!r}")
        coef = Fraction(sign)
        exps = [0] * len(variables)
        for k, factor in enumerate(chunk.split("*")):
            if not factor:
                raise PolynomialSyntaxError(f"empty factor in {text!r}")
            m = _COEF.match(factor)
            if m and k == 0:
                coef *= Fraction(m.group(1))
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise PolynomialSyntaxError(f"cannot parse factor {factor!r}")
            name, power = m.group(1), m.group(2)
            if name not in index:
                raise PolynomialSyntaxError(
                    f"unknown variable {name!r}; expected one of {', '.join(variables)}"
                )
            exps[index[name]] += int(power) if power else 1
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + coef
    return {k: c for k, c in out.items() if c != 0}


def format_polynomial(terms: Mapping[tuple[int, ...], Fraction], variables: Sequence[str]) -> str:
    """Inverse of :func:`parse_polynomial`, terms in the order given."""
    parts = []
    for exps, c in terms.items():
        if c == 0:
            continue
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exps) if e
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))
