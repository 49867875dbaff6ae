"""Seeded random inputs for the verification suites and the tests."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import linalg
from .betacurves import BetaNPencil, build_pencil
from .binform import BinaryForm, FormPencil
from .idealspace import IdealSubspace, monomial_ideal, partitions, socle, staircase, transform
from .scheme import (
    HomogeneousForm,
    PointedScheme,
    local_ideal_of_form,
    make_component,
    normalize_point,
)
from .truncring import RingElem, TruncRingCtx, linear_part_det

DEFAULT_SEED = 0


def rational(rng: random.Random, height: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-height, height), rng.randint(1, 3))
        if x or not nonzero:
            return x


def random_element(rng: random.Random, ctx: TruncRingCtx, min_degree: int = 0, height: int = 3) -> RingElem:
    coeffs = [Fraction(0)] * ctx.dim
    for i, (a, b) in enumerate(ctx.basis):
        if a + b >= min_degree:
            coeffs[i] = rational(rng, height)
    return RingElem(ctx, tuple(coeffs))


def linear_change(rng: random.Random, ctx: TruncRingCtx) -> tuple[RingElem, RingElem]:
    """u -> a u + b v, v -> c u + d v with ad - bc != 0."""
    while True:
        a, b, c, d = (rational(rng) for _ in range(4))
        if a * d - b * c != 0:
            return ctx.from_terms({(1, 0): a, (0, 1): b}), ctx.from_terms({(1, 0): c, (0, 1): d})


def automorphism(rng: random.Random, ctx: TruncRingCtx) -> tuple[RingElem, RingElem]:
    """A linear change plus random terms of degree >= 2."""
    u_img, v_img = linear_change(rng, ctx)
    if ctx.N > 2:
        u_img = u_img + random_element(rng, ctx, 2, 2)
        v_img = v_img + random_element(rng, ctx, 2, 2)
    assert linear_part_det(u_img, v_img) != 0
    return u_img, v_img


def random_partition(rng: random.Random, n: int) -> tuple[int, ...]:
    return rng.choice(list(partitions(n)))


def random_local_ideal(rng: random.Random, length: int, N: int | None = None) -> IdealSubspace:
    """A random automorphic image of a random monomial ideal of the given colength."""
    ctx = TruncRingCtx(N or max(length, 1))
    I = monomial_ideal(ctx, random_partition(rng, length))
    return transform(I, *automorphism(rng, ctx))


def eta_partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n+1 whose monomial ideal contains m^n and has socle dimension >= 2."""
    out = []
    for p in partitions(n + 1):
        cells = staircase(p)
        if max(a + b for a, b in cells) <= n - 1 and len(set(p)) >= 2:
            out.append(p)
    return out


def random_eta(rng: random.Random, n: int) -> IdealSubspace:
    """eta of colength n+1 in R/m^n with m^n in eta and at least two socle directions."""
    ctx = TruncRingCtx(n)
    I = monomial_ideal(ctx, rng.choice(eta_partitions(n)))
    return transform(I, *automorphism(rng, ctx))


def random_socle_pair(rng: random.Random, eta: IdealSubspace) -> tuple[RingElem, RingElem]:
    """Two random socle elements, independent mod eta, each shifted by a random element of eta."""
    basis = socle(eta)
    elems = eta.elements()
    while True:
        pair = []
        for _ in range(2):
            f = eta.ctx.zero()
            for s in basis:
                f = f + s.scale(rational(rng))
            for e in rng.sample(elems, min(2, len(elems))):
                f = f + e.scale(rational(rng))
            pair.append(f)
        reduced = [list(eta.reduce(f).coeffs) for f in pair]
        if linalg.rank(reduced) == 2:
            return pair[0], pair[1]


def random_beta_pencil(rng: random.Random, n: int) -> BetaNPencil:
    eta = random_eta(rng, n)
    f, g = random_socle_pair(rng, eta)
    return build_pencil(eta, f, g)


def random_points(rng: random.Random, count: int, height: int = 6, avoid: Sequence = ()) -> list[tuple]:
    seen = {normalize_point(p) for p in avoid}
    out = []
    while len(out) < count:
        coords = [rng.randint(-height, height) for _ in range(3)]
        if not any(coords):
            continue
        p = normalize_point(coords)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def composition(rng: random.Random, n: int) -> list[int]:
    """A random ordered splitting of n into positive parts."""
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_scheme(rng: random.Random, n: int, avoid: Sequence = ()) -> PointedScheme:
    parts = composition(rng, n)
    pts = random_points(rng, len(parts), avoid=avoid)
    return PointedScheme.from_components(
        [make_component(p, random_local_ideal(rng, k)) for p, k in zip(pts, parts)]
    )


def random_line(rng: random.Random) -> HomogeneousForm:
    while True:
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(3)]
        if any(coeffs):
            return HomogeneousForm(1, tuple(coeffs)).normalized()


def points_on_line(rng: random.Random, line: HomogeneousForm, count: int) -> list[tuple]:
    basis = linalg.rref(linalg.nullspace([list(line.coeffs)], 3), 3)[0]
    seen: set = set()
    out = []
    while len(out) < count:
        s, t = rng.randint(-6, 6), rng.randint(-6, 6)
        if s == 0 and t == 0:
            continue
        p = normalize_point([s * a + t * b for a, b in zip(basis[0], basis[1])])
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def random_collinear_scheme(rng: random.Random, n: int, line: HomogeneousForm) -> PointedScheme:
    """Curvilinear pieces (line) + m^r at random points of the line, total length n."""
    parts = composition(rng, n)
    pts = points_on_line(rng, line, len(parts))
    return PointedScheme.from_components([local_ideal_of_form(line, p, r) for p, r in zip(pts, parts)])


def random_form_pencil(rng: random.Random, n: int, line: HomogeneousForm | None = None) -> FormPencil:
    """F, G split over Q with disjoint root sets, so the pencil is coprime."""
    line = line or random_line(rng)
    while True:
        roots = set()
        while len(roots) < 2 * n:
            r, s = rng.randint(-6, 6), rng.randint(0, 3)
            if r == 0 and s == 0:
                continue
            roots.add((Fraction(r, s), Fraction(1)) if s else (Fraction(1), Fraction(0)))
        roots_l = sorted(roots)
        rng.shuffle(roots_l)
        # repeated roots inside F (or G) are allowed
        F_roots = [rng.choice(roots_l[:n]) for _ in range(n)]
        G_roots = [rng.choice(roots_l[n:]) for _ in range(n)]
        F, G = BinaryForm.from_roots(F_roots), BinaryForm.from_roots(G_roots)
        try:
            return FormPencil.on_line(F, G, line)
        except ValueError:
            continue


def two_moving_fake(rng: random.Random, p: BetaNPencil) -> list[PointedScheme]:
    """Members of a beta_n pencil at x plus a second point that moves too."""
    (x,) = random_points(rng, 1)
    ys = random_points(rng, 3, avoid=[x])
    return [
        PointedScheme.from_components([make_component(x, p.member(1, t)), make_component(y)])
        for t, y in enumerate(ys)
    ]
