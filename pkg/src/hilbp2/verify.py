"""Named verification suites; each returns a machine-readable pass/fail report.

Every randomized suite draws from ``random.Random(f"{seed}:{suite}:{n}")``, so
a report is a deterministic function of its arguments (timings aside).
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable

from . import randgen as rg
from .ampleness import (
    LineFiber,
    PointFiber,
    collinear_support,
    h0_ideal_twist,
    kva_criterion,
    multiples_of,
    phi1_fiber,
)
from .betacurves import (
    NotBetaN,
    build_pencil,
    decompose_global,
    moduli_dim_beta_n,
    pencil_family_dimension,
    recognize,
)
from .binform import (
    NotSplit,
    embed_member,
    moduli_dim_grass_bundle,
    pencil_B_degree,
    pencil_class,
    pencil_D_degree,
)
from .divisors import (
    B_n,
    D_l,
    beta_l,
    beta_n,
    canonical_class,
    degree1_classes,
    line_class,
    moduli_dim_line_class,
    pair,
    very_ample_class,
)
from .idealspace import (
    IdealSubspace,
    enumerate_monomial_ideals,
    intersect,
    is_ideal,
    monomial_ideal,
    partitions,
    socle,
    theta,
    transform,
)
from .pluecker import is_line_family
from .scheme import PointedScheme, make_component
from .truncring import TruncRingCtx


class UnknownSuite(KeyError):
    pass


@dataclass
class Item:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self, timings: bool) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    suite: str
    seed: int
    items: list[Item] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.items) and all(i.passed for i in self.items)

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "pass": self.passed,
            "items": [i.to_json(timings) for i in self.items],
        }
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _rng(seed: int, suite: str, n) -> random.Random:
    return random.Random(f"{seed}:{suite}:{n}")


def _timed(name: str, fn: Callable[[], str | None]) -> Item:
    """Run one check; it returns None (pass), a failure string, or raises."""
    t0 = time.perf_counter()
    try:
        msg = fn()
        ok = msg is None or msg == ""
        detail = "" if ok else msg
    except AssertionError as exc:
        ok, detail = False, f"assertion failed: {exc}"
    except Exception as exc:  # a crash is a failed check, reported by name
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Item(name, ok, detail, time.perf_counter() - t0)


def _ns(n, default):
    return [n] if n is not None else list(default)


# 1 -------------------------------------------------------------------------------

def suite_pairing(n=None, trials=None, seed=0) -> list[Item]:
    def table():
        for m in _ns(n, range(2, 51)):
            got = [[pair(D(m), c(m)) for c in (beta_l, beta_n)] for D in (D_l, B_n)]
            assert got == [[1, 0], [0, -2]], f"n={m}: {got}"
            k = pair(canonical_class(m), line_class(m))
            assert k == -3, f"n={m}: K.(beta_l-(n-1)beta_n) = {k}"

    return [_timed("pairing table and K = -3 D_l", table)]


# 2 -------------------------------------------------------------------------------

def _brute_degree1(n: int, bound: int = 20) -> set[tuple[int, int]]:
    """Integral classes with nonnegative pairing against both nef generators and degree 1."""
    out = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            # D_l.c = a ; ((n-1) D_l - B_n/2).c = (n-1)a + b
            if a >= 0 and (n - 1) * a + b >= 0 and n * a + b == 1:
                out.add((a, b))
    return out


def suite_deg1(n=None, trials=None, seed=0) -> list[Item]:
    items = []
    for m in _ns(n, range(2, 11)):
        def check(m=m):
            got = {(int(c.a), int(c.b)) for c in degree1_classes(m)}
            want = {(0, 1), (1, -(m - 1))}
            assert got == want, f"degree1_classes = {sorted(got)}"
            brute = _brute_degree1(m)
            assert brute == want, f"brute force = {sorted(brute)}"
        items.append(_timed(f"n={m}", check))
    return items


# 3 -------------------------------------------------------------------------------

def _brute_kva_violation(a: int, k: int) -> int | None:
    c = a + 3
    for d in range(1, 10 * (k + 2)):
        if c * d - k - 1 <= d * d < c * d / 2 < k + 1:
            return d
    return None


def suite_kva(n=None, trials=None, seed=0) -> list[Item]:
    def diag():
        for m in _ns(n, range(2, 51)):
            r = kva_criterion(m, m)
            assert r.status == "pass", f"kva({m},{m}) = {r.status}"
            assert _brute_kva_violation(m, m) is None

    def low():
        r = kva_criterion(1, 2)
        assert r.status == "violation" and r.d == 1, f"kva(1,2) = {r}"
        assert _brute_kva_violation(1, 2) == 1

    def agree():
        for a in range(0, 15):
            for k in range(0, 15):
                r = kva_criterion(a, k)
                if r.status != "inapplicable":
                    assert r.d == _brute_kva_violation(a, k), f"a={a} k={k}"

    return [_timed("kva(n,n) passes", diag), _timed("kva(1,2) violation at d=1", low),
            _timed("search agrees with brute force", agree)]


# 4 -------------------------------------------------------------------------------

def _pair_forces_power(eta: IdealSubspace, n: int) -> tuple[bool, str | None]:
    """Returns (has two distinct colength-n overideals, failure message)."""
    if eta.colength != n + 1:
        return False, f"eta colength {eta.colength}"
    soc = socle(eta)
    overs = []
    for s in soc:
        J = IdealSubspace.from_rows(eta.ctx, eta.matrix + [list(s.coeffs)], check=False)
        if not is_ideal(eta.ctx, J.rows) or J.colength != n:
            return False, "socle extension is not a colength-n ideal"
        overs.append(J)
    if len(overs) < 2:
        return False, None
    for J1, J2 in combinations(overs, 2):
        if J1 == J2:
            return True, "distinct socle directions gave equal ideals"
        if intersect(J1, J2) != eta:
            return True, "intersection of two overideals differs from eta"
    if not eta.contains_power_of_max(n):
        return True, "two overideals exist but m^n is not in eta"
    return True, None


def suite_common_part(n=None, trials=None, seed=0) -> list[Item]:
    trials = 20 if trials is None else trials
    items = []
    for m in _ns(n, range(2, 6)):
        def check(m=m):
            rng = _rng(seed, "lemma-4-7", m)
            ctx = TruncRingCtx(m + 1)
            two = 0
            total = 0
            for p in partitions(m + 1):
                eta0 = monomial_ideal(ctx, p)
                # brute force: colength-n monomial overideals = removable corner cells
                corners = len(set(p))
                if len(socle(eta0)) != corners:
                    return f"partition {p}: socle {len(socle(eta0))} != corners {corners}"
                for t in range(trials + 1):
                    eta = eta0 if t == 0 else transform(eta0, *rg.linear_change(rng, ctx))
                    has_two, msg = _pair_forces_power(eta, m)
                    total += 1
                    two += has_two
                    if msg:
                        return f"partition {p}, change {t}: {msg}"
            return None if two else "no eta with two overideals was tested"
        items.append(_timed(f"n={m}", check))
    return items


# 5 -------------------------------------------------------------------------------

def _pencil_roundtrip(rng: random.Random, n: int) -> str | None:
    p = rg.random_beta_pencil(rng, n)
    lams: list[Fraction] = []
    while len(lams) < 5:
        lam = rg.rational(rng, nonzero=True)
        if lam not in lams:
            lams.append(lam)
    params = [(1, 0), (0, 1)] + [(lam, 1) for lam in lams]
    members = []
    for lam, mu in params:
        J = p.member(lam, mu)
        if not is_ideal(J.ctx, J.rows) or J.colength != n:
            return f"member ({lam}:{mu}) is not a colength-{n} ideal"
        members.append(J)
    fam = is_line_family([J.rows for J in members[:3]], p.eta.ctx.dim)
    if not fam.is_line or fam.pluecker_rank != 2:
        return f"is_line_family failed: {fam.reason}"
    rec = recognize(members[:4])
    if rec.eta != p.eta or rec.common != p.eta.rows or rec.span != p.span.rows:
        return "recognize did not return (eta, common, span)"
    for A, B in combinations(members[:4], 2):
        if intersect(A, B) != p.eta:
            return "eta depends on the chosen pair"
    return None


def suite_pencils(n=None, trials=None, seed=0) -> list[Item]:
    trials = 50 if trials is None else trials
    items = []
    for m in _ns(n, range(2, 7)):
        def check(m=m):
            rng = _rng(seed, "pencils", m)
            for t in range(trials):
                msg = _pencil_roundtrip(rng, m)
                if msg:
                    return f"trial {t}: {msg}"
        items.append(_timed(f"n={m}", check))
    return items


# 6 -------------------------------------------------------------------------------

def suite_decompose(n=None, trials=None, seed=0) -> list[Item]:
    trials = 5 if trials is None else trials
    items = []
    for m in _ns(n, range(2, 6)):
        def check(m=m):
            rng = _rng(seed, "decompose", m)
            for k in range(2, m + 1):
                for t in range(trials):
                    p = rg.random_beta_pencil(rng, k)
                    (x,) = rg.random_points(rng, 1)
                    fixed = rg.random_scheme(rng, m - k, avoid=[x]).components if m > k else ()
                    samples = [
                        PointedScheme.from_components(list(fixed) + [make_component(x, p.member(lam, 1))])
                        for lam in (0, 1, 2)
                    ]
                    d = decompose_global(samples)
                    if d.point != x or d.k != k or set(d.fixed) != set(fixed) or d.local.eta != p.eta:
                        return f"k={k} trial {t}: wrong decomposition"
                    try:
                        decompose_global(rg.two_moving_fake(rng, p))
                        return f"k={k} trial {t}: two moving points accepted"
                    except NotBetaN:
                        pass
        items.append(_timed(f"n={m}", check))
    return items


# 7 -------------------------------------------------------------------------------

def _form_pencils(seed: int, n: int, trials: int):
    rng = _rng(seed, "form-pencils", n)
    return [rg.random_form_pencil(rng, n) for _ in range(trials)], rng


def suite_binform_class(n=None, trials=None, seed=0) -> list[Item]:
    trials = 25 if trials is None else trials
    items = []
    for m in _ns(n, range(2, 7)):
        def check(m=m):
            pencils, rng = _form_pencils(seed, m, trials)
            for t, p in enumerate(pencils):
                probe = p.point(1, rng.randint(-5, 5))
                if p.F(*p.parameter(probe)) == 0 and p.G(*p.parameter(probe)) == 0:
                    probe = p.point(1, 7)
                if pencil_D_degree(p, probe) != 1:
                    return f"trial {t}: D-degree != 1"
                if pencil_B_degree(p) != 2 * (m - 1):
                    return f"trial {t}: B-degree != {2 * (m - 1)}"
                c = pencil_class(p)
                if c != line_class(m):
                    return f"trial {t}: class {c}"
                if pair(very_ample_class(m), c) != 1:
                    return f"trial {t}: degree != 1"
        items.append(_timed(f"n={m}", check))
    return items


# 8 -------------------------------------------------------------------------------

def split_members(p, extra: int = 2, bound: int = 3) -> list[PointedScheme]:
    """(1:0), (0:1) and up to ``extra`` further members that split over Q."""
    out = [embed_member(p, 1, 0), embed_member(p, 0, 1)]
    found = 0
    for lam in range(1, bound + 1):
        for mu in range(-bound, bound + 1):
            if found >= extra or mu == 0:
                continue
            try:
                out.append(embed_member(p, lam, mu))
                found += 1
            except NotSplit:
                pass
    return out


def suite_line_sections(n=None, trials=None, seed=0) -> list[Item]:
    trials = 25 if trials is None else trials
    items = []
    for m in _ns(n, range(2, 7)):
        def check(m=m):
            pencils, _ = _form_pencils(seed, m, trials)
            for t, p in enumerate(pencils):
                members = split_members(p)
                if any(s.length != m for s in members):
                    return f"trial {t}: member of wrong length"
                want = multiples_of(p.line, m - 1)
                for s in members:
                    if h0_ideal_twist(s, m - 1) != want:
                        return f"trial {t}: h0(I(n-1)) differs from p*(forms of degree n-2)"
                line = collinear_support(members)
                if line is None or line != p.line.normalized():
                    return f"trial {t}: collinear_support gave {line}"
        items.append(_timed(f"n={m}", check))
    return items


# 9 -------------------------------------------------------------------------------

def suite_phi1_fibers(n=None, trials=None, seed=0) -> list[Item]:
    trials = 50 if trials is None else trials
    items = []
    for m in _ns(n, range(3, 6)):
        def collinear(m=m):
            rng = _rng(seed, "phi1-collinear", m)
            for t in range(trials):
                L = rg.random_line(rng)
                xi1 = rg.random_collinear_scheme(rng, m, L)
                xi2 = rg.random_collinear_scheme(rng, m, L)
                for xi in (xi1, xi2):
                    f = phi1_fiber(xi)
                    if not isinstance(f, LineFiber) or f.line != L.normalized():
                        return f"trial {t}: fibre {f.to_json()} for a scheme on {L}"
                if xi1 != xi2 and h0_ideal_twist(xi1, m - 1) != h0_ideal_twist(xi2, m - 1):
                    return f"trial {t}: phi_1 separates two schemes on {L}"

        def generic(m=m):
            rng = _rng(seed, "phi1-generic", m)
            for t in range(trials):
                xi = rg.random_scheme(rng, m)
                f = phi1_fiber(xi)
                line = collinear_support([xi])
                if line is None and not isinstance(f, PointFiber):
                    return f"trial {t}: non-collinear scheme gave {f.to_json()}"
                if line is not None and (not isinstance(f, LineFiber) or f.line != line):
                    return f"trial {t}: collinear scheme gave {f.to_json()}"

        items.append(_timed(f"n={m} collinear", collinear))
        items.append(_timed(f"n={m} generic", generic))
    return items


# 10 ------------------------------------------------------------------------------

def suite_dimensions(n=None, trials=None, seed=0) -> list[Item]:
    trials = 100 if trials is None else trials

    def h0_laws():
        rng = _rng(seed, "dimensions", n)
        for t in range(trials):
            m = n if n is not None else 1 + t % 6
            xi = rg.random_scheme(rng, m)
            for deg, want in ((m - 1, comb(m + 1, 2) - m), (m, comb(m + 2, 2) - m)):
                got = h0_ideal_twist(xi, deg).dim
                if got != want:
                    return f"trial {t}: h0(I({deg})) = {got}, expected {want} (n={m})"

    def moduli():
        for m in _ns(n, range(2, 51)):
            assert moduli_dim_beta_n(m) == (2 * m - 2, 2 * m - 3), f"beta_n at n={m}"
            assert moduli_dim_line_class(m) == (2 * m, 2 * m), f"line class at n={m}"
            assert moduli_dim_grass_bundle(m) == 2 * m, f"bundle at n={m}"

    def theta_pencil():
        rng = _rng(seed, "theta", 0)
        th = theta(TruncRingCtx(3))
        assert len(socle(th)) == 2, "socle(theta) != 2"
        eta = th.restrict(2)
        assert pencil_family_dimension(eta) == 0
        fams = [build_pencil(eta, *rg.random_socle_pair(rng, eta)) for _ in range(5)]
        for p in fams[1:]:
            assert p.span == fams[0].span, "pencils through m^2 have different spans"
            witness = fams[0].subspace_pencil()
            for lam, mu in ((1, 0), (0, 1), (2, 3)):
                assert witness.contains_subspace(p.member(lam, mu).rows), "member outside the first pencil"

    return [_timed("h0 dimension laws", h0_laws), _timed("moduli dimensions", moduli),
            _timed("theta socle and pencil uniqueness", theta_pencil)]


# 11 ------------------------------------------------------------------------------

def partition_count(n: int) -> int:
    """p(n) from the recurrence for partitions into parts of size at most k."""
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def suite_monomial_count(n=None, trials=None, seed=0) -> list[Item]:
    items = []
    for m in _ns(n, range(1, 11)):
        def check(m=m):
            ideals = enumerate_monomial_ideals(m)
            want = partition_count(m)
            if len(ideals) != want:
                return f"{len(ideals)} ideals, p({m}) = {want}"
            if len(set(ideals)) != len(ideals):
                return "duplicate ideals"
            if any(I.colength != m for I in ideals):
                return "wrong colength"
        items.append(_timed(f"n={m}", check))
    return items


SUITES: dict[str, tuple[int, Callable[..., list[Item]]]] = {
    "pairing": (1, suite_pairing),
    "deg1": (2, suite_deg1),
    "kva": (3, suite_kva),
    "lemma-4-7": (4, suite_common_part),
    "pencils": (5, suite_pencils),
    "decompose": (6, suite_decompose),
    "binform-class": (7, suite_binform_class),
    "lemma-5-3": (8, suite_line_sections),
    "phi1-fibers": (9, suite_phi1_fibers),
    "dimensions": (10, suite_dimensions),
    "monomial-count": (11, suite_monomial_count),
}


def run_suite(name: str, n: int | None = None, trials: int | None = None, seed: int = rg.DEFAULT_SEED) -> Report:
    if name not in SUITES:
        raise UnknownSuite(name)
    t0 = time.perf_counter()
    items = SUITES[name][1](n=n, trials=trials, seed=seed)
    return Report(name, seed, items, time.perf_counter() - t0)
