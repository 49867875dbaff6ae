"""Grassmannian points as subspaces, Plücker vectors, and pencils of subspaces.

A subspace is handed around as its reduced row echelon basis (a tuple of
rational rows). The Plücker vector of a k-dimensional subspace lists all k x k
minors of a basis matrix, indexed by k-subsets of the ambient coordinates in
lexicographic order and scaled so the first nonzero entry is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .linalg import Matrix


class DependentRows(ValueError):
    pass


class NotAPencil(ValueError):
    pass


def canonical(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    red, _ = linalg.rref(linalg.as_fraction_rows(rows), ncols)
    return tuple(tuple(r) for r in red)


@dataclass(frozen=True)
class PlueckerVector:
    k: int
    amb: int
    coords: dict[tuple[int, ...], Fraction]  # nonzero entries only

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlueckerVector):
            return NotImplemented
        return (self.k, self.amb, self.coords) == (other.k, other.amb, other.coords)

    def __hash__(self) -> int:
        return hash((self.k, self.amb, tuple(sorted(self.coords.items()))))

    def dense(self) -> list[Fraction]:
        return [self.coords.get(s, Fraction(0)) for s in combinations(range(self.amb), self.k)]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "amb": self.amb,
            "coords": {
                "{" + ",".join(map(str, s)) + "}": str(c) for s, c in sorted(self.coords.items())
            },
        }

    def subspace(self) -> tuple[tuple[Fraction, ...], ...]:
        """Recover the subspace from its coordinates.

        With p the lexicographically first nonzero index set, the vectors
        ``sum_j p[S - {i} + {j}] e_j`` (one per i in S) span the subspace.
        """
        if not self.coords:
            raise ValueError("zero Plücker vector")
        first = min(self.coords)
        rows = []
        for i in first:
            rest = tuple(x for x in first if x != i)
            row = []
            for j in range(self.amb):
                if j in rest:
                    row.append(Fraction(0))
                    continue
                idx = tuple(sorted(rest + (j,)))
                sign = (-1) ** sum(1 for x in rest if x > j) * (-1) ** sum(1 for x in rest if x > i)
                row.append(sign * self.coords.get(idx, Fraction(0)))
            rows.append(row)
        return canonical(rows, self.amb)


def pluecker_coords(rows: Sequence[Sequence], amb: int | None = None) -> PlueckerVector:
    """Plücker vector of the row span of ``rows``.

    The basis is first brought to reduced echelon form R (pivot set P, whose
    minor is then 1). For a k-subset S, the columns of R indexed by S ∩ P are
    unit vectors, so det R[:, S] collapses to a signed minor of size |S \\ P|
    on the rows whose pivots are outside S.
    """
    rows = linalg.as_fraction_rows(rows)
    if amb is None:
        if not rows:
            raise ValueError("ambient dimension needed for the zero subspace")
        amb = len(rows[0])
    red, piv = linalg.rref(rows, amb) if rows else ([], [])
    if len(red) != len(rows):
        raise DependentRows(f"{len(rows)} rows span only a {len(red)}-dimensional space")
    k = len(red)
    pivot_row = {c: r for r, c in enumerate(piv)}
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {(): Fraction(1)}

    def minor(A: tuple[int, ...], B: tuple[int, ...]) -> Fraction:
        # Laplace expansion along the first row; subminors are shared between subsets
        key = (A, B)
        if key in memo:
            return memo[key]
        if not A:
            return Fraction(1)
        row = red[A[0]]
        total = Fraction(0)
        for j, b in enumerate(B):
            if row[b]:
                sub = minor(A[1:], B[:j] + B[j + 1:])
                if sub:
                    total += row[b] * sub if j % 2 == 0 else -row[b] * sub
        memo[key] = total
        return total

    coords: dict[tuple[int, ...], Fraction] = {}
    for S in combinations(range(amb), k):
        hit_rows = [pivot_row[c] for c in S if c in pivot_row]
        hit_pos = [pos for pos, c in enumerate(S) if c in pivot_row]
        hit = set(hit_rows)
        A = tuple(r for r in range(k) if r not in hit)
        B = tuple(c for c in S if c not in pivot_row)
        d = minor(A, B)
        if d == 0:
            continue
        # the unit columns keep their relative order in rows, so the
        # generalized Laplace sign is (-1)^(sum of removed rows + positions)
        if (sum(hit_rows) + sum(hit_pos)) % 2:
            d = -d
        coords[S] = d
    first = min(coords)
    lead = coords[first]
    return PlueckerVector(k, amb, {s: c / lead for s, c in coords.items()})


def pluecker_coords_bruteforce(rows: Sequence[Sequence], amb: int | None = None) -> PlueckerVector:
    """Direct k x k minors; slow, kept as an independent check for small cases."""
    rows = linalg.as_fraction_rows(rows)
    amb = amb if amb is not None else len(rows[0])
    k = len(rows)
    coords = {}
    for S in combinations(range(amb), k):
        d = linalg.det([[r[c] for c in S] for r in rows])
        if d != 0:
            coords[S] = d
    if not coords:
        raise DependentRows("rows are dependent")
    lead = coords[min(coords)]
    return PlueckerVector(k, amb, {s: c / lead for s, c in coords.items()})


def pluecker_relations_hold(p: PlueckerVector) -> bool:
    """Check every quadratic Plücker relation (exhaustive; small cases only).

    For each (k-1)-subset I and (k+1)-subset J:
    sum_{j in J} (-1)^{pos of j in J} p[I + j] p[J - j] = 0,
    with p[I + j] sign-adjusted for sorting.
    """
    k, amb = p.k, p.amb
    if k == 0 or k == amb:
        return True

    def coord(seq: tuple[int, ...]) -> Fraction:
        if len(set(seq)) < len(seq):
            return Fraction(0)
        inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
        val = p.coords.get(tuple(sorted(seq)), Fraction(0))
        return -val if inversions % 2 else val

    for I in combinations(range(amb), k - 1):
        for J in combinations(range(amb), k + 1):
            total = Fraction(0)
            for pos, j in enumerate(J):
                term = coord(I + (j,)) * coord(J[:pos] + J[pos + 1:])
                total += -term if pos % 2 else term
            if total != 0:
                return False
    return True


def gram_matrix(subspaces: Sequence[Sequence[Sequence]]) -> Matrix:
    """Inner products of Plücker vectors without expanding them.

    By Cauchy–Binet, <p(A), p(B)> = det(A B^T) for k x n basis matrices A, B.
    """
    mats = [linalg.as_fraction_rows(s) for s in subspaces]
    return [[linalg.det(linalg.matmul(a, linalg.transpose(b))) for b in mats] for a in mats]


def pluecker_rank(subspaces: Sequence[Sequence[Sequence]]) -> int:
    """Dimension of the span of the Plücker vectors of the given subspaces.

    The standard inner product on the exterior power is positive definite over
    the rationals, so this equals the rank of the Gram matrix.
    """
    return linalg.rank(gram_matrix(subspaces))


@dataclass(frozen=True)
class PencilOfSubspaces:
    """Subspaces ``common + Span(lam*f + mu*g)``, all of dimension ``len(common)+1``."""

    amb: int
    common: tuple[tuple[Fraction, ...], ...]
    span: tuple[tuple[Fraction, ...], ...]
    f: tuple[Fraction, ...]
    g: tuple[Fraction, ...]

    @property
    def k(self) -> int:
        return len(self.common) + 1

    def member(self, lam, mu) -> tuple[tuple[Fraction, ...], ...]:
        lam, mu = Fraction(lam), Fraction(mu)
        if lam == 0 and mu == 0:
            raise ValueError("(0:0) is not a point of the pencil")
        extra = [lam * a + mu * b for a, b in zip(self.f, self.g)]
        return canonical(list(self.common) + [extra], self.amb)

    def contains_subspace(self, rows: Sequence[Sequence]) -> bool:
        """Whether the subspace is a member: contains ``common`` and lies in ``span``."""
        rows = canonical(rows, self.amb)
        if len(rows) != self.k:
            return False
        sp_rows, sp_piv = linalg.rref(self.span, self.amb)
        r_rows, r_piv = linalg.rref(rows, self.amb)
        return all(linalg.in_span(r, sp_rows, sp_piv) for r in rows) and all(
            linalg.in_span(c, r_rows, r_piv) for c in self.common
        )


def pencil_from_two(V1: Sequence[Sequence], V2: Sequence[Sequence], amb: int | None = None) -> PencilOfSubspaces:
    """The pencil through two distinct k-dimensional subspaces meeting in dimension k-1."""
    V1 = linalg.as_fraction_rows(V1)
    V2 = linalg.as_fraction_rows(V2)
    amb = amb if amb is not None else len((V1 or V2)[0])
    c1, c2 = canonical(V1, amb), canonical(V2, amb)
    if len(c1) != len(V1) or len(c2) != len(V2):
        raise DependentRows("basis rows are dependent")
    if len(c1) != len(c2):
        raise NotAPencil("subspaces have different dimensions")
    if c1 == c2:
        raise NotAPencil("the two subspaces coincide")
    k = len(c1)
    common = tuple(tuple(r) for r in linalg.span_intersection([list(r) for r in c1], [list(r) for r in c2], amb))
    if len(common) != k - 1:
        raise NotAPencil(f"intersection has dimension {len(common)}, need {k - 1}")
    span = canonical(list(c1) + list(c2), amb)
    f = _extend_vector(common, c1, amb)
    g = _extend_vector(common, c2, amb)
    return PencilOfSubspaces(amb, common, span, f, g)


def _extend_vector(common, rows, amb) -> tuple[Fraction, ...]:
    """A row of ``rows`` outside the span of ``common``."""
    red, piv = linalg.rref([list(r) for r in common], amb) if common else ([], [])
    for r in rows:
        if not linalg.in_span(r, red, piv):
            return tuple(linalg.reduce_vector(r, red, piv))
    raise NotAPencil("no vector outside the common part")


@dataclass(frozen=True)
class LineFamilyResult:
    is_line: bool
    pencil: PencilOfSubspaces | None
    reason: str = ""
    pluecker_rank: int | None = None


def is_line_family(samples: Sequence[Sequence[Sequence]], amb: int | None = None) -> LineFamilyResult:
    """Decide whether finitely many subspaces lie on one line of the Plücker embedding.

    The pencil witness comes from the first two distinct samples; every other
    sample must contain its common part and lie inside its span. The Plücker
    vectors of the samples must then span exactly a plane (rank 2), checked
    through their Gram matrix.
    """
    canon = []
    for s in samples:
        c = canonical(s, amb)
        if c not in canon:
            canon.append(c)
    if len(canon) < 2:
        raise ValueError("need at least two distinct samples")
    amb = amb if amb is not None else len(canon[0][0])
    try:
        pencil = pencil_from_two(canon[0], canon[1], amb)
    except NotAPencil as exc:
        return LineFamilyResult(False, None, str(exc))
    for s in canon[2:]:
        if not pencil.contains_subspace(s):
            return LineFamilyResult(False, None, "a sample lies outside the pencil")
    r = pluecker_rank(canon)
    if r != 2:
        return LineFamilyResult(False, None, f"Plücker rank {r}", r)
    return LineFamilyResult(True, pencil, "", r)
