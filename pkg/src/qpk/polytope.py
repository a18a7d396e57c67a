"""Exact H-representations of the measure sets J_E(pi) and J_*(pi).

A polytope here is a list of rational equality constraints on a measure
``mu``; nonnegativity and total mass 1 are implicit.  Vertices are found by
enumerating basic feasible solutions with exact integer arithmetic (see
``_backend``), so emptiness, membership and equality of polytopes are all
decided without tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import NamedTuple, Sequence

from . import _backend
from .errors import DimensionTooLarge, NotMember, PreconditionError, SpaceMismatch
from .kernel import Kernel, apply, in_JE, require_measurable
from .space import ONE, ZERO, Partition, indicator, integrate, is_trivial, mass, reweight, scale

MAX_DIMENSION = 12

Vertex = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class HPolytope:
    """``{mu >= 0 : sum(mu) = 1, <row, mu> = rhs for each equality}``."""

    n: int
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    labels: tuple = field(default=(), compare=False, hash=False)

    def __post_init__(self):
        for row, _ in self.equalities:
            if len(row) != self.n:
                raise SpaceMismatch(f"constraint row of length {len(row)} in dimension {self.n}")

    def contains(self, mu: Sequence[Fraction]) -> bool:
        if len(mu) != self.n:
            raise SpaceMismatch(f"measure of length {len(mu)} in dimension {self.n}")
        if any(m < 0 for m in mu) or sum(mu) != 1:
            return False
        return all(sum((a * m for a, m in zip(row, mu) if a), ZERO) == rhs
                   for row, rhs in self.equalities)

    def nondegenerate(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        return [(row, rhs) for row, rhs in self.equalities if any(row) or rhs]

    def vertices(self) -> tuple[Vertex, ...]:
        return enum_vertices(self)

    def is_empty(self) -> bool:
        return not enum_vertices(self)


def je_hrep(pi: Kernel, partition: Partition | None = None) -> HPolytope:
    """One constraint per (atom A, point y): mu(y)[y in A] - sum_{x in A} pi(x,y) mu(x) = 0."""
    e = require_measurable(pi, partition)
    n = pi.n
    eqs, labels = [], []
    for atom in e.blocks:
        inside = set(atom)
        for y in range(n):
            row = [ZERO] * n
            for x in atom:
                row[x] -= pi.rows[x][y]
            if y in inside:
                row[y] += ONE
            eqs.append((tuple(row), ZERO))
            labels.append((atom, y))
    return HPolytope(n, tuple(eqs), tuple(labels))


def jstar_hrep(pi: Kernel) -> HPolytope:
    """One constraint per point y: (mu pi)(y) - mu(y) = 0."""
    n = pi.n
    eqs = []
    for y in range(n):
        row = [pi.rows[x][y] for x in range(n)]
        row[y] -= ONE
        eqs.append((tuple(row), ZERO))
    return HPolytope(n, tuple(eqs), tuple(("fixed", y) for y in range(n)))


def intersect(*polytopes: HPolytope) -> HPolytope:
    if not polytopes:
        raise ValueError("need at least one polytope")
    n = polytopes[0].n
    if any(h.n != n for h in polytopes):
        raise SpaceMismatch("polytopes live in different dimensions")
    eqs = tuple(e for h in polytopes for e in h.equalities)
    labels = tuple((i, lab) for i, h in enumerate(polytopes) for lab in h.labels)
    return HPolytope(n, eqs, labels)


def integer_system(h: HPolytope) -> list[list[int]] | None:
    """Augmented integer rows for the equalities plus normalization.

    Identically zero rows are dropped; ``None`` signals a zero row with
    nonzero right-hand side (an empty polytope).
    """
    rows = []
    seen = set()
    for coeffs, rhs in h.nondegenerate():
        if not any(coeffs):
            return None
        den = lcm(*(q.denominator for q in coeffs), rhs.denominator)
        ints = tuple(int(q * den) for q in coeffs) + (int(rhs * den),)
        if ints not in seen:
            seen.add(ints)
            rows.append(list(ints))
    rows.append([1] * h.n + [1])
    return rows


def enum_vertices(h: HPolytope, backend: str | None = None) -> tuple[Vertex, ...]:
    """Exact vertex set, deduplicated and sorted lexicographically."""
    if h.n > MAX_DIMENSION:
        raise DimensionTooLarge(f"dimension {h.n} exceeds the enumeration guard {MAX_DIMENSION}")
    return _enum_cached(h, backend or _backend.BACKEND)


@lru_cache(maxsize=8192)
def _enum_cached(h: HPolytope, backend: str) -> tuple[Vertex, ...]:
    rows = integer_system(h)
    if rows is None:
        return ()
    reduced = _backend.row_reduce(rows, h.n, backend)
    if reduced is None:
        return ()
    found = set(_backend.basic_solutions(reduced, h.n, backend))
    verts = {tuple(Fraction(v, t[-1]) for v in t[:-1]) for t in found}
    return tuple(sorted(verts))


def je_vertices(pi: Kernel, partition: Partition | None = None) -> tuple[Vertex, ...]:
    return enum_vertices(je_hrep(pi, partition))


def jstar_vertices(pi: Kernel) -> tuple[Vertex, ...]:
    return enum_vertices(jstar_hrep(pi))


def contained_in(a: HPolytope, b: HPolytope) -> bool:
    """Every vertex of ``a`` satisfies the constraints of ``b``."""
    return all(b.contains(v) for v in enum_vertices(a))


def same_polytope(a: HPolytope, b: HPolytope) -> bool:
    return contained_in(a, b) and contained_in(b, a)


def for_all_members(h: HPolytope, predicate) -> bool:
    """Check a condition that is linear in mu on every member via the vertices."""
    return all(predicate(v) for v in enum_vertices(h))


def extreme_members(pi: Kernel, partition: Partition | None = None) -> tuple[Vertex, ...]:
    """Extreme points of J_E(pi), found among the support rows.

    A member is extreme exactly when it is trivial on E, and every trivial
    member is some row ``eps_x pi`` with ``x`` in the support, so only the
    distinct support rows need testing.
    """
    e = require_measurable(pi, partition)
    rows = {pi.rows[x] for x in pi.support}
    return tuple(sorted(r for r in rows if in_JE(r, pi, e) and is_trivial(r, e)))


class Split(NamedTuple):
    weight: Fraction
    first: Vertex
    second: Vertex
    event: tuple[int, ...]


def split_nontrivial(mu: Sequence[Fraction], pi: Kernel, partition: Partition | None = None) -> Split | None:
    """Write a non-trivial member as a proper mixture of two other members.

    Returns None for members that are trivial on E.  Otherwise picks the first
    atom ``A`` with ``0 < mu(A) < 1`` and conditions ``mu`` on ``A`` and on its
    complement.
    """
    e = require_measurable(pi, partition)
    mu = tuple(mu)
    if not in_JE(mu, pi, e):
        raise NotMember("measure is not in J_E(pi)")
    for atom in e.blocks:
        a = mass(mu, atom)
        if ZERO < a < ONE:
            inside = indicator(atom, pi.n)
            outside = tuple(ONE - v for v in inside)
            first = reweight(mu, scale(1 / a, inside))
            second = reweight(mu, scale(1 / (1 - a), outside))
            return Split(a, first, second, atom)
    return None


class Reweighting(NamedTuple):
    ok: bool
    density: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def reweight_check(mu: Sequence[Fraction], h: Sequence[Fraction], pi: Kernel,
                   partition: Partition | None = None) -> Reweighting:
    """Decide whether the reweighted measure ``mu.h`` stays in J_E(pi).

    When it does, ``pi(h)`` is an E-measurable density with
    ``mu(h f) = mu(pi(h) f)`` for every f; that identity is checked on the
    singleton indicators before the density is returned.
    """
    e = require_measurable(pi, partition)
    mu, h = tuple(mu), tuple(h)
    if len(h) != pi.n or any(v < 0 for v in h):
        raise PreconditionError("density must be a nonnegative function on the space")
    if not in_JE(mu, pi, e):
        raise PreconditionError("measure is not in J_E(pi)")
    if integrate(mu, h) != 1:
        raise PreconditionError("density must integrate to 1")
    if not in_JE(reweight(mu, h), pi, e):
        return Reweighting(False)
    h2 = apply(pi, h)
    if any(mu[y] * h[y] != mu[y] * h2[y] for y in range(pi.n)):
        raise AssertionError("pi(h) failed to reproduce mu.h on a singleton")
    return Reweighting(True, h2)
