"""Finite measurable spaces, sub-sigma-algebras as partitions, and measures.

Points of a space of size ``n`` are the integers ``0..n-1``.  The full
sigma-algebra is always the power set; every sub-sigma-algebra is stored by
its atoms as a :class:`Partition`.  Measures and bounded functions are plain
tuples of :class:`~fractions.Fraction`, subsets are ``frozenset`` of indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    CoverageError,
    NotProbability,
    OverlapError,
    ParseError,
    SpaceMismatch,
    ValidationError,
)

Vector = tuple  # tuple[Fraction, ...]; measures and functions alike
Subset = frozenset

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(value) -> Fraction:
    """Parse an exact rational from ``"p/q"``, ``"p"``, an int or a Fraction.

    Floats are refused: they cannot carry the identities this library checks.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"boolean {value!r} is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise ParseError(f"malformed rational {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise ParseError(f"unsupported rational {value!r} of type {type(value).__name__}")


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_vec(v: Iterable[Fraction]) -> list[str]:
    return [fmt(q) for q in v]


@dataclass(frozen=True)
class FiniteSpace:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("a finite space needs at least one point")

    @property
    def points(self) -> range:
        return range(self.n)

    def discrete(self) -> Partition:
        return discrete(self.n)

    def trivial(self) -> Partition:
        return trivial(self.n)


@dataclass(frozen=True)
class Partition:
    """Atoms of a sigma-algebra on ``0..n-1`` (or on a subset, for traces).

    Blocks are sorted internally and ordered by least element, so equality of
    partitions is equality of the underlying sigma-algebras.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @cached_property
    def ground(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    @cached_property
    def _atom_index(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def atom_index(self, x: int) -> int:
        return self._atom_index[x]

    def atom_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[self._atom_index[x]]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.blocks)

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def to_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def _canonical(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    bs = [tuple(sorted(b)) for b in blocks]
    bs = [b for b in bs if b]
    bs.sort(key=lambda b: b[0])
    return Partition(n, tuple(bs))


def build_partition(blocks: Iterable[Iterable[int]], n: int | FiniteSpace) -> Partition:
    if isinstance(n, FiniteSpace):
        n = n.n
    if n < 1:
        raise ValidationError("a finite space needs at least one point")
    seen: set[int] = set()
    cleaned = []
    for block in blocks:
        block = list(block)
        if not block:
            raise ValidationError("empty block")
        for x in block:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise ValidationError(f"point {x!r} out of range 0..{n - 1}")
            if x in seen:
                raise OverlapError(f"point {x} lies in more than one block")
            seen.add(x)
        cleaned.append(block)
    missing = sorted(set(range(n)) - seen)
    if missing:
        raise CoverageError(f"points {missing} are not covered by any block")
    return _canonical(n, cleaned)


def discrete(n: int) -> Partition:
    return Partition(n, tuple((x,) for x in range(n)))


def trivial(n: int) -> Partition:
    return Partition(n, (tuple(range(n)),))


def _same_space(p: Partition, q: Partition) -> None:
    if p.n != q.n or p.ground != q.ground:
        raise SpaceMismatch(f"partitions live on different spaces: {p} vs {q}")


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def meet(p: Partition, q: Partition) -> Partition:
    """Partition of the intersection sigma(p) & sigma(q).

    Points are merged whenever some block of either partition contains both;
    the connected components of that overlap relation are the atoms.
    """
    _same_space(p, q)
    uf = _UnionFind(p.ground)
    for part in (p, q):
        for b in part.blocks:
            for x in b[1:]:
                uf.union(b[0], x)
    groups: dict[int, list[int]] = {}
    for x in sorted(p.ground):
        groups.setdefault(uf.find(x), []).append(x)
    return _canonical(p.n, groups.values())


def join(p: Partition, q: Partition) -> Partition:
    """Coarsest common refinement (atoms of sigma(p) joined with sigma(q))."""
    _same_space(p, q)
    groups: dict[tuple[int, int], list[int]] = {}
    for x in sorted(p.ground):
        groups.setdefault((p.atom_index(x), q.atom_index(x)), []).append(x)
    return _canonical(p.n, groups.values())


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of q is a union of blocks of p."""
    return all(len({q.atom_index(x) for x in b}) == 1 for b in p.blocks)


def compare(p: Partition, q: Partition) -> str:
    """One of ``"finer"``, ``"coarser"``, ``"equal"``, ``"incomparable"``.

    ``"finer"`` means p is strictly finer than q, i.e. sigma(q) is a proper
    subset of sigma(p).
    """
    _same_space(p, q)
    pq, qp = refines(p, q), refines(q, p)
    if pq and qp:
        return "equal"
    if pq:
        return "finer"
    if qp:
        return "coarser"
    return "incomparable"


def at_least_as_fine(p: Partition, q: Partition) -> bool:
    return compare(p, q) in ("finer", "equal")


def trace(p: Partition, subset: Iterable[int]) -> Partition:
    """Trace sigma-algebra on ``subset``: nonempty intersections of blocks with it."""
    a = frozenset(subset)
    return _canonical(p.n, ([x for x in b if x in a] for b in p.blocks))


def in_sigma(p: Partition, subset: Iterable[int]) -> bool:
    """Whether ``subset`` is a union of blocks of p."""
    s = frozenset(subset)
    return all(s.issuperset(b) or s.isdisjoint(b) for b in p.blocks)


def sigma_sets(p: Partition) -> Iterator[frozenset[int]]:
    """All members of sigma(p), enumerated as unions of blocks."""
    k = len(p.blocks)
    for size in range(k + 1):
        for combo in combinations(p.blocks, size):
            yield frozenset(x for b in combo for x in b)


def subset(members: Iterable[int], n: int) -> frozenset[int]:
    s = frozenset(members)
    bad = [x for x in s if not 0 <= x < n]
    if bad:
        raise ValidationError(f"points {sorted(bad)} out of range 0..{n - 1}")
    return s


# -- vectors -----------------------------------------------------------------

def vector(values: Iterable, n: int | None = None, what: str = "vector") -> tuple[Fraction, ...]:
    v = tuple(rational(x) for x in values)
    if n is not None and len(v) != n:
        raise SpaceMismatch(f"{what} has length {len(v)}, expected {n}")
    if any(x < 0 for x in v):
        raise ValidationError(f"{what} has a negative entry")
    return v


def measure(values: Iterable, n: int | None = None) -> tuple[Fraction, ...]:
    return vector(values, n, "measure")


def probability(values: Iterable, n: int | None = None) -> tuple[Fraction, ...]:
    v = measure(values, n)
    if sum(v) != 1:
        raise NotProbability(f"total mass {fmt(sum(v))} is not 1")
    return v


def point_mass(x: int, n: int) -> tuple[Fraction, ...]:
    return tuple(ONE if y == x else ZERO for y in range(n))


def indicator(s: Iterable[int], n: int) -> tuple[Fraction, ...]:
    s = frozenset(s)
    return tuple(ONE if y in s else ZERO for y in range(n))


def ones(n: int) -> tuple[Fraction, ...]:
    return (ONE,) * n


def mass(mu: Sequence[Fraction], s: Iterable[int]) -> Fraction:
    return sum((mu[x] for x in s), ZERO)


def integrate(mu: Sequence[Fraction], f: Sequence[Fraction]) -> Fraction:
    return sum((m * v for m, v in zip(mu, f)), ZERO)


def reweight(mu: Sequence[Fraction], h: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """The measure f -> mu(h f)."""
    return tuple(m * v for m, v in zip(mu, h))


def scale(c: Fraction, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(c * x for x in v)


def is_measurable_fn(f: Sequence[Fraction], p: Partition) -> bool:
    if len(f) != p.n:
        raise SpaceMismatch(f"function has length {len(f)}, partition is on {p.n} points")
    return all(f[x] == f[b[0]] for b in p.blocks for x in b[1:])


def is_trivial(mu: Sequence[Fraction], p: Partition) -> bool:
    """Every set of sigma(p) has mu-mass 0 or 1 (checked on atoms)."""
    if len(mu) != p.n:
        raise SpaceMismatch(f"measure has length {len(mu)}, partition is on {p.n} points")
    if any(m < 0 for m in mu) or sum(mu) != 1:
        raise NotProbability("triviality is defined for probability measures only")
    return all(mass(mu, b) in (ZERO, ONE) for b in p.blocks)
