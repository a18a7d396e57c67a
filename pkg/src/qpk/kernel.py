"""Quasi-probability kernels on a finite space.

A kernel is an ``n x n`` nonnegative rational matrix whose rows sum to exactly
0 or exactly 1, declared measurable with respect to a governing partition
(rows are equal inside each block).  Row ``x`` is the measure ``eps_x pi``;
applying the kernel to a function is a matrix-vector product and pushing a
measure through it is a vector-matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import (
    MeasurabilityError,
    NegativeEntry,
    RowMassError,
    SpaceMismatch,
    ValidationError,
)
from .space import (
    ONE,
    ZERO,
    Partition,
    fmt,
    is_trivial,
    mass,
    meet,
    rational,
    _canonical,
)

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Witness:
    """Where a property check failed.

    ``atom`` and ``point`` locate the failing identity; ``target`` is the
    offending singleton ``y`` for constraint checks; ``lhs``/``rhs`` are the two
    sides that disagreed.
    """

    check: str
    point: int | None = None
    atom: tuple[int, ...] | None = None
    target: int | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def as_dict(self) -> dict:
        out: dict = {"check": self.check}
        if self.point is not None:
            out["point"] = self.point
        if self.atom is not None:
            out["atom"] = list(self.atom)
        if self.target is not None:
            out["target"] = self.target
        if self.lhs is not None:
            out["lhs"] = fmt(self.lhs)
        if self.rhs is not None:
            out["rhs"] = fmt(self.rhs)
        return out


class Verdict(NamedTuple):
    ok: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Kernel:
    rows: Matrix
    governing: Partition = field(compare=True)

    def __post_init__(self):
        rows = tuple(tuple(rational(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = self.governing.n
        if len(rows) != n or any(len(r) != n for r in rows):
            raise SpaceMismatch(f"kernel must be {n}x{n} to match its partition")
        if self.governing.ground != frozenset(range(n)):
            raise SpaceMismatch("governing partition must cover the whole space")
        for x, r in enumerate(rows):
            for y, v in enumerate(r):
                if v < 0:
                    raise NegativeEntry(f"entry ({x},{y}) = {fmt(v)} is negative")
            s = sum(r)
            if s != 0 and s != 1:
                raise RowMassError(f"row {x} has mass {fmt(s)}, expected 0 or 1")
        _check_block_constant(rows, self.governing)

    @property
    def n(self) -> int:
        return len(self.rows)

    def row(self, x: int) -> tuple[Fraction, ...]:
        return self.rows[x]

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(x for x, r in enumerate(self.rows) if sum(r) == 1)

    def with_governing(self, partition: Partition) -> Kernel:
        return Kernel(self.rows, partition)

    def __str__(self) -> str:
        body = "; ".join(" ".join(fmt(v) for v in r) for r in self.rows)
        return f"Kernel[{self.governing}]({body})"


def _check_block_constant(rows: Matrix, partition: Partition) -> None:
    for b in partition.blocks:
        first = rows[b[0]]
        for x in b[1:]:
            if rows[x] != first:
                raise MeasurabilityError(
                    f"rows {b[0]} and {x} differ inside block {list(b)}", block=b
                )


def validate_kernel(rows: Sequence[Sequence], governing: Partition) -> Kernel:
    return Kernel(tuple(tuple(r) for r in rows), governing)


def is_measurable(pi: Kernel, partition: Partition) -> bool:
    if partition.n != pi.n:
        raise SpaceMismatch("partition and kernel live on different spaces")
    return all(pi.rows[x] == pi.rows[b[0]] for b in partition.blocks for x in b[1:])


def require_measurable(pi: Kernel, partition: Partition | None) -> Partition:
    """Return the partition to use, checking the kernel respects it."""
    if partition is None:
        return pi.governing
    if partition.n != pi.n or partition.ground != frozenset(range(pi.n)):
        raise SpaceMismatch("partition and kernel live on different spaces")
    if partition != pi.governing:
        _check_block_constant(pi.rows, partition)
    return partition


def zero_kernel(partition: Partition) -> Kernel:
    n = partition.n
    return Kernel(tuple((ZERO,) * n for _ in range(n)), partition)


def identity_kernel(partition: Partition) -> Kernel:
    n = partition.n
    return Kernel(tuple(tuple(ONE if x == y else ZERO for y in range(n)) for x in range(n)), partition)


def support(pi: Kernel) -> frozenset[int]:
    return pi.support


def _rows(k) -> Matrix:
    return k.rows if isinstance(k, Kernel) else k


def apply(pi, f: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """pi(f)(x) = sum_y pi(x, y) f(y)."""
    rows = _rows(pi)
    if len(f) != len(rows):
        raise SpaceMismatch(f"function has length {len(f)}, kernel acts on {len(rows)} points")
    return tuple(sum((a * b for a, b in zip(r, f) if a), ZERO) for r in rows)


def push(mu: Sequence[Fraction], pi) -> tuple[Fraction, ...]:
    """(mu pi)(y) = sum_x mu(x) pi(x, y)."""
    rows = _rows(pi)
    n = len(rows)
    if len(mu) != n:
        raise SpaceMismatch(f"measure has length {len(mu)}, kernel acts on {n} points")
    out = [ZERO] * n
    for m, r in zip(mu, rows):
        if m:
            for y, v in enumerate(r):
                if v:
                    out[y] += m * v
    return tuple(out)


def compose(rho, tau) -> Matrix:
    """Matrix of ``rho tau``, i.e. ``(rho tau)(f) = rho(tau(f))``.

    The product is returned as a raw matrix: a support row of ``rho`` feeding
    a zero row of ``tau`` gives row mass strictly between 0 and 1, so callers
    needing a kernel must pass the result through :func:`validate_kernel`.
    """
    a, b = _rows(rho), _rows(tau)
    if len(a) != len(b):
        raise SpaceMismatch("kernels act on different spaces")
    return tuple(push(r, b) for r in a)


# -- J-set membership ----------------------------------------------------------

def je_violation(mu: Sequence[Fraction], pi: Kernel, partition: Partition | None = None):
    """First failing constraint ``mu({y} & A) = mu(A) pi_A(y)``, or None.

    Returns ``(atom, y, lhs, rhs)``.  Atoms and singletons are enough because
    both sides are additive in the set arguments.
    """
    e = require_measurable(pi, partition)
    if len(mu) != pi.n:
        raise SpaceMismatch(f"measure has length {len(mu)}, kernel acts on {pi.n} points")
    for atom in e.blocks:
        m = mass(mu, atom)
        row = pi.rows[atom[0]]
        inside = set(atom)
        for y in range(pi.n):
            lhs = mu[y] if y in inside else ZERO
            rhs = m * row[y]
            if lhs != rhs:
                return atom, y, lhs, rhs
    return None


def in_JE(mu: Sequence[Fraction], pi: Kernel, partition: Partition | None = None) -> bool:
    if any(m < 0 for m in mu):
        raise ValidationError("measure has a negative entry")
    if sum(mu) != 1:
        return False
    return je_violation(mu, pi, partition) is None


def in_Jstar(mu: Sequence[Fraction], pi: Kernel) -> bool:
    if any(m < 0 for m in mu):
        raise ValidationError("measure has a negative entry")
    if sum(mu) != 1:
        return False
    return push(mu, pi) == tuple(mu)


# -- classification ------------------------------------------------------------

def is_proper(pi: Kernel, partition: Partition | None = None) -> Verdict:
    """pi(I_A) = I_A pi(1) for every atom A.

    For each point its own atom is tested first, so the witness names the
    atom on which the row fails to concentrate.
    """
    e = require_measurable(pi, partition)
    for x, row in enumerate(pi.rows):
        total = sum(row)
        own = e.atom_index(x)
        order = [own] + [i for i in range(len(e.blocks)) if i != own]
        for i in order:
            atom = e.blocks[i]
            lhs = sum((row[y] for y in atom), ZERO)
            rhs = total if i == own else ZERO
            if lhs != rhs:
                return Verdict(False, Witness("proper", point=x, atom=atom, lhs=lhs, rhs=rhs))
    return Verdict(True)


def is_adapted(pi: Kernel, partition: Partition | None = None) -> Verdict:
    e = require_measurable(pi, partition)
    checked: dict[tuple, bool] = {}
    for x in sorted(pi.support):
        row = pi.rows[x]
        if row in checked:
            continue
        bad = je_violation(row, pi, e)
        checked[row] = bad is None
        if bad is not None:
            atom, y, lhs, rhs = bad
            return Verdict(False, Witness("adapted", point=x, atom=atom, target=y, lhs=lhs, rhs=rhs))
    return Verdict(True)


def delta_set(pi: Kernel, mu: Sequence[Fraction]) -> frozenset[int]:
    mu = tuple(mu)
    return frozenset(x for x in pi.support if pi.rows[x] == mu)


def delta_class(pi: Kernel, x: int) -> frozenset[int]:
    if x not in pi.support:
        return frozenset()
    return delta_set(pi, pi.rows[x])


def delta_classes(pi: Kernel) -> list[tuple[int, ...]]:
    groups: dict[tuple, list[int]] = {}
    for x in sorted(pi.support):
        groups.setdefault(pi.rows[x], []).append(x)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def _concentrated_on_classes(pi: Kernel) -> Verdict:
    classes = {x: c for c in delta_classes(pi) for x in c}
    for x in sorted(pi.support):
        m = mass(pi.rows[x], classes[x])
        if m != 1:
            return Verdict(False, Witness("delta-class", point=x, atom=classes[x], lhs=m, rhs=ONE))
    return Verdict(True)


def _rows_trivial(pi: Kernel, e: Partition) -> Verdict:
    for x in sorted(pi.support):
        row = pi.rows[x]
        if not is_trivial(row, e):
            atom = next(b for b in e.blocks if mass(row, b) not in (ZERO, ONE))
            return Verdict(False, Witness("trivial", point=x, atom=atom, lhs=mass(row, atom)))
    return Verdict(True)


def is_normal_definitional(pi: Kernel, partition: Partition | None = None) -> Verdict:
    """Adapted, and every support row is trivial on the partition."""
    e = require_measurable(pi, partition)
    adapted = is_adapted(pi, e)
    if not adapted:
        return adapted
    return _rows_trivial(pi, e)


def is_normal(pi: Kernel, partition: Partition | None = None) -> Verdict:
    """Adapted, and every support row gives its own Delta-class mass 1."""
    e = require_measurable(pi, partition)
    adapted = is_adapted(pi, e)
    verdict = adapted if not adapted else _concentrated_on_classes(pi)
    if __debug__:
        assert bool(verdict) == bool(is_normal_definitional(pi, e)), (
            "delta-class criterion disagrees with the definition of normality"
        )
    return verdict


# -- induced partitions ----------------------------------------------------------

def sigma_pi(pi: Kernel) -> Partition:
    """Atoms of the least sigma-algebra making every column measurable."""
    groups: dict[tuple, list[int]] = {}
    for x, r in enumerate(pi.rows):
        groups.setdefault(r, []).append(x)
    return _canonical(pi.n, groups.values())


def n_pi(pi: Kernel) -> Partition:
    """Delta-classes of support points plus a singleton per off-support point."""
    blocks = list(delta_classes(pi))
    blocks += [(x,) for x in range(pi.n) if x not in pi.support]
    return _canonical(pi.n, blocks)


def e_pi(pi: Kernel, partition: Partition | None = None) -> Partition:
    e = require_measurable(pi, partition)
    return meet(e, n_pi(pi))
