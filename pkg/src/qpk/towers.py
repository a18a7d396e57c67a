"""Decreasing chains of partitions carrying one kernel per level.

Infinite towers are modelled by finite chains.  A chain given only by its
partitions and a reference measure is regarded as eventually constant (its
last level repeats forever); a chain with explicit kernels must show its own
stabilization inside the supplied list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

from .errors import ChainOrderError, NotStabilized, PreconditionError, SpaceMismatch, WindowTooLarge
from .kernel import Kernel, compose, in_JE, is_normal, is_proper, require_measurable
from .polytope import contained_in, enum_vertices, intersect, je_hrep, jstar_hrep, same_polytope
from .refine import normal_refinement, proper_refinement, restriction
from .space import ZERO, Partition, at_least_as_fine, mass, meet, probability


@dataclass(frozen=True)
class ChainSpec:
    partitions: tuple[Partition, ...]
    kernels: tuple[Kernel, ...] | None = None
    reference: tuple[Fraction, ...] | None = None

    @property
    def n(self) -> int:
        return self.partitions[0].n

    @property
    def tail(self) -> Partition:
        """Meet of every level: the sigma-algebra contained in all of them."""
        return reduce(meet, self.partitions)

    def __len__(self) -> int:
        return len(self.partitions)


def build_chain(partitions: Sequence[Partition], kernels: Sequence[Kernel] | None = None,
                reference: Sequence | None = None) -> ChainSpec:
    """Validate ordering, measurability and the decreasing J-sets of a chain."""
    partitions = tuple(partitions)
    if not partitions:
        raise ChainOrderError("a chain needs at least one level")
    n = partitions[0].n
    if any(p.n != n for p in partitions):
        raise SpaceMismatch("chain levels live on different spaces")
    for i in range(len(partitions) - 1):
        if not at_least_as_fine(partitions[i], partitions[i + 1]):
            raise ChainOrderError(
                f"level {i + 1} ({partitions[i + 1]}) is not coarser than level {i} ({partitions[i]})",
                level=i + 1,
            )
    ref = probability(reference, n) if reference is not None else None
    if kernels is not None:
        kernels = tuple(kernels)
        if len(kernels) != len(partitions):
            raise ChainOrderError("one kernel per level is required")
        for k, p in zip(kernels, partitions):
            require_measurable(k, p)
        hreps = [je_hrep(k, p) for k, p in zip(kernels, partitions)]
        for i in range(1, len(hreps)):
            for v in enum_vertices(hreps[i]):
                if not hreps[i - 1].contains(v):
                    raise ChainOrderError(
                        f"J-set of level {i} is not contained in that of level {i - 1}",
                        level=i, witness=v,
                    )
    return ChainSpec(partitions, kernels, ref)


def conditional_kernel(mu: Sequence[Fraction], partition: Partition) -> Kernel:
    """Row x is mu conditioned on the atom of x; zero on mu-null atoms."""
    mu = tuple(mu)
    n = partition.n
    rows: list = [None] * n
    for atom in partition.blocks:
        m = mass(mu, atom)
        if m == 0:
            row = (ZERO,) * n
        else:
            inside = set(atom)
            row = tuple(mu[y] / m if y in inside else ZERO for y in range(n))
        for x in atom:
            rows[x] = row
    return Kernel(tuple(rows), partition)


def compatible_step(pi: Kernel, pi_fine: Kernel, coarse: Partition, fine: Partition,
                    mu: Sequence[Fraction]) -> Kernel:
    """Proper ``coarse``-measurable kernel ``rho`` with ``rho pi_fine = rho`` keeping mu.

    Rows of ``pi`` left unchanged by composing with ``pi_fine`` are kept, the
    rest are zeroed, and the result is made proper.
    """
    if not at_least_as_fine(fine, coarse):
        raise PreconditionError(f"{fine} is not finer than {coarse}")
    require_measurable(pi, coarse)
    require_measurable(pi_fine, fine)
    mu = tuple(mu)
    if not in_JE(mu, pi, coarse):
        raise PreconditionError("reference measure is not in J_E(pi)")
    if not in_JE(mu, pi_fine, fine):
        raise PreconditionError("reference measure is not in J_E'(pi')")
    prod = compose(pi, pi_fine)
    d = frozenset(x for x in range(pi.n) if prod[x] == pi.rows[x])
    tau = restriction(pi, d, coarse)
    rho = proper_refinement(tau, coarse).kernel
    if compose(rho, pi_fine) != rho.rows or not in_JE(mu, rho, coarse) or not is_proper(rho, coarse):
        raise AssertionError("compatible step produced a kernel violating its contract")
    return rho


@dataclass(frozen=True)
class TowerResult:
    refined: tuple[Kernel, ...]
    intersection: tuple[tuple[Fraction, ...], ...]
    checks: dict[str, bool] = field(default_factory=dict)
    limit: LimitResult | None = None
    result: Kernel | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def compatible_chain(mu: Sequence[Fraction], chain: ChainSpec) -> TowerResult:
    """Proper kernels rho_n, one per level, with rho_n rho_m = rho_n for m <= n."""
    mu = probability(mu, chain.n)
    parts = chain.partitions
    pis = [conditional_kernel(mu, p) for p in parts]
    rhos = [proper_refinement(pis[0], parts[0]).kernel]
    for i in range(1, len(parts)):
        rhos.append(compatible_step(pis[i], rhos[-1], parts[i], parts[i - 1], mu))
    checks: dict[str, bool] = {}
    for i, (rho, p) in enumerate(zip(rhos, parts)):
        checks[f"proper[{i}]"] = bool(is_proper(rho, p))
        checks[f"member[{i}]"] = in_JE(mu, rho, p)
        for j in range(i + 1):
            checks[f"compatible[{i},{j}]"] = compose(rho, rhos[j]) == rho.rows
    inter = enum_vertices(intersect(*(je_hrep(r, p) for r, p in zip(rhos, parts))))
    return TowerResult(tuple(rhos), inter, checks)


class LimitResult(NamedTuple):
    kernel: Kernel
    stable: frozenset[int]
    full: frozenset[int]
    unstable: frozenset[int]


def limit_kernel(kernels: Sequence[Kernel], window: int = 2, strict: bool = True) -> LimitResult:
    """Pointwise limit of a kernel sequence, read off its last ``window`` terms.

    A point is stable when its row agrees across the window.  The stable set
    is shrunk to the union of whole atoms of the common partition (the meet of
    all governing partitions) so the limit stays measurable; the limit row is
    kept on stable points of mass 1 and zero elsewhere.  In strict mode any
    unstable point raises :class:`NotStabilized`; otherwise those rows are
    zeroed.
    """
    kernels = list(kernels)
    if window < 2:
        raise WindowTooLarge("window must be at least 2")
    if window > len(kernels):
        raise WindowTooLarge(f"window {window} exceeds sequence length {len(kernels)}")
    n = kernels[0].n
    tail = kernels[-window:]
    unstable = frozenset(x for x in range(n) if any(k.rows[x] != tail[0].rows[x] for k in tail[1:]))
    if strict and unstable:
        raise NotStabilized(unstable)
    common = reduce(meet, (k.governing for k in kernels))
    stable = frozenset(x for b in common.blocks if unstable.isdisjoint(b) for x in b)
    last = tail[-1]
    full = frozenset(x for x in stable if x in last.support)
    zero = (ZERO,) * n
    rows = tuple(last.rows[x] if x in full else zero for x in range(n))
    return LimitResult(Kernel(rows, common), stable, full, unstable)


@dataclass(frozen=True)
class TowerRefinement:
    kernel: Kernel
    restriction_set: frozenset[int]
    intersection: tuple[tuple[Fraction, ...], ...]
    normal: bool
    matches_intersection: bool


def _level_refinement(pi: Kernel, partition: Partition) -> Kernel:
    # normal refinement when J_E = J_*; otherwise the proper one, which is normal too
    if same_polytope(je_hrep(pi, partition), jstar_hrep(pi)):
        return normal_refinement(pi, partition).kernel
    return proper_refinement(pi, partition).kernel


def _level_refinements(chain: ChainSpec) -> list[Kernel]:
    return [_level_refinement(k, p) for k, p in zip(chain.kernels, chain.partitions)]


def tower_refine(candidate: Kernel, chain: ChainSpec) -> TowerRefinement:
    """Normal restriction of ``candidate`` whose J-set is the chain's intersection."""
    if chain.kernels is None:
        raise PreconditionError("tower refinement needs a chain with kernels")
    e = require_measurable(candidate, chain.tail)
    levels = _level_refinements(chain)
    inter_h = intersect(*(je_hrep(k, p) for k, p in zip(levels, chain.partitions)))
    if not contained_in(inter_h, je_hrep(candidate, e)):
        raise PreconditionError("intersection of the level J-sets is not inside J_E(candidate)")
    d = frozenset(
        x for x in sorted(candidate.support)
        if all(in_JE(candidate.rows[x], k, p) for k, p in zip(levels, chain.partitions))
    )
    tau = restriction(candidate, d, e)
    rho = normal_refinement(tau, e).kernel
    return TowerRefinement(
        kernel=rho,
        restriction_set=rho.support,
        intersection=enum_vertices(inter_h),
        normal=bool(is_normal(rho, e)),
        matches_intersection=same_polytope(je_hrep(rho, e), inter_h),
    )


def extend_tail(chain: ChainSpec, copies: int) -> ChainSpec:
    """Repeat the last level ``copies`` more times."""
    parts = chain.partitions + (chain.partitions[-1],) * copies
    kernels = None if chain.kernels is None else chain.kernels + (chain.kernels[-1],) * copies
    return ChainSpec(parts, kernels, chain.reference)


def with_conditional_kernels(chain: ChainSpec, mu: Sequence[Fraction] | None = None) -> ChainSpec:
    mu = chain.reference if mu is None else probability(mu, chain.n)
    if mu is None:
        raise PreconditionError("chain has neither kernels nor a reference measure")
    kernels = tuple(conditional_kernel(mu, p) for p in chain.partitions)
    return ChainSpec(chain.partitions, kernels, mu)


def tail_kernel_pipeline(chain: ChainSpec, window: int = 2, strict: bool = True) -> TowerResult:
    """Normal kernel on the tail partition whose J-set is the chain's intersection.

    The level kernels are refined, their limit is taken as the candidate, and
    the candidate is cut down by :func:`tower_refine`.  A chain without
    kernels gets the conditional kernels of its reference measure and is
    extended to show its (eventual) constancy inside the window.
    """
    if chain.kernels is None:
        chain = extend_tail(with_conditional_kernels(chain), window - 1)
    levels = _level_refinements(chain)
    lim = limit_kernel(levels, window, strict)
    refined = tower_refine(lim.kernel, chain)
    e = chain.tail
    checks = {
        "normal": refined.normal,
        "matches_intersection": refined.matches_intersection,
        "refinements_keep_levels": all(
            same_polytope(je_hrep(r, p), je_hrep(k, p))
            for r, k, p in zip(levels, chain.kernels, chain.partitions)
        ),
        "result_measurable": refined.kernel.governing == e,
    }
    return TowerResult(tuple(levels), refined.intersection, checks, lim, refined.kernel)
