"""Restrictions of kernels to E-sets and the refinement constructions.

A restriction keeps the rows of ``pi`` on a set ``D`` in sigma(E) and zeroes
the rest; it is a refinement when it leaves J_E unchanged, which happens
exactly when every member of J_E(pi) gives ``D`` full mass.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable

from .errors import NotFull, NotMeasurableSet, NotRestriction, PreconditionError
from .kernel import Kernel, is_normal, is_proper, require_measurable, sigma_pi
from .polytope import for_all_members, je_hrep, jstar_hrep, same_polytope
from .space import ZERO, Partition, in_sigma, mass, trace


@dataclass(frozen=True)
class Certificate:
    refinement: bool
    proper: bool
    normal: bool
    measurable_set: bool
    empty: bool

    def as_dict(self) -> dict[str, bool]:
        return asdict(self)


@dataclass(frozen=True)
class RefinementResult:
    kernel: Kernel
    restriction_set: frozenset[int]
    certificate: Certificate


def restriction(pi: Kernel, d: Iterable[int], partition: Partition | None = None) -> Kernel:
    e = require_measurable(pi, partition)
    d = frozenset(d)
    if not in_sigma(e, d):
        raise NotMeasurableSet(f"{sorted(d)} is not a union of blocks of {e}")
    zero = (ZERO,) * pi.n
    return Kernel(tuple(r if x in d else zero for x, r in enumerate(pi.rows)), e)


def restriction_set(rho: Kernel, pi: Kernel) -> frozenset[int]:
    """Support of ``rho`` after checking ``rho`` is a restriction of ``pi``."""
    if rho.n != pi.n:
        raise NotRestriction("kernels live on different spaces")
    for x in range(pi.n):
        if rho.rows[x] != pi.rows[x] and any(rho.rows[x]):
            raise NotRestriction(f"row {x} is neither the original row nor zero")
    return rho.support


def is_refinement(rho: Kernel, pi: Kernel, partition: Partition | None = None) -> bool:
    """Every vertex of J_E(pi) gives the restriction set mass 1."""
    e = require_measurable(pi, partition)
    require_measurable(rho, e)
    d = restriction_set(rho, pi)
    return for_all_members(je_hrep(pi, e), lambda mu: mass(mu, d) == 1)


def is_full(d: Iterable[int], pi: Kernel, partition: Partition | None = None) -> bool:
    e = require_measurable(pi, partition)
    d = frozenset(d)
    if not in_sigma(e, d):
        return False
    return for_all_members(je_hrep(pi, e), lambda mu: mass(mu, d) == 1)


def certify(rho: Kernel, pi: Kernel, d: frozenset[int], partition: Partition) -> Certificate:
    return Certificate(
        refinement=is_refinement(rho, pi, partition),
        proper=bool(is_proper(rho, partition)),
        normal=bool(is_normal(rho, partition)),
        measurable_set=in_sigma(partition, d),
        empty=not d,
    )


def _respects(row, x: int, atoms) -> bool:
    """pi(I_B I_y)(x) = I_B(x) pi(I_y)(x) for every atom B and point y."""
    for atom in atoms:
        inside = set(atom)
        x_in = x in inside
        for y, v in enumerate(row):
            lhs = v if y in inside else ZERO
            rhs = v if x_in else ZERO
            if lhs != rhs:
                return False
    return True


def proper_refinement(pi: Kernel, partition: Partition | None = None) -> RefinementResult:
    """Restrict to the support points at which the properness identities hold.

    The identities are tested for every atom indicator against every singleton;
    additivity makes these enough.  The resulting set can be empty, in which
    case the zero kernel is returned and is a refinement exactly when J_E(pi)
    is empty.
    """
    e = require_measurable(pi, partition)
    d = frozenset(x for x in sorted(pi.support) if _respects(pi.rows[x], x, e.blocks))
    rho = restriction(pi, d, e)
    return RefinementResult(rho, d, certify(rho, pi, d, e))


def proper_refinement_on_full(pi: Kernel, d: Iterable[int],
                              partition: Partition | None = None) -> RefinementResult:
    """Same construction using only the atoms of the trace of E on a full set ``d``.

    Atom indicators of the trace are extended by zero off ``d``.
    """
    e = require_measurable(pi, partition)
    d = frozenset(d) & pi.support
    if not is_full(d, pi, e):
        raise NotFull(f"{sorted(d)} is not a pi-full set")
    atoms = trace(e, d).blocks
    c = frozenset(x for x in sorted(d) if _respects(pi.rows[x], x, atoms))
    rho = restriction(pi, c, e)
    return RefinementResult(rho, c, certify(rho, pi, c, e))


def normal_refinement(pi: Kernel, partition: Partition | None = None) -> RefinementResult:
    """Normal refinement, available when J_E(pi) = J_*(pi).

    Built as the proper refinement of ``pi`` viewed as an S_pi-measurable
    kernel, then re-checked as an E-measurable kernel.
    """
    e = require_measurable(pi, partition)
    if not same_polytope(je_hrep(pi, e), jstar_hrep(pi)):
        raise PreconditionError("J_E(pi) != J_*(pi): no normal refinement is guaranteed")
    inner = proper_refinement(pi, sigma_pi(pi))
    rho = inner.kernel.with_governing(e)
    d = inner.restriction_set
    return RefinementResult(rho, d, certify(rho, pi, d, e))
