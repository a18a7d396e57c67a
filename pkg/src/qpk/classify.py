"""Classification of a kernel as proper / adapted / normal."""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import (
    Kernel,
    Witness,
    _concentrated_on_classes,
    e_pi,
    is_adapted,
    is_normal,
    is_normal_definitional,
    is_proper,
    n_pi,
    require_measurable,
    sigma_pi,
)
from .polytope import je_hrep, same_polytope
from .space import Partition


@dataclass(frozen=True)
class ClassificationReport:
    proper: bool
    adapted: bool
    normal: bool
    support: frozenset[int]
    witnesses: dict[str, Witness] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        # proper => normal => adapted
        if self.proper and not self.normal:
            raise AssertionError("proper kernel classified as not normal")
        if self.normal and not self.adapted:
            raise AssertionError("normal kernel classified as not adapted")


def classify(pi: Kernel, partition: Partition | None = None) -> ClassificationReport:
    e = require_measurable(pi, partition)
    proper = is_proper(pi, e)
    adapted = is_adapted(pi, e)
    normal = is_normal(pi, e)
    witnesses = {name: v.witness for name, v in
                 (("proper", proper), ("adapted", adapted), ("normal", normal))
                 if not v and v.witness is not None}
    return ClassificationReport(bool(proper), bool(adapted), bool(normal), pi.support, witnesses)


@dataclass(frozen=True)
class NormalityReport:
    """The five equivalent characterizations of normality, each evaluated on its own.

    1. normal (definition: adapted, support rows trivial on E)
    2. adapted, and every support row charges its Delta-class fully
    3. adapted, and proper with respect to N_pi
    4. proper w.r.t. E_pi, and J_{E_pi}(pi) = J_E(pi)
    5. proper w.r.t. S_pi, and J_{S_pi}(pi) = J_E(pi)
    """

    statements: tuple[bool, bool, bool, bool, bool]

    @property
    def all_equal(self) -> bool:
        return len(set(self.statements)) == 1


def normality_report(pi: Kernel, partition: Partition | None = None) -> NormalityReport:
    e = require_measurable(pi, partition)
    adapted = bool(is_adapted(pi, e))
    s1 = bool(is_normal_definitional(pi, e))
    s2 = adapted and bool(_concentrated_on_classes(pi))
    s3 = adapted and bool(is_proper(pi, n_pi(pi)))
    je = je_hrep(pi, e)
    ep = e_pi(pi, e)
    s4 = bool(is_proper(pi, ep)) and same_polytope(je_hrep(pi, ep), je)
    sp = sigma_pi(pi)
    s5 = bool(is_proper(pi, sp)) and same_polytope(je_hrep(pi, sp), je)
    return NormalityReport((s1, s2, s3, s4, s5))
