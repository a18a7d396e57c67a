"""Brute-force re-derivation of every fast-path result.

Everything here works straight from the definitions, quantifying over all
subsets of the space as bitmasks.  Kernels and measures are scaled to
integers once so the inner loops avoid Fraction arithmetic.  Vertices are
found by a different method from the fast path: every support pattern is
tried and kept when the constraints restricted to it have a unique, strictly
positive solution.

Cost grows like ``4^n``; :data:`DEFAULT_MAX_N` guards the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from functools import lru_cache
from math import lcm
from typing import Sequence

from .kernel import Kernel, delta_set, e_pi, is_adapted, is_normal, is_proper, n_pi, sigma_pi
from .polytope import HPolytope, extreme_members, je_hrep, jstar_hrep
from .polytope import enum_vertices as fast_vertices
from .refine import normal_refinement, proper_refinement
from .space import Partition, is_trivial, meet
from .classify import normality_report

DEFAULT_MAX_N = 8


# -- integer views -------------------------------------------------------------

def _scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    s = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    return [int(v * s) for v in values], s


class _IntKernel:
    """Kernel scaled to integers with row masses over every subset."""

    def __init__(self, pi: Kernel):
        self.n = n = pi.n
        flat, self.scale = _scaled([v for r in pi.rows for v in r])
        self.rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        self.mass = [_subset_sums(r) for r in self.rows]


def _subset_sums(vals: Sequence[int]) -> list[int]:
    n = len(vals)
    out = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        out[mask] = out[mask ^ low] + vals[low.bit_length() - 1]
    return out


def _mask(points) -> int:
    m = 0
    for x in points:
        m |= 1 << x
    return m


def _points(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


# -- sigma-algebras as families of bitmasks -------------------------------------

def sigma_family(p: Partition) -> frozenset[int]:
    atoms = [_mask(b) for b in p.blocks]
    out = set()
    for sel in range(1 << len(atoms)):
        m = 0
        for i, a in enumerate(atoms):
            if sel >> i & 1:
                m |= a
        out.add(m)
    return frozenset(out)


def atoms_of(family, n: int) -> Partition:
    full = (1 << n) - 1
    blocks = set()
    for x in range(n):
        m = full
        for s in family:
            if s >> x & 1:
                m &= s
        blocks.add(_points(m))
    return Partition(n, tuple(sorted(blocks)))


def meet_oracle(p: Partition, q: Partition) -> Partition:
    return atoms_of(sigma_family(p) & sigma_family(q), p.n)


def sigma_pi_oracle(pi: Kernel) -> Partition:
    """Points are separated when some pi(., F) differs on them."""
    k = _IntKernel(pi)
    groups: dict[tuple[int, ...], list[int]] = {}
    for x in range(k.n):
        groups.setdefault(tuple(k.mass[x]), []).append(x)
    return Partition(k.n, tuple(sorted(tuple(g) for g in groups.values())))


def _delta_classes_oracle(pi: Kernel) -> list[int]:
    k = _IntKernel(pi)
    full = 1 << k.n
    sup = [x for x in range(k.n) if k.mass[x][full - 1] == k.scale]
    classes = []
    for x in sup:
        classes.append(_mask(y for y in sup if k.mass[y] == k.mass[x]))
    return sorted(set(classes))


def n_pi_oracle(pi: Kernel) -> Partition:
    classes = _delta_classes_oracle(pi)
    fam = [s for s in range(1 << pi.n) if all(s & c in (0, c) for c in classes)]
    return atoms_of(fam, pi.n)


def e_pi_oracle(pi: Kernel, e: Partition) -> Partition:
    classes = _delta_classes_oracle(pi)
    fam = [s for s in sigma_family(e) if all(s & c in (0, c) for c in classes)]
    return atoms_of(fam, pi.n)


# -- definitional checks ----------------------------------------------------------

def proper_points_oracle(pi: Kernel, e: Partition) -> frozenset[int]:
    """Points x where pi(x, A & F) = [x in A] pi(x, F) for all A in sigma(E), all F."""
    k = _IntKernel(pi)
    fam = sigma_family(e)
    good = set()
    for x in range(k.n):
        m = k.mass[x]
        bit = 1 << x
        if all(m[a & f] == (m[f] if a & bit else 0) for a in fam for f in range(1 << k.n)):
            good.add(x)
    return frozenset(good)


def proper_oracle(pi: Kernel, e: Partition) -> bool:
    return len(proper_points_oracle(pi, e)) == pi.n


def in_je_oracle(mu: Sequence[Fraction], pi: Kernel, e: Partition, k: _IntKernel | None = None) -> bool:
    """mu(A & F) = sum_{x in A} mu(x) pi(x, F) for all A in sigma(E), all F."""
    if any(v < 0 for v in mu) or sum(mu) != 1:
        return False
    k = k or _IntKernel(pi)
    m, _ = _scaled(mu)
    mm = _subset_sums(m)
    for a in sigma_family(e):
        xs = _points(a)
        for f in range(1 << k.n):
            if mm[a & f] * k.scale != sum(m[x] * k.mass[x][f] for x in xs):
                return False
    return True


def in_jstar_oracle(mu: Sequence[Fraction], pi: Kernel) -> bool:
    if any(v < 0 for v in mu) or sum(mu) != 1:
        return False
    k = _IntKernel(pi)
    m, _ = _scaled(mu)
    return all(sum(m[x] * k.rows[x][y] for x in range(k.n)) == m[y] * k.scale for y in range(k.n))


def trivial_oracle(mu: Sequence[Fraction], e: Partition) -> bool:
    m, s = _scaled(mu)
    mm = _subset_sums(m)
    return all(mm[a] in (0, s) for a in sigma_family(e))


def adapted_oracle(pi: Kernel, e: Partition) -> bool:
    k = _IntKernel(pi)
    return all(in_je_oracle(pi.rows[x], pi, e, k) for x in pi.support)


def normal_oracle(pi: Kernel, e: Partition) -> bool:
    return adapted_oracle(pi, e) and all(trivial_oracle(pi.rows[x], e) for x in pi.support)


# -- vertices by support patterns ---------------------------------------------------

def _unique_solution(rows: list[list[int]], k: int) -> list[Fraction] | None:
    """Unique solution of an augmented integer system in ``k`` unknowns, else None."""
    rows = [r[:] for r in rows]
    m = len(rows)
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        top = rows[r]
        for i in range(m):
            f = rows[i][c]
            if i != r and f:
                t = top[c]
                rows[i] = [t * u - f * w for u, w in zip(rows[i], top)]
        r += 1
    if any(rows[i][k] for i in range(r, m)):
        return None
    return [Fraction(rows[i][k], rows[i][i]) for i in range(k)]


def _integer_rows(h: HPolytope) -> list[list[int]]:
    out = set()
    for coeffs, rhs in h.equalities:
        s = lcm(*(q.denominator for q in coeffs), rhs.denominator)
        out.add(tuple(int(q * s) for q in coeffs) + (int(rhs * s),))
    out.add((1,) * h.n + (1,))
    return [list(r) for r in sorted(out) if any(r)]


@lru_cache(maxsize=4096)
def vertices_oracle(h: HPolytope) -> tuple[tuple[Fraction, ...], ...]:
    eqs = _integer_rows(h)
    if any(not any(r[:-1]) for r in eqs):
        return ()
    out = set()
    for size in range(1, h.n + 1):
        for sup in combinations(range(h.n), size):
            a = [[r[j] for j in sup] + [r[-1]] for r in eqs]
            sol = _unique_solution(a, size)
            if sol is None or any(v <= 0 for v in sol):
                continue
            vec = [Fraction(0)] * h.n
            for j, v in zip(sup, sol):
                vec[j] = v
            out.add(tuple(vec))
    return tuple(sorted(out))


def refinement_oracle(rho: Kernel, pi: Kernel, e: Partition) -> bool:
    return vertices_oracle(je_hrep(rho, e)) == vertices_oracle(je_hrep(pi, e))


def delta_set_oracle(pi: Kernel, mu: Sequence[Fraction]) -> frozenset[int]:
    """{x : pi(x, F) = mu(F) for every F}."""
    k = _IntKernel(pi)
    m, s = _scaled(mu)
    mm = _subset_sums(m)
    return frozenset(x for x in range(k.n)
                     if all(k.mass[x][f] * s == mm[f] * k.scale for f in range(1 << k.n)))


def normality_oracle(pi: Kernel, e: Partition) -> tuple[bool, ...]:
    adapted = adapted_oracle(pi, e)
    je = vertices_oracle(je_hrep(pi, e))
    k = _IntKernel(pi)
    s2 = adapted and all(
        k.mass[x][_mask(delta_set_oracle(pi, pi.rows[x]))] == k.scale for x in pi.support
    )
    s3 = adapted and proper_oracle(pi, n_pi_oracle(pi))
    ep = e_pi_oracle(pi, e)
    s4 = proper_oracle(pi, ep) and vertices_oracle(je_hrep(pi, ep)) == je
    sp = sigma_pi_oracle(pi)
    s5 = proper_oracle(pi, sp) and vertices_oracle(je_hrep(pi, sp)) == je
    return (normal_oracle(pi, e), bool(s2), s3, s4, s5)


# -- diffing ----------------------------------------------------------------------

@dataclass(frozen=True)
class Disagreement:
    check: str
    fast: object
    oracle: object


def kernel_diff(pi: Kernel, e: Partition, label: str = "") -> list[Disagreement]:
    out: list[Disagreement] = []

    def cmp(name, fast, slow):
        if fast != slow:
            out.append(Disagreement(label + name, fast, slow))

    cmp("meet", meet(e, sigma_pi(pi)), meet_oracle(e, sigma_pi_oracle(pi)))
    cmp("sigma_pi", sigma_pi(pi), sigma_pi_oracle(pi))
    cmp("n_pi", n_pi(pi), n_pi_oracle(pi))
    cmp("e_pi", e_pi(pi, e), e_pi_oracle(pi, e))
    cmp("proper", bool(is_proper(pi, e)), proper_oracle(pi, e))
    cmp("adapted", bool(is_adapted(pi, e)), adapted_oracle(pi, e))
    cmp("normal", bool(is_normal(pi, e)), normal_oracle(pi, e))
    je_h, js_h = je_hrep(pi, e), jstar_hrep(pi)
    je = vertices_oracle(je_h)
    js = vertices_oracle(js_h)
    cmp("je_vertices", fast_vertices(je_h), je)
    cmp("jstar_vertices", fast_vertices(js_h), js)
    cmp("extreme_members", extreme_members(pi, e), je)
    cmp("trivial", tuple(is_trivial(v, e) for v in je), tuple(trivial_oracle(v, e) for v in je))
    for v in je:
        cmp("delta_set", delta_set(pi, v), delta_set_oracle(pi, v))
    pr = proper_refinement(pi, e)
    cmp("proper_refinement.D", pr.restriction_set, proper_points_oracle(pi, e) & pi.support)
    cmp("proper_refinement.refinement", pr.certificate.refinement, refinement_oracle(pr.kernel, pi, e))
    cmp("proper_refinement.proper", pr.certificate.proper, proper_oracle(pr.kernel, e))
    if je == js:
        nr = normal_refinement(pi, e)
        cmp("normal_refinement.D", nr.restriction_set,
            proper_points_oracle(pi, sigma_pi_oracle(pi)) & pi.support)
        cmp("normal_refinement.normal", nr.certificate.normal, normal_oracle(nr.kernel, e))
        cmp("normal_refinement.refinement", nr.certificate.refinement, refinement_oracle(nr.kernel, pi, e))
    cmp("normality_report", normality_report(pi, e).statements, normality_oracle(pi, e))
    return out


def tower_diff(chain) -> list[Disagreement]:
    from .towers import compatible_chain, tail_kernel_pipeline

    out: list[Disagreement] = []
    parts = chain.partitions
    if chain.reference is not None:
        res = compatible_chain(chain.reference, chain)
        for i, (rho, p) in enumerate(zip(res.refined, parts)):
            checks = {
                f"tower.proper[{i}]": proper_oracle(rho, p),
                f"tower.member[{i}]": in_je_oracle(chain.reference, rho, p),
            }
            for j in range(i + 1):
                checks[f"tower.compatible[{i},{j}]"] = _matmul(rho.rows, res.refined[j].rows) == rho.rows
            for name, slow in checks.items():
                if res.checks[name.removeprefix("tower.")] != slow:
                    out.append(Disagreement(name, res.checks[name.removeprefix("tower.")], slow))
    if chain.kernels is not None or chain.reference is not None:
        pipe = tail_kernel_pipeline(chain)
        from .towers import with_conditional_kernels

        full = chain if chain.kernels is not None else with_conditional_kernels(chain)
        inter = _intersection_oracle(full)
        got = vertices_oracle(je_hrep(pipe.result, chain.tail))
        if got != inter:
            out.append(Disagreement("tower.intersection", got, inter))
        if not normal_oracle(pipe.result, chain.tail):
            out.append(Disagreement("tower.normal", True, False))
        if pipe.intersection != inter:
            out.append(Disagreement("tower.intersection_vertices", pipe.intersection, inter))
    return out


def _intersection_oracle(chain) -> tuple:
    h = je_hrep(chain.kernels[0], chain.partitions[0])
    eqs = list(h.equalities)
    for k, p in zip(chain.kernels[1:], chain.partitions[1:]):
        eqs.extend(je_hrep(k, p).equalities)
    return vertices_oracle(HPolytope(h.n, tuple(eqs)))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
                 for i in range(n))


def oracle_diff(model) -> list[Disagreement]:
    """All disagreements between fast paths and brute force for one model."""
    out: list[Disagreement] = []
    if model.kernel is not None:
        out.extend(kernel_diff(model.kernel, model.partition))
    if model.chain is not None:
        if model.chain.kernels is not None:
            for i, (k, p) in enumerate(zip(model.chain.kernels, model.chain.partitions)):
                out.extend(kernel_diff(k, p, f"chain[{i}]."))
        out.extend(tower_diff(model.chain))
    return out
