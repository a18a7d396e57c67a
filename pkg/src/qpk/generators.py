"""Seeded random instances for property tests and the acceptance suite.

Entries use small denominators so that exact arithmetic stays cheap.  Besides
unstructured kernels there are constructions that hit the interesting
classes on purpose: proper, normal-but-not-proper, and adapted kernels
(mixtures of "core" distributions), and chains with nested cores whose
J-sets decrease.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .kernel import Kernel
from .modelio import Model
from .space import ZERO, Partition, _canonical, discrete
from .towers import ChainSpec, build_chain, extend_tail

Row = tuple  # tuple[Fraction, ...]


def random_partition(n: int, rng: random.Random, max_blocks: int | None = None) -> Partition:
    k = rng.randint(1, max_blocks or n)
    labels = [rng.randrange(k) for _ in range(n)]
    return _canonical(n, [[x for x in range(n) if labels[x] == b] for b in range(k)])


def coarsen(p: Partition, rng: random.Random) -> Partition:
    """Merge random blocks of ``p`` (possibly none)."""
    k = len(p.blocks)
    target = rng.randint(1, k)
    labels = [rng.randrange(target) for _ in range(k)]
    groups = [[x for i, b in enumerate(p.blocks) if labels[i] == g for x in b] for g in range(target)]
    return _canonical(p.n, groups)


def random_distribution(points: Sequence[int], n: int, rng: random.Random, den: int = 4,
                        full: bool = False) -> Row:
    """Probability vector supported in ``points`` with weights in ``0..den``."""
    points = list(points)
    lo = 1 if full else 0
    while True:
        w = {x: rng.randint(lo, den) for x in points}
        total = sum(w.values())
        if total:
            break
    return tuple(Fraction(w.get(y, 0), total) for y in range(n))


def mixture(rows: Sequence[Row], rng: random.Random, den: int = 3) -> Row:
    """Random convex combination of ``rows`` (some weights may vanish)."""
    while True:
        w = [rng.randint(0, den) for _ in rows]
        total = sum(w)
        if total:
            break
    n = len(rows[0])
    return tuple(sum((Fraction(wi, total) * r[y] for wi, r in zip(w, rows)), ZERO) for y in range(n))


def _zero(n: int) -> Row:
    return (ZERO,) * n


def _assemble(partition: Partition, block_rows: Sequence[Row]) -> Kernel:
    rows: list = [None] * partition.n
    for b, r in zip(partition.blocks, block_rows):
        for x in b:
            rows[x] = r
    return Kernel(tuple(rows), partition)


def random_kernel(partition: Partition, rng: random.Random, zero_prob: float = 0.2) -> Kernel:
    """Each block gets a zero row or a random distribution on a random subset."""
    n = partition.n
    rows = []
    for _ in partition.blocks:
        if rng.random() < zero_prob:
            rows.append(_zero(n))
        else:
            pts = [y for y in range(n) if rng.random() < 0.5] or [rng.randrange(n)]
            rows.append(random_distribution(pts, n, rng))
    return _assemble(partition, rows)


def _cores(partition: Partition, rng: random.Random, core_prob: float) -> dict[int, Row]:
    n = partition.n
    cores = {i: random_distribution(b, n, rng) for i, b in enumerate(partition.blocks)
             if rng.random() < core_prob}
    if not cores:
        i = rng.randrange(len(partition.blocks))
        cores[i] = random_distribution(partition.blocks[i], n, rng)
    return cores


def random_proper_kernel(partition: Partition, rng: random.Random, zero_prob: float = 0.25) -> Kernel:
    """Rows supported on their own block, or zero."""
    n = partition.n
    rows = [_zero(n) if rng.random() < zero_prob else random_distribution(b, n, rng)
            for b in partition.blocks]
    return _assemble(partition, rows)


def random_normal_kernel(partition: Partition, rng: random.Random) -> Kernel:
    """Core blocks carry a distribution on themselves; other blocks copy a core or vanish."""
    n = partition.n
    cores = _cores(partition, rng, 0.5)
    keys = sorted(cores)
    rows = []
    for i in range(len(partition.blocks)):
        if i in cores:
            rows.append(cores[i])
        elif rng.random() < 0.3:
            rows.append(_zero(n))
        else:
            rows.append(cores[rng.choice(keys)])
    return _assemble(partition, rows)


def random_adapted_kernel(partition: Partition, rng: random.Random) -> Kernel:
    """Like :func:`random_normal_kernel` but non-core blocks take mixtures of cores."""
    n = partition.n
    cores = _cores(partition, rng, 0.5)
    core_rows = [cores[k] for k in sorted(cores)]
    rows = []
    for i in range(len(partition.blocks)):
        if i in cores:
            rows.append(cores[i])
        elif rng.random() < 0.25:
            rows.append(_zero(n))
        else:
            rows.append(mixture(core_rows, rng))
    return _assemble(partition, rows)


def random_structured_kernel(partition: Partition, rng: random.Random) -> Kernel:
    """Pick uniformly among the constructions above."""
    make = rng.choice((random_kernel, random_proper_kernel, random_normal_kernel, random_adapted_kernel))
    return make(partition, rng)


def random_instance(rng: random.Random, max_n: int = 6, min_n: int = 1) -> tuple[Kernel, Partition]:
    n = rng.randint(min_n, max_n)
    e = random_partition(n, rng)
    return random_structured_kernel(e, rng), e


def random_je_equals_jstar(rng: random.Random, max_n: int = 6) -> tuple[Kernel, Partition]:
    """Instances with J_E = J_*: adapted, proper or normal by construction."""
    n = rng.randint(1, max_n)
    e = random_partition(n, rng)
    make = rng.choice((random_proper_kernel, random_normal_kernel, random_adapted_kernel))
    return make(e, rng), e


def random_chain_partitions(n: int, length: int, rng: random.Random) -> list[Partition]:
    first = discrete(n) if rng.random() < 0.3 else random_partition(n, rng)
    parts = [first]
    for _ in range(length - 1):
        parts.append(coarsen(parts[-1], rng))
    return parts


def random_measure(n: int, rng: random.Random, den: int = 4) -> Row:
    return random_distribution(range(n), n, rng, den)


def random_chain(rng: random.Random, max_n: int = 6, max_length: int = 4) -> tuple[Row, ChainSpec]:
    """A reference measure and a decreasing chain without kernels."""
    n = rng.randint(1, max_n)
    parts = random_chain_partitions(n, rng.randint(1, max_length), rng)
    mu = random_measure(n, rng)
    return mu, build_chain(parts, None, mu)


def random_stabilizing_chain(rng: random.Random, max_n: int = 6, max_length: int = 4,
                             window: int = 2) -> ChainSpec:
    """Chain with explicit kernels whose J-sets decrease and whose tail is constant.

    Level-1 core blocks carry distributions on themselves.  A block of the
    next level becomes a core carrying a mixture of the previous cores lying
    inside it; blocks without such cores get a zero row or a mixture of the
    level's cores.
    """
    n = rng.randint(1, max_n)
    parts = random_chain_partitions(n, rng.randint(1, max_length), rng)
    prev = {b: row for b, row in
            ((parts[0].blocks[i], r) for i, r in _cores(parts[0], rng, 0.6).items())}
    kernels = []
    for level, p in enumerate(parts):
        if level == 0:
            cores = prev
        else:
            cores = {}
            for b in p.blocks:
                inside = [r for c, r in prev.items() if set(c) <= set(b)]
                if inside and rng.random() < 0.85:
                    cores[b] = mixture(inside, rng)
            if not cores:
                # keep at least one core so the chain stays interesting
                b = next(b for b in p.blocks if any(set(c) <= set(b) for c in prev))
                cores[b] = mixture([r for c, r in prev.items() if set(c) <= set(b)], rng)
        core_rows = [cores[b] for b in sorted(cores)]
        rows = []
        for b in p.blocks:
            if b in cores:
                rows.append(cores[b])
            elif rng.random() < 0.4:
                rows.append(_zero(n))
            else:
                rows.append(mixture(core_rows, rng))
        kernels.append(_assemble(p, rows))
        prev = cores
    chain = build_chain(parts, kernels)
    return extend_tail(chain, window - 1)


def random_model(rng: random.Random, max_n: int = 6) -> Model:
    """Kernel model most of the time, chain model otherwise."""
    r = rng.random()
    if r < 0.7:
        k, e = random_instance(rng, max_n)
        return Model(k.n, "random", e, k)
    if r < 0.85:
        mu, chain = random_chain(rng, max_n, 3)
        return Model(chain.n, "random-chain", chain=chain)
    chain = random_stabilizing_chain(rng, max_n, 3)
    return Model(chain.n, "random-tower", chain=chain)
