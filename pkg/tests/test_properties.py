import random

import pytest
from hypothesis import given, settings, strategies as st

import invariants as inv
from qpk import _backend
from qpk.generators import random_instance, random_partition
from qpk.modelio import dumps, loads
from qpk.space import build_partition

rngs = st.integers(0, 2**32 - 1).map(random.Random)
FAST = settings(max_examples=60, deadline=None)


def _ok(bad):
    assert bad == [], bad


@FAST
@given(rngs)
def test_meet_is_greatest_common_coarsening(rng):
    _ok(inv.check_meet_glb(rng))


@FAST
@given(rngs)
def test_trace_blocks(rng):
    _ok(inv.check_trace(rng))


@FAST
@given(rngs)
def test_trivial_product_form(rng):
    _ok(inv.check_trivial_product(rng))


@FAST
@given(st.integers(1, 7), rngs)
def test_partition_round_trip(n, rng):
    p = random_partition(n, rng)
    assert build_partition(p.to_lists(), n) == p
    shuffled = [rng.sample(b, len(b)) for b in p.to_lists()]
    rng.shuffle(shuffled)
    assert build_partition(shuffled, n) == p


@FAST
@given(rngs)
def test_model_round_trip(rng):
    from qpk.generators import random_model

    m = random_model(rng)
    assert dumps(loads(dumps(m))) == dumps(m)


@FAST
@pytest.mark.parametrize("name", sorted(inv.KERNEL_CHECKS))
@given(rng=rngs)
def test_kernel_invariant(name, rng):
    _ok(inv.run_kernel_check(inv.KERNEL_CHECKS[name], rng))


@FAST
@given(rngs)
def test_normal_refinement_when_je_equals_jstar(rng):
    _ok(inv.run_je_jstar_check(inv.check_normal_refinement, rng))


@FAST
@given(rngs)
def test_conditional_kernel_proper_with_reference_member(rng):
    _ok(inv.check_conditional(rng))


@FAST
@given(rngs)
def test_compatible_family(rng):
    _ok(inv.check_compatible_family(rng))


@FAST
@given(rngs)
def test_limit_of_conditional_chain(rng):
    _ok(inv.check_limit_consistency(rng))


@FAST
@given(rngs)
def test_pipeline_certificate(rng):
    _ok(inv.check_tower_certificate(rng))


@FAST
@given(rngs)
def test_chain_j_sets_decrease(rng):
    _ok(inv.check_chain_monotone(rng))


@FAST
@given(rngs)
def test_tower_refine_candidate(rng):
    _ok(inv.check_tower_refine_on_candidate(rng))


@pytest.mark.skipif(_backend.BACKEND != "cython", reason="extension not built")
@FAST
@given(rngs)
def test_backends_agree(rng):
    from qpk.polytope import enum_vertices, je_hrep

    pi, e = random_instance(rng, 7)
    h = je_hrep(pi, e)
    assert enum_vertices(h, "cython") == enum_vertices(h, "python")
