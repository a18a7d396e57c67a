from fractions import Fraction as Q

import pytest

from qpk.errors import CoverageError, NotProbability, OverlapError, ParseError, SpaceMismatch
from qpk.space import (
    FiniteSpace,
    build_partition,
    compare,
    discrete,
    fmt,
    in_sigma,
    is_measurable_fn,
    is_trivial,
    join,
    meet,
    probability,
    rational,
    sigma_sets,
    trace,
    trivial,
)

from helpers import part, vec


class TestRational:
    @pytest.mark.parametrize("raw, expected", [
        ("1/2", Q(1, 2)), ("3", Q(3)), (" -2/4 ", Q(-1, 2)), (7, Q(7)), (Q(1, 3), Q(1, 3)),
    ])
    def test_accepts(self, raw, expected):
        assert rational(raw) == expected

    @pytest.mark.parametrize("raw", ["1/0", "0.5", "abc", "1/-2", "", 0.5, True, None])
    def test_rejects(self, raw):
        with pytest.raises(ParseError):
            rational(raw)

    def test_fmt_is_lowest_terms(self):
        assert fmt(Q(2, 4)) == "1/2"
        assert fmt(Q(0)) == "0/1"
        assert fmt(Q(-3)) == "-3/1"


class TestPartition:
    def test_canonical_order(self):
        p = build_partition([[3, 2], [1], [0]], 4)
        assert p.blocks == ((0,), (1,), (2, 3))
        assert str(p) == "{{0},{1},{2,3}}"

    def test_overlap(self):
        with pytest.raises(OverlapError):
            build_partition([[0, 1], [1, 2]], 3)

    def test_coverage(self):
        with pytest.raises(CoverageError):
            build_partition([[0, 1]], 3)

    def test_out_of_range(self):
        with pytest.raises(Exception):
            build_partition([[0, 5]], 3)

    def test_finite_space(self):
        assert FiniteSpace(3).discrete() == discrete(3)
        assert FiniteSpace(3).trivial() == trivial(3)


class TestMeet:
    def test_with_power_set(self):
        assert meet(discrete(4), part([[0, 1], [2, 3]], 4)) == part([[0, 1], [2, 3]], 4)

    def test_overlap_chain(self):
        p = part([[0, 1], [2], [3]], 4)
        q = part([[0], [1, 2], [3]], 4)
        assert meet(p, q) == part([[0, 1, 2], [3]], 4)

    def test_idempotent(self):
        p = part([[0, 2], [1], [3]], 4)
        assert meet(p, p) == p

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            meet(discrete(2), discrete(3))

    def test_join(self):
        assert join(part([[0, 1], [2, 3]], 4), part([[0, 2], [1, 3]], 4)) == discrete(4)


class TestCompare:
    def test_finer(self):
        assert compare(discrete(2), trivial(2)) == "finer"

    def test_coarser(self):
        assert compare(part([[0, 1], [2, 3]], 4), part([[0, 1], [2], [3]], 4)) == "coarser"

    def test_incomparable(self):
        assert compare(part([[0, 1], [2]], 3), part([[0], [1, 2]], 3)) == "incomparable"

    def test_equal(self):
        assert compare(trivial(3), trivial(3)) == "equal"


class TestTrace:
    def test_direct(self):
        t = trace(part([[0, 1], [2, 3]], 4), {0, 1, 2})
        assert t.blocks == ((0, 1), (2,))

    def test_empty(self):
        assert trace(discrete(3), set()).blocks == ()

    def test_f6_on_support(self):
        # support of F6 is {0,1,2}
        assert trace(part([[0, 1], [2], [3]], 4), {0, 1, 2}).blocks == ((0, 1), (2,))


def test_sigma_sets_and_membership():
    p = part([[0, 1], [2]], 3)
    sets = set(sigma_sets(p))
    assert sets == {frozenset(), frozenset({0, 1}), frozenset({2}), frozenset({0, 1, 2})}
    assert in_sigma(p, {0, 1}) and not in_sigma(p, {0})


class TestMeasurableFn:
    def test_constant_on_blocks(self):
        assert is_measurable_fn(vec(1, 1, 0, 0), part([[0, 1], [2, 3]], 4))

    def test_split_block(self):
        assert not is_measurable_fn(vec(1, 0, 0, 0), part([[0, 1], [2, 3]], 4))

    def test_discrete(self):
        assert is_measurable_fn(vec(5, 1, "2/3"), discrete(3))


class TestTrivial:
    def test_point_mass(self):
        assert is_trivial(vec(1, 0, 0), discrete(3))

    def test_coin(self):
        assert not is_trivial(vec("1/2", "1/2"), discrete(2))

    def test_block_masses(self):
        assert is_trivial(vec("1/2", "1/2", 0, 0), part([[0, 1], [2], [3]], 4))

    def test_not_probability(self):
        with pytest.raises(NotProbability):
            is_trivial(vec("1/2", 0), discrete(2))


def test_probability_checks_mass():
    with pytest.raises(NotProbability):
        probability(["1/2", "1/3"])
    assert probability(["1/2", "1/2"]) == vec("1/2", "1/2")
