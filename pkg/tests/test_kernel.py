from fractions import Fraction as Q

import pytest

from qpk.errors import MeasurabilityError, NegativeEntry, RowMassError, SpaceMismatch
from qpk.kernel import (
    apply,
    compose,
    delta_class,
    delta_classes,
    delta_set,
    e_pi,
    identity_kernel,
    in_JE,
    in_Jstar,
    is_adapted,
    is_normal,
    is_normal_definitional,
    is_proper,
    n_pi,
    push,
    sigma_pi,
    validate_kernel,
    zero_kernel,
)
from qpk.space import discrete, trivial
from qpk.towers import conditional_kernel

from helpers import delta, fixture, kern, part, vec


class TestValidate:
    def test_f3_valid(self):
        pi, e = fixture("F3")
        assert validate_kernel(pi.rows, e) == pi

    def test_row_mass(self):
        with pytest.raises(RowMassError):
            kern([["9/10", 0], [1, 0]], discrete(2))

    def test_f5_on_trivial(self):
        pi, _ = fixture("F5")
        with pytest.raises(MeasurabilityError) as info:
            validate_kernel(pi.rows, trivial(2))
        assert info.value.block == (0, 1)

    def test_negative(self):
        with pytest.raises(NegativeEntry):
            kern([[2, -1], [1, 0]], discrete(2))

    def test_shape(self):
        with pytest.raises(SpaceMismatch):
            kern([[1, 0]], discrete(2))


class TestSupport:
    def test_f6(self):
        assert fixture("F6")[0].support == {0, 1, 2}

    def test_f1(self):
        assert fixture("F1")[0].support == {0, 1, 2}

    def test_zero(self):
        assert zero_kernel(discrete(3)).support == frozenset()


class TestAlgebra:
    def test_push_uniform_through_block_conditional(self):
        mu = vec(*["1/4"] * 4)
        pi = conditional_kernel(mu, part([[0, 1], [2, 3]], 4))
        assert push(mu, pi) == mu

    def test_identity_is_left_unit(self):
        f1, _ = fixture("F1")
        tau = kern([["1/2", "1/2", 0], [0, 0, 0], [0, "1/3", "2/3"]], discrete(3))
        assert compose(f1, tau) == tau.rows

    def test_apply(self):
        f2, _ = fixture("F2")
        assert apply(f2, vec(1, 0)) == vec("1/2", "1/2")

    def test_compose_can_leave_kernel_class(self):
        # support row feeding a zero row gives mass 1/2
        a = kern([["1/2", "1/2"], ["1/2", "1/2"]], trivial(2))
        b = kern([[1, 0], [0, 0]], discrete(2))
        assert compose(a, b) == (vec("1/2", 0), vec("1/2", 0))


class TestMembership:
    def test_f3_member(self):
        pi, e = fixture("F3")
        assert in_JE(vec("1/2", "1/2", 0, 0), pi, e)

    def test_f3_point_mass(self):
        pi, e = fixture("F3")
        assert not in_JE(delta(0, 4), pi, e)

    @pytest.mark.parametrize("mu", [vec(1, 0, 0), vec("1/3", "1/3", "1/3"), vec(0, "1/5", "4/5")])
    def test_identity_accepts_all(self, mu):
        pi, e = fixture("F1")
        assert in_JE(mu, pi, e)

    def test_jstar_swap(self):
        pi, _ = fixture("F5")
        assert in_Jstar(vec("1/2", "1/2"), pi)
        assert not in_Jstar(delta(0, 2), pi)

    def test_jstar_coin(self):
        assert in_Jstar(vec("1/2", "1/2"), fixture("F2")[0])


class TestClassification:
    def test_f3_not_proper(self):
        v = is_proper(*fixture("F3"))
        assert not v
        assert (v.witness.atom, v.witness.point) == ((2, 3), 2)
        assert (v.witness.lhs, v.witness.rhs) == (Q(3, 4), 1)

    def test_f6_proper(self):
        assert is_proper(*fixture("F6"))

    def test_f8_not_proper(self):
        v = is_proper(*fixture("F8"))
        assert (v.witness.atom, v.witness.point) == ((1,), 1)

    def test_f6_adapted(self):
        assert is_adapted(*fixture("F6"))

    def test_f5_not_adapted(self):
        v = is_adapted(*fixture("F5"))
        assert not v and v.witness.point == 0

    def test_zero_kernel_conventions(self):
        z = zero_kernel(part([[0, 1], [2]], 3))
        assert is_adapted(z) and is_normal(z) and is_proper(z)
        assert is_proper(z, trivial(3))

    @pytest.mark.parametrize("name, expected", [("F6", True), ("F8", True), ("F3", False)])
    def test_normal(self, name, expected):
        pi, e = fixture(name)
        assert bool(is_normal(pi, e)) is expected
        assert bool(is_normal_definitional(pi, e)) is expected


class TestDelta:
    def test_f6_sets(self):
        pi, _ = fixture("F6")
        assert delta_set(pi, vec("1/2", "1/2", 0, 0)) == {0, 1}
        assert delta_class(pi, 2) == {2}
        assert delta_set(pi, delta(3, 4)) == frozenset()
        assert delta_class(pi, 3) == frozenset()

    def test_classes(self):
        assert delta_classes(fixture("F6")[0]) == [(0, 1), (2,)]


class TestInducedPartitions:
    @pytest.mark.parametrize("name, blocks", [
        ("F3", [[0, 1], [2, 3]]), ("F6", [[0, 1], [2], [3]]), ("F2", [[0, 1]]),
    ])
    def test_sigma_pi(self, name, blocks):
        pi, _ = fixture(name)
        assert sigma_pi(pi) == part(blocks, pi.n)

    @pytest.mark.parametrize("name, blocks", [
        ("F6", [[0, 1], [2], [3]]), ("F8", [[0, 1]]), ("F3", [[0, 1], [2, 3]]),
    ])
    def test_n_pi(self, name, blocks):
        pi, _ = fixture(name)
        assert n_pi(pi) == part(blocks, pi.n)

    @pytest.mark.parametrize("name, blocks", [
        ("F8", [[0, 1]]), ("F6", [[0, 1], [2], [3]]), ("F1", [[0], [1], [2]]),
    ])
    def test_e_pi(self, name, blocks):
        pi, e = fixture(name)
        assert e_pi(pi, e) == part(blocks, pi.n)


def test_kernel_is_hashable_and_immutable():
    k = identity_kernel(discrete(2))
    assert hash(k) == hash(identity_kernel(discrete(2)))
    with pytest.raises(Exception):
        k.rows = ()
