import random

import pytest

from qpk.generators import random_model
from qpk.modelio import FIXTURES, load_fixture
from qpk.oracle import (
    e_pi_oracle,
    meet_oracle,
    n_pi_oracle,
    normality_oracle,
    oracle_diff,
    proper_oracle,
    sigma_pi_oracle,
    vertices_oracle,
)
from qpk.polytope import je_hrep, jstar_hrep
from qpk.space import discrete

from helpers import delta, fixture, part, vec


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_agree(name):
    assert oracle_diff(load_fixture(name)) == []


def test_derived_meet():
    assert meet_oracle(part([[0, 1], [2], [3]], 4), part([[0], [1, 2], [3]], 4)) == part([[0, 1, 2], [3]], 4)
    assert meet_oracle(discrete(4), part([[0, 1], [2, 3]], 4)) == part([[0, 1], [2, 3]], 4)


def test_derived_vertices():
    assert vertices_oracle(je_hrep(*fixture("F6"))) == (delta(2, 4), vec("1/2", "1/2", 0, 0))
    assert vertices_oracle(je_hrep(*fixture("F5"))) == ()
    assert vertices_oracle(jstar_hrep(fixture("F5")[0])) == (vec("1/2", "1/2"),)
    assert vertices_oracle(je_hrep(*fixture("F3"))) == (vec("1/2", "1/2", 0, 0),)
    assert vertices_oracle(je_hrep(*fixture("F8"))) == (delta(0, 2),)


def test_derived_partitions():
    f6, e6 = fixture("F6")
    assert sigma_pi_oracle(f6) == part([[0, 1], [2], [3]], 4)
    assert n_pi_oracle(fixture("F8")[0]) == part([[0, 1]], 2)
    assert e_pi_oracle(*fixture("F8")) == part([[0, 1]], 2)


def test_derived_classification():
    assert not proper_oracle(*fixture("F3"))
    assert proper_oracle(*fixture("F6"))
    assert normality_oracle(*fixture("F6")) == (True,) * 5
    assert normality_oracle(*fixture("F8")) == (True,) * 5
    assert normality_oracle(*fixture("F5")) == (False,) * 5


def test_random_models_agree():
    rng = random.Random(2024)
    for _ in range(25):
        assert oracle_diff(random_model(rng, 5)) == []
