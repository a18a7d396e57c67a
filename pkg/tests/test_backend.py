import random
from fractions import Fraction

import pytest

from qpk import _backend, _vertex_py
from qpk.generators import random_instance
from qpk.polytope import HPolytope, enum_vertices, integer_system, je_hrep, jstar_hrep

needs_ext = pytest.mark.skipif(_backend._vertex_c is None, reason="compiled extension not built")


def _systems(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        k, e = random_instance(rng, 7)
        for h in (je_hrep(k, e), jstar_hrep(k)):
            rows = integer_system(h)
            if rows is not None:
                yield rows, h.n


@needs_ext
def test_row_reduce_identical():
    for rows, n in _systems(11, 150):
        assert _backend.row_reduce(rows, n, "cython") == _vertex_py.row_reduce(rows, n)


@needs_ext
def test_basic_solutions_identical():
    for rows, n in _systems(12, 150):
        red = _vertex_py.row_reduce(rows, n)
        if red is not None:
            assert _backend.basic_solutions(red, n, "cython") == _vertex_py.basic_solutions(red, n)


@needs_ext
def test_overflow_falls_back_to_python():
    big = 2 ** 62
    rows = [[big, big - 1, 1], [big - 3, big, 1]]
    with pytest.raises(OverflowError):
        _backend._vertex_c.row_reduce(rows, 2)
    assert _backend.row_reduce(rows, 2, "cython") == _vertex_py.row_reduce(rows, 2)


@needs_ext
def test_large_denominators_match():
    p = Fraction(1, 2 ** 40 + 15)
    h = HPolytope(3, (((p, -1 + p, Fraction(0)), Fraction(0)),))
    assert enum_vertices(h, "cython") == enum_vertices(h, "python")


def test_solutions_are_exact():
    # x0 + 2 x1 + 3 x2 = 1 and x0 - x2 = 0 with the normalization folded in
    rows = _vertex_py.row_reduce([[1, 2, 3, 1], [1, 0, -1, 0]], 3)
    sols = _vertex_py.basic_solutions(rows, 3)
    for *nums, den in sols:
        x = [Fraction(v, den) for v in nums]
        assert x[0] + 2 * x[1] + 3 * x[2] == 1 and x[0] == x[2]
        assert all(v >= 0 for v in x)


def test_inconsistent_system():
    assert _vertex_py.row_reduce([[1, 1, 1], [1, 1, 2]], 2) is None


def test_available_lists_python():
    assert "python" in _backend.available()
