from fractions import Fraction as Q

from qpk.kernel import Kernel
from qpk.modelio import load_fixture
from qpk.space import build_partition, rational


def vec(*xs):
    return tuple(rational(x) for x in xs)


def delta(x, n):
    return tuple(Q(int(y == x)) for y in range(n))


def part(blocks, n):
    return build_partition(blocks, n)


def kern(rows, partition):
    return Kernel(tuple(tuple(rational(v) for v in r) for r in rows), partition)


def fixture(name):
    m = load_fixture(name)
    return m.kernel, m.partition
