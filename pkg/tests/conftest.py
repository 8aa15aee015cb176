import numpy as np
import pytest

from effana import (
    EffectAlgebra,
    Measure,
    UNDEFINED,
    finite_restriction,
    powerset_algebra,
    quadrant_algebra,
    scale_algebra,
)


def relabeled(algebra, perm):
    """Rebuild an algebra with element i of the original at position perm[i]."""
    n = algebra.size
    perm = list(perm)
    inv = np.empty(n, dtype=int)
    inv[perm] = np.arange(n)
    table = np.full((n, n), UNDEFINED, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            c = algebra.sums[inv[a], inv[b]]
            if c >= 0:
                table[a, b] = perm[c]
    names = [algebra.names[inv[i]] for i in range(n)]
    return EffectAlgebra(names, perm[algebra.zero], perm[algebra.unit], table)


@pytest.fixture(scope="session")
def quadrant():
    return quadrant_algebra()


@pytest.fixture(scope="session")
def quadrant_measure(quadrant):
    # signed measure whose variation at the unit is 8 while the value there
    # has norm 2; order: empty, X+, X-, Y+, Y-, R2
    values = np.array([0.0, 1.0, 1.0, 5.0, -3.0, 2.0])
    return Measure(quadrant, values)


@pytest.fixture(scope="session")
def powerset3():
    return powerset_algebra(3)


@pytest.fixture(scope="session")
def scale10():
    return scale_algebra(10)


@pytest.fixture(scope="session")
def restriction5():
    return finite_restriction(5)
