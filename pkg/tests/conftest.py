"""Shared posets and complexes for the test suite."""

import pytest

from cdgor.poset import join, make_poset
from cdgor.realize import build_boolean2, build_cycle_poset
from cdgor.simplicial import SimplicialComplex, simplicial_join, zero_sphere


def block_set():
    """B̂_2, C_3..C_6 and all their pairwise joins, keyed by name."""
    blocks = {"B2": build_boolean2()}
    for k in range(3, 7):
        blocks[f"C{k}"] = build_cycle_poset(k)
    singles = list(blocks.items())
    for name_p, p in singles:
        for name_q, q in singles:
            blocks[f"{name_p}*{name_q}"] = join(p, q)
    return blocks


@pytest.fixture(scope="session")
def blocks():
    return block_set()


@pytest.fixture
def b2():
    return build_boolean2()


@pytest.fixture
def chain3():
    """Chain 0̂ < 1 < 2 < 1̂ of rank 3."""
    return make_poset({0: 0, 1: 1, 2: 2, 3: 3}, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def octahedron():
    return simplicial_join(simplicial_join(zero_sphere(0, 1), zero_sphere(2, 3)),
                           zero_sphere(4, 5))


@pytest.fixture
def hollow_triangle():
    return SimplicialComplex([(0, 1), (1, 2), (0, 2)])
