from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from abelcheck import DualGraph, Multidegree, Polarization, Subcurve


def two_component(q: int) -> DualGraph:
    return DualGraph(2, tuple((1, 2) for _ in range(q)), marked=1)


def path_graph(p: int) -> DualGraph:
    return DualGraph(p, tuple((i, i + 1) for i in range(1, p)), marked=1)


def cycle_graph(p: int) -> DualGraph:
    nodes = tuple((i, i + 1) for i in range(1, p)) + ((p, 1),)
    return DualGraph(p, nodes, marked=1)


def all_proper_subsets(p: int):
    full = range(1, p + 1)
    for size in range(1, p):
        for combo in itertools.combinations(full, size):
            yield Subcurve(frozenset(combo))


def multidegrees_summing(p: int, bound: int, total: int):
    """Every integer vector with |entry| <= bound and the given total."""
    for degs in itertools.product(range(-bound, bound + 1), repeat=p):
        if sum(degs) == total:
            yield Multidegree(degs)


@pytest.fixture
def zero_pol_two():
    return Polarization((Fraction(0), Fraction(0)))
