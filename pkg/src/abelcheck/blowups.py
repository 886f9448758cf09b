"""Combinatorics of iterated blowups of a product of coordinate divisors.

The local model is a hypersurface xy = u_1 ... u_{d+1} over a power
series base.  Blowing up loci of the form V(x, u_A) for subsets A of
F = {1, ..., d+1} resolves the singularities whenever the sequence of
subsets separates points of F.  Everything a resolution does to the
special fibre is then readable from the subset sequence alone: the
exceptional chain has d components, its d+1 nodes are matched with the
elements of F by an ordering induced by the sequence, and each node lies
on a definite set of strict transforms.

This module computes those invariants two independent ways: directly
from the pairwise separation rule, and by the chart recursion that
mirrors how the blowup actually splits into two charts.
"""

from __future__ import annotations

from dataclasses import dataclass


class NotSmoothError(ValueError):
    """The subset sequence fails to separate some pair of indices."""


@dataclass(frozen=True)
class SubsetCollection:
    """An ordered sequence of nonempty proper subsets of {1, ..., d_plus_1}."""

    d_plus_1: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "d_plus_1", int(self.d_plus_1))
        object.__setattr__(
            self, "sets", tuple(frozenset(int(i) for i in a) for a in self.sets)
        )
        if self.d_plus_1 < 1:
            raise ValueError("index set must be nonempty")
        universe = self.universe()
        for a in self.sets:
            if not a or a == universe:
                raise ValueError("each set must be nonempty and proper")
            if not a <= universe:
                raise ValueError(f"set {sorted(a)} leaves the index range")

    def universe(self) -> frozenset[int]:
        return frozenset(range(1, self.d_plus_1 + 1))


@dataclass(frozen=True)
class BlowupDivisor:
    """A blowup centre in one of the three shapes that occur.

    kind "x" is V(x, u_A), kind "y" is V(y, u_A), kind "diag" is the
    diagonal-type centre attached to A.  All three are equivalent to an
    x-type centre; :func:`normalize_divisor` returns its subset.
    """

    d_plus_1: int
    kind: str
    subset: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "d_plus_1", int(self.d_plus_1))
        object.__setattr__(
            self, "subset", frozenset(int(i) for i in self.subset)
        )
        if self.kind not in ("x", "y", "diag"):
            raise ValueError(f"unknown divisor kind {self.kind!r}")


def normalize_divisor(div: BlowupDivisor) -> frozenset[int]:
    """Subset of the equivalent x-type centre.

    y-type centres complement their subset (blowing up V(y, u_A) has the
    same effect as blowing up V(x, u_{A^c})); diagonal centres keep it.
    """
    if div.kind == "y":
        return frozenset(range(1, div.d_plus_1 + 1)) - div.subset
    return div.subset


def is_smooth_collection(col: SubsetCollection) -> bool:
    """True when every pair of distinct indices is separated by some set."""
    for m in range(1, col.d_plus_1 + 1):
        for n in range(m + 1, col.d_plus_1 + 1):
            if not any((m in a) != (n in a) for a in col.sets):
                return False
    return True


def _separated_before(col: SubsetCollection, m: int, n: int) -> bool:
    """m comes before n: the first separating set contains m."""
    for a in col.sets:
        if (m in a) != (n in a):
            return m in a
    raise NotSmoothError(f"indices {m} and {n} are never separated")


def collection_order(col: SubsetCollection) -> tuple[int, ...]:
    """Total order on indices induced by the subset sequence.

    Index m precedes n when the first set separating them contains m.
    The result lists the indices from first to last; smoothness makes
    this a strict total order, which is re-checked pairwise.
    """
    if not is_smooth_collection(col):
        raise NotSmoothError("collection does not separate all index pairs")
    order = list(range(1, col.d_plus_1 + 1))
    # insertion sort with the pairwise rule; transitivity is verified below
    for i in range(1, len(order)):
        j = i
        while j > 0 and _separated_before(col, order[j], order[j - 1]):
            order[j], order[j - 1] = order[j - 1], order[j]
            j -= 1
    for i, m in enumerate(order):
        for n in order[i + 1 :]:
            if not _separated_before(col, m, n):
                raise NotSmoothError(
                    "pairwise rule is not transitive on this input"
                )
    return tuple(order)


def node_assignment(col: SubsetCollection) -> tuple[int, ...]:
    """Which coordinate section each node of the exceptional chain meets.

    Entry i-1 is the index eta(i): node i of the resolved special fibre
    lies on the section of u_{eta(i)}.
    """
    return collection_order(col)


def strict_transform_incidence(
    col: SubsetCollection, i: int
) -> tuple[frozenset[int], frozenset[int]]:
    """Strict transforms through node i of the resolved fibre.

    Returns (x_side, y_side): node i lies on the x-type transforms of
    the first i indices in the induced order and on the y-type
    transforms of the indices from position i onward.
    """
    order = collection_order(col)
    if not (1 <= i <= col.d_plus_1):
        raise ValueError("node index out of range")
    return frozenset(order[:i]), frozenset(order[i - 1 :])


def restrict_collection(
    sets: tuple[frozenset[int], ...], members: frozenset[int]
) -> tuple[frozenset[int], ...]:
    """Trace of a subset sequence on a smaller index set.

    Intersections that become empty or swallow all of ``members`` are
    dropped: the corresponding centres are Cartier there and blowing
    them up changes nothing.
    """
    kept = []
    for a in sets:
        trace = a & members
        if trace and trace != members:
            kept.append(trace)
    return tuple(kept)


def _chart_nodes(
    elements: tuple[int, ...], sets: tuple[frozenset[int], ...]
) -> list[int]:
    if len(elements) == 1:
        return [elements[0]]
    first = sets[0]
    inside = tuple(e for e in elements if e in first)
    outside = tuple(e for e in elements if e not in first)
    rest = sets[1:]
    return _chart_nodes(inside, restrict_collection(rest, frozenset(inside))) + _chart_nodes(
        outside, restrict_collection(rest, frozenset(outside))
    )


def chart_order(col: SubsetCollection) -> tuple[int, ...]:
    """Node ordering recomputed by the two-chart recursion.

    The first blowup splits the model into a chart over its subset and a
    chart over the complement, each carrying the traced sequence, and
    contributes the one exceptional component joining the two partial
    chains.  Recursing gives the full node order independently of the
    pairwise rule; the two must agree.
    """
    if not is_smooth_collection(col):
        raise NotSmoothError("collection does not separate all index pairs")
    elements = tuple(range(1, col.d_plus_1 + 1))
    return tuple(_chart_nodes(elements, col.sets))
