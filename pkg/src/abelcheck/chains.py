"""Curves with nodes replaced by chains of rational components.

Starting from a dual graph, every node is blown up into a chain of
``chain_len`` rational curves.  Degrees live on the original (base)
components and on the chain components.  The module provides the
admissibility test for chain degrees, the semistabilization procedure
that twists away degree-1 subchains, and the combined hypothesis check
that guarantees the pushforward to the base curve is quasistable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

from .curves import (
    DegreeMismatchError,
    DualGraph,
    Multidegree,
    Polarization,
    Subcurve,
    admissible_subcurves,
    is_quasistable,
    quasistable_over,
)


class NotAdmissibleError(ValueError):
    """A chain carries a connected subchain of degree outside {-1, 0, 1}."""


class AmbiguousSubchainError(RuntimeError):
    """Two incomparable maximal degree-1 subchains; no canonical twist."""


@dataclass(frozen=True)
class ChainCurve:
    """A dual graph whose nodes have been stretched into chains.

    ``chain_degs[t]`` holds the degrees on the chain replacing node t,
    listed from the first endpoint of the node pair toward the second.
    All chains have the same length ``chain_len`` (possibly zero).
    """

    base: DualGraph
    chain_len: int
    base_degs: tuple[int, ...]
    chain_degs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chain_len", int(self.chain_len))
        object.__setattr__(self, "base_degs", tuple(int(d) for d in self.base_degs))
        object.__setattr__(
            self,
            "chain_degs",
            tuple(tuple(int(d) for d in row) for row in self.chain_degs),
        )
        if self.chain_len < 0:
            raise ValueError("chain length cannot be negative")
        if len(self.base_degs) != self.base.components:
            raise ValueError("base degree count does not match component count")
        if len(self.chain_degs) != len(self.base.nodes):
            raise ValueError("one chain per node required")
        for row in self.chain_degs:
            if len(row) != self.chain_len:
                raise ValueError("every chain must have chain_len entries")

    @property
    def total(self) -> int:
        return sum(self.base_degs) + sum(sum(row) for row in self.chain_degs)

    def component_index(self, node: int, position: int) -> int:
        """Index of chain component ``position`` (1-based) over node ``node`` (0-based)."""
        p = self.base.components
        return p + node * self.chain_len + position

    def to_graph(self) -> DualGraph:
        return _stretched_graph(self.base, self.chain_len)

    def flat_degrees(self) -> Multidegree:
        degs = list(self.base_degs)
        for row in self.chain_degs:
            degs.extend(row)
        return Multidegree(tuple(degs))


def _stretched_graph(base: DualGraph, chain_len: int) -> DualGraph:
    p = base.components
    if chain_len == 0:
        return base
    edges: list[tuple[int, int]] = []
    for t, (r, s) in enumerate(base.nodes):
        first = p + t * chain_len + 1
        last = p + t * chain_len + chain_len
        edges.append((r, first))
        for i in range(first, last):
            edges.append((i, i + 1))
        edges.append((last, s))
    return DualGraph(p + len(base.nodes) * chain_len, tuple(edges), base.marked)


def induced_polarization(pol: Polarization, node_count: int, chain_len: int) -> Polarization:
    """Extend a base polarization by zero weights on all chain components."""
    from fractions import Fraction

    return Polarization(pol.weights + (Fraction(0),) * (node_count * chain_len))


def _window_sums_bounded(row: tuple[int, ...]) -> bool:
    for lo in range(len(row)):
        running = 0
        for hi in range(lo, len(row)):
            running += row[hi]
            if not -1 <= running <= 1:
                return False
    return True


def is_admissible(c: ChainCurve) -> bool:
    """True when every connected subchain has degree -1, 0 or 1."""
    return all(_window_sums_bounded(row) for row in c.chain_degs)


def _maximal_unit_window(row: list[int]) -> tuple[int, int] | None:
    """Inclusion-maximal window (lo, hi), 0-based inclusive, of sum exactly 1.

    Raises AmbiguousSubchainError when two incomparable maximal windows
    exist.  For admissible rows the maximal window is unique: the hull of
    two degree-1 windows is again a degree-1 window.
    """
    windows = []
    for lo in range(len(row)):
        running = 0
        for hi in range(lo, len(row)):
            running += row[hi]
            if running == 1:
                windows.append((lo, hi))
    maximal = [
        w
        for w in windows
        if not any(
            v != w and v[0] <= w[0] and w[1] <= v[1] for v in windows
        )
    ]
    if not maximal:
        return None
    if len(maximal) > 1:
        raise AmbiguousSubchainError(
            f"incomparable maximal degree-1 subchains {maximal}"
        )
    return maximal[0]


@dataclass(frozen=True)
class ChainTwister:
    """Accumulated twist multiplicities per chain, with the window history.

    ``history[i][t]`` is the window (0-based, inclusive) twisted on node
    t's chain during iteration i, or None when that chain was already
    clean.  Windows shrink strictly, which bounds the iteration count by
    the chain length.
    """

    multiplicities: tuple[tuple[int, ...], ...]
    history: tuple[tuple[tuple[int, int] | None, ...], ...]


class SemistabilizeResult(NamedTuple):
    twister: ChainTwister
    curve: ChainCurve


def semistabilize(c: ChainCurve) -> SemistabilizeResult:
    """Twist away all degree-1 subchains of an admissible configuration.

    Each iteration locates, per chain, the maximal connected subchain of
    degree exactly 1 and twists by it: members change by (neighbours
    inside the window) - 2, and each outside neighbour (chain component
    or base endpoint) gains 1.  The located windows are strictly nested
    over time, so at most chain_len iterations run.
    """
    if not is_admissible(c):
        raise NotAdmissibleError("chain degrees must be admissible")
    d = c.chain_len
    base = list(c.base_degs)
    rows = [list(row) for row in c.chain_degs]
    mult = [[0] * d for _ in c.chain_degs]
    previous: list[tuple[int, int] | None] = [None] * len(rows)
    history: list[tuple[tuple[int, int] | None, ...]] = []
    for iteration in range(d):
        windows = [_maximal_unit_window(row) for row in rows]
        if all(w is None for w in windows):
            break
        for t, window in enumerate(windows):
            if window is None:
                continue
            prior = previous[t] if iteration > 0 else None
            if iteration > 0 and (
                prior is None
                or not (prior[0] <= window[0] and window[1] <= prior[1])
                or window == prior
            ):
                raise AssertionError(
                    "twist windows must shrink strictly between iterations"
                )
            lo, hi = window
            r, s = c.base.nodes[t]
            for k in range(lo, hi + 1):
                inside = (k - 1 >= lo) + (k + 1 <= hi)
                rows[t][k] += inside - 2
                mult[t][k] += 1
            if lo > 0:
                rows[t][lo - 1] += 1
            else:
                base[r - 1] += 1
            if hi < d - 1:
                rows[t][hi + 1] += 1
            else:
                base[s - 1] += 1
        previous = windows
        history.append(tuple(windows))
    twister = ChainTwister(
        tuple(tuple(m) for m in mult), tuple(history)
    )
    final = ChainCurve(
        c.base, d, tuple(base), tuple(tuple(row) for row in rows)
    )
    return SemistabilizeResult(twister, final)


def _is_contracted(c: ChainCurve, y: Subcurve) -> bool:
    """True when the subcurve consists of chain components only.

    A connected subcurve without base components sits inside a single
    chain, so the contraction to the base curve collapses it to a point.
    """
    return all(i > c.base.components for i in y.members)


def pushforward_quasistable(
    c: ChainCurve, pol: Polarization, marked: int | None = None
) -> bool:
    """Hypothesis check guaranteeing a quasistable pushforward.

    Returns True when the configuration is admissible and quasistable
    over every connected subcurve with connected complement where
    neither side is contracted.  When the hypotheses hold, the
    semistabilized configuration is itself quasistable on the stretched
    graph with the zero-extended polarization; this implication is
    re-verified here as a cross-check.
    """
    if len(pol.weights) != c.base.components:
        raise ValueError("polarization length does not match base component count")
    graph = c.to_graph()
    if marked is not None and marked != graph.marked:
        graph = replace(graph, marked=int(marked))
    extended = induced_polarization(pol, len(c.base.nodes), c.chain_len)
    degs = c.flat_degrees()
    if degs.total != extended.e:
        raise DegreeMismatchError(
            f"chain degree total {degs.total} != polarization degree {extended.e}"
        )
    if not is_admissible(c):
        return False
    for y in admissible_subcurves(graph):
        if _is_contracted(c, y) or _is_contracted(c, y.complement(graph)):
            continue
        if not quasistable_over(graph, extended, degs, y):
            return False
    _, settled = semistabilize(c)
    check = is_quasistable(graph, extended, settled.flat_degrees())
    if not check.ok:
        raise AssertionError(
            f"semistabilized degrees fail stability over {check.witness}; "
            "twist bookkeeping bug"
        )
    return True
