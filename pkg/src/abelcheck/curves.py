"""Dual graphs of nodal curves and quasistability of multidegrees.

A nodal curve with smooth components is modelled by its dual graph: one
vertex per component, one edge per node.  All degree bookkeeping is exact;
polarizations are tuples of :class:`fractions.Fraction`.

The central notion is quasistability of a multidegree with respect to a
polarization and a marked component.  For a subcurve Y with boundary size
k(Y), write m(Y) = deg(Y) - weight(Y) for its stability margin.  The
multidegree is quasistable when every subcurve satisfies

    -k(Y)/2 <  m(Y) <= k(Y)/2   if Y carries the marked point,
    -k(Y)/2 <= m(Y) <  k(Y)/2   otherwise.

It suffices to test connected subcurves with connected complement; the
test suite checks this reduction against an all-subsets oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class DegreeMismatchError(ValueError):
    """Total degree of the multidegree does not match the polarization."""


class TwistSearchExhaustedError(RuntimeError):
    """No quasistable representative was found within the search radius."""


@dataclass(frozen=True)
class DualGraph:
    """Connected dual graph of a nodal curve with a marked component.

    Components are numbered 1..components.  ``nodes`` is a multiset of
    pairs (r, s) with r != s; parallel pairs are allowed and count
    separately.  The pair order is preserved because callers may attach
    orientation-dependent data (which branch a section meets) to it.
    """

    components: int
    nodes: tuple[tuple[int, int], ...]
    marked: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", int(self.components))
        object.__setattr__(
            self, "nodes", tuple((int(r), int(s)) for r, s in self.nodes)
        )
        object.__setattr__(self, "marked", int(self.marked))
        p = self.components
        if p < 1:
            raise ValueError("a curve needs at least one component")
        for r, s in self.nodes:
            if not (1 <= r <= p and 1 <= s <= p):
                raise ValueError(f"node ({r}, {s}) mentions a missing component")
            if r == s:
                raise ValueError("components are smooth: no node joins one to itself")
        if not (1 <= self.marked <= p):
            raise ValueError("marked component out of range")
        if not _is_connected(p, self.nodes, frozenset(range(1, p + 1))):
            raise ValueError("dual graph must be connected")

    def valence(self, i: int) -> int:
        """Number of nodes touching component i, with multiplicity."""
        return sum((r == i) + (s == i) for r, s in self.nodes)


@dataclass(frozen=True)
class Subcurve:
    """A nonempty proper set of components of some dual graph."""

    members: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))
        if not self.members:
            raise ValueError("a subcurve has at least one component")

    def complement(self, g: DualGraph) -> "Subcurve":
        return Subcurve(frozenset(range(1, g.components + 1)) - self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class Polarization:
    """Rational component weights whose total is an integer."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights)
        )
        if not self.weights:
            raise ValueError("empty polarization")
        if sum(self.weights).denominator != 1:
            raise ValueError("polarization weights must sum to an integer")

    @property
    def e(self) -> int:
        """Total degree of the polarization."""
        return int(sum(self.weights))


@dataclass(frozen=True)
class Multidegree:
    """Integer degree of a line bundle on each component."""

    degs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degs", tuple(int(d) for d in self.degs))
        if not self.degs:
            raise ValueError("empty multidegree")

    @property
    def total(self) -> int:
        return sum(self.degs)


@dataclass(frozen=True)
class TwistVector:
    """Integer coefficients of a component-supported twist divisor."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("empty twist vector")

    def canonical(self) -> "TwistVector":
        """Shift by a constant so the minimum coefficient is zero.

        Constant vectors act trivially, so this picks one representative
        per equivalence class of twists.
        """
        low = min(self.coeffs)
        return TwistVector(tuple(c - low for c in self.coeffs))


def _is_connected(
    p: int, nodes: tuple[tuple[int, int], ...], members: frozenset[int]
) -> bool:
    if not members:
        return False
    adjacency: dict[int, set[int]] = {i: set() for i in members}
    for r, s in nodes:
        if r in members and s in members:
            adjacency[r].add(s)
            adjacency[s].add(r)
    seen = {next(iter(members))}
    frontier = list(seen)
    while frontier:
        current = frontier.pop()
        for other in adjacency[current]:
            if other not in seen:
                seen.add(other)
                frontier.append(other)
    return len(seen) == len(members)


def boundary_count(g: DualGraph, y: Subcurve) -> int:
    """Number of nodes joining y to its complement (k(Y))."""
    members = y.members
    return sum(1 for r, s in g.nodes if (r in members) != (s in members))


def subcurve_degree(md: Multidegree, y: Subcurve) -> int:
    return sum(md.degs[i - 1] for i in y.members)


def subcurve_weight(pol: Polarization, y: Subcurve) -> Fraction:
    return sum((pol.weights[i - 1] for i in y.members), Fraction(0))


@lru_cache(maxsize=None)
def admissible_subcurves(g: DualGraph) -> tuple[Subcurve, ...]:
    """Connected subcurves with connected complement, smallest first.

    These are exactly the subcurves that need checking for
    quasistability; the order is deterministic (by size, then members).
    """
    p = g.components
    everything = frozenset(range(1, p + 1))
    found = []
    for size in range(1, p):
        for combo in itertools.combinations(range(1, p + 1), size):
            members = frozenset(combo)
            if _is_connected(p, g.nodes, members) and _is_connected(
                p, g.nodes, everything - members
            ):
                found.append(Subcurve(members))
    return tuple(found)


def quasistable_over(
    g: DualGraph, pol: Polarization, md: Multidegree, y: Subcurve
) -> bool:
    """Stability inequality for a single subcurve.

    The side carrying the marked point gets the half-open interval that
    is closed on the right; the other side gets the mirror image.
    """
    margin = subcurve_degree(md, y) - subcurve_weight(pol, y)
    half = Fraction(boundary_count(g, y), 2)
    if g.marked in y.members:
        return -half < margin <= half
    return -half <= margin < half


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a quasistability test, with the first violation if any."""

    ok: bool
    witness: Subcurve | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_quasistable(g: DualGraph, pol: Polarization, md: Multidegree) -> StabilityVerdict:
    """Test quasistability of ``md`` against ``pol`` on ``g``.

    Raises DegreeMismatchError when the totals disagree.  On failure the
    verdict carries the first violating subcurve in the deterministic
    order of :func:`admissible_subcurves`.
    """
    _check_sizes(g, pol, md)
    if md.total != pol.e:
        raise DegreeMismatchError(
            f"multidegree total {md.total} != polarization degree {pol.e}"
        )
    for y in admissible_subcurves(g):
        if not quasistable_over(g, pol, md, y):
            return StabilityVerdict(False, y)
    return StabilityVerdict(True, None)


def _check_sizes(g: DualGraph, pol: Polarization | None, md: Multidegree | None) -> None:
    if pol is not None and len(pol.weights) != g.components:
        raise ValueError("polarization length does not match component count")
    if md is not None and len(md.degs) != g.components:
        raise ValueError("multidegree length does not match component count")


def twist_action(g: DualGraph, md: Multidegree, z: TwistVector) -> Multidegree:
    """Apply a twist to a multidegree.

    Component i changes by sum over nodes at i of (z_i - z_other); the
    total degree is conserved and constant vectors act trivially.
    """
    _check_sizes(g, None, md)
    if len(z.coeffs) != g.components:
        raise ValueError("twist vector length does not match component count")
    degs = list(md.degs)
    for r, s in g.nodes:
        step = z.coeffs[r - 1] - z.coeffs[s - 1]
        degs[r - 1] += step
        degs[s - 1] -= step
    return Multidegree(tuple(degs))


def iter_canonical_twists(p: int, max_radius: int):
    """Yield canonical twist tuples by increasing radius, lexicographic within.

    Canonical means the minimum coefficient is 0; the radius is the
    maximum coefficient.  Every twist class appears exactly once.
    """
    yield (0,) * p
    for radius in range(1, max_radius + 1):
        for coeffs in itertools.product(range(radius + 1), repeat=p):
            if min(coeffs) == 0 and max(coeffs) == radius:
                yield coeffs


def default_search_radius(g: DualGraph, pol: Polarization, md: Multidegree) -> int:
    """Search bound derived from the per-component imbalance.

    A stabilizing twist only has to shuttle the excess deg_i - w_i
    across the graph, so its coefficient spread is controlled by the
    total imbalance; the bound below is deliberately generous because
    the search stops at the first hit and the cap only matters for the
    exhaustion error path.
    """
    peak = max(math.ceil(abs(Fraction(d) - w)) for d, w in zip(md.degs, pol.weights))
    return 2 * (abs(pol.e) + g.components * peak) + g.components


class _StabilityTable:
    """Precomputed subcurve data for repeated stability tests on one graph."""

    def __init__(self, g: DualGraph, pol: Polarization):
        _check_sizes(g, pol, None)
        self.rows: list[tuple[tuple[int, ...], bool, Fraction, Fraction]] = []
        for y in admissible_subcurves(g):
            self.rows.append(
                (
                    y.sorted_members(),
                    g.marked in y.members,
                    subcurve_weight(pol, y),
                    Fraction(boundary_count(g, y), 2),
                )
            )

    def accepts(self, degs: tuple[int, ...]) -> bool:
        for members, has_mark, weight, half in self.rows:
            margin = sum(degs[i - 1] for i in members) - weight
            if has_mark:
                if not (-half < margin <= half):
                    return False
            elif not (-half <= margin < half):
                return False
        return True


def quasistable_twist_search(
    g: DualGraph,
    pol: Polarization,
    md: Multidegree,
    max_radius: int | None = None,
) -> TwistVector:
    """Find the canonical twist whose action makes ``md`` quasistable.

    The search is breadth-first over canonical twist vectors, so the
    representative with the smallest radius is returned; there is exactly
    one per input (the test suite checks uniqueness by exhaustion).
    Raises TwistSearchExhaustedError past ``max_radius``.
    """
    _check_sizes(g, pol, md)
    if md.total != pol.e:
        raise DegreeMismatchError(
            f"multidegree total {md.total} != polarization degree {pol.e}"
        )
    if max_radius is None:
        max_radius = default_search_radius(g, pol, md)
    table = _StabilityTable(g, pol)
    for coeffs in iter_canonical_twists(g.components, max_radius):
        candidate = twist_action(g, md, TwistVector(coeffs))
        if table.accepts(candidate.degs):
            return TwistVector(coeffs)
    raise TwistSearchExhaustedError(
        f"no quasistable twist within radius {max_radius}; "
        "this points at malformed input or a bookkeeping bug"
    )
