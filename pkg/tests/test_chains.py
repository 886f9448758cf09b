from __future__ import annotations

import random
from fractions import Fraction

import pytest

from abelcheck import (
    AmbiguousSubchainError,
    ChainCurve,
    DegreeMismatchError,
    NotAdmissibleError,
    Polarization,
    induced_polarization,
    is_admissible,
    is_quasistable,
    pushforward_quasistable,
    semistabilize,
)
from abelcheck.chains import _maximal_unit_window
from conftest import path_graph, two_component


def _single_chain(base_degs, row):
    return ChainCurve(two_component(1), len(row), tuple(base_degs), (tuple(row),))


def test_admissibility_bounds_every_connected_subchain():
    assert is_admissible(_single_chain((0, 0), (1, 0, -1)))
    assert is_admissible(_single_chain((0, 0), (0, 0, 0)))
    assert is_admissible(_single_chain((0, 0), (-1, 1, -1)))
    assert not is_admissible(_single_chain((0, 0), (1, 1, -1)))
    assert not is_admissible(_single_chain((0, 0), (2, -1, 0)))
    assert not is_admissible(_single_chain((0, 0), (0, -1, -1)))


def test_zero_length_chains_are_trivially_admissible():
    c = ChainCurve(two_component(1), 0, (1, 2), ((),))
    assert is_admissible(c)
    assert c.to_graph() == two_component(1)
    assert semistabilize(c).curve == c


def test_semistabilize_single_component_chain():
    result = semistabilize(_single_chain((2, 3), (1,)))
    assert result.curve.base_degs == (3, 4)
    assert result.curve.chain_degs == ((-1,),)
    assert result.twister.multiplicities == ((1,),)
    assert result.twister.history == (((0, 0),),)


def test_semistabilize_twists_twice_on_a_nested_window():
    result = semistabilize(_single_chain((5, 7), (0, 1, 0)))
    assert result.curve.base_degs == (6, 8)
    assert result.curve.chain_degs == ((0, -1, 0),)
    assert result.twister.multiplicities == ((1, 2, 1),)
    assert result.twister.history == (((0, 2),), ((1, 1),))


def test_semistabilize_leaves_clean_chains_alone():
    start = _single_chain((4, 4), (0, -1, 0))
    result = semistabilize(start)
    assert result.curve == start
    assert result.twister.history == ()
    assert result.twister.multiplicities == ((0, 0, 0),)


def test_semistabilize_handles_two_chains_in_the_same_round():
    c = ChainCurve(two_component(2), 1, (0, 0), ((1,), (1,)))
    result = semistabilize(c)
    assert result.curve.base_degs == (2, 2)
    assert result.curve.chain_degs == ((-1,), (-1,))
    assert result.twister.history == (((0, 0), (0, 0)),)


def test_semistabilize_rejects_inadmissible_input():
    with pytest.raises(NotAdmissibleError):
        semistabilize(_single_chain((0, 0), (1, 1, -1)))


def test_maximal_unit_window_prefers_the_hull():
    # (1, -1, 1) has three degree-1 windows; their hull wins.
    assert _maximal_unit_window([1, -1, 1]) == (0, 2)
    assert _maximal_unit_window([0, 1, 0]) == (0, 2)
    assert _maximal_unit_window([0, -1, 0]) is None
    assert _maximal_unit_window([]) is None


def test_incomparable_maximal_windows_raise_instead_of_guessing():
    # Only reachable on inadmissible rows; the guard stays defensive.
    with pytest.raises(AmbiguousSubchainError):
        _maximal_unit_window([1, 0, 1])


def _random_admissible_row(rng, d):
    while True:
        row = tuple(rng.choice((-1, 0, 1)) for _ in range(d))
        if is_admissible(_single_chain((0, 0), row)):
            return row


def test_semistabilize_random_property_sweep():
    rng = random.Random(20260819)
    bases = [two_component(1), two_component(2), path_graph(3)]
    for _ in range(120):
        base = rng.choice(bases)
        d = rng.randint(1, 6)
        rows = tuple(_random_admissible_row(rng, d) for _ in base.nodes)
        degs = tuple(rng.randint(-3, 3) for _ in range(base.components))
        start = ChainCurve(base, d, degs, rows)
        result = semistabilize(start)
        final = result.curve

        assert final.total == start.total
        assert is_admissible(final)
        # Fixed point: no degree-1 window survives anywhere.
        for row in final.chain_degs:
            assert _maximal_unit_window(list(row)) is None
        again = semistabilize(final)
        assert again.curve == final
        assert again.twister.history == ()

        assert len(result.twister.history) <= d
        for t in range(len(rows)):
            trail = [step[t] for step in result.twister.history if step[t] is not None]
            for earlier, later in zip(trail, trail[1:]):
                assert earlier[0] <= later[0] and later[1] <= earlier[1]
                assert later != earlier
        for mult_row in result.twister.multiplicities:
            assert all(m >= 0 for m in mult_row)


def test_induced_polarization_pads_with_zero_weights():
    pol = Polarization((Fraction(1, 2), Fraction(1, 2)))
    padded = induced_polarization(pol, node_count=2, chain_len=3)
    assert padded.weights == pol.weights + (Fraction(0),) * 6
    assert padded.e == pol.e


def test_pushforward_hypothesis_accepts_a_worked_example():
    # Two nodes between the components; the first chain carries degree 1.
    c = ChainCurve(two_component(2), 1, (1, -1), ((1,), (0,)))
    pol = Polarization((Fraction(1), Fraction(0)))
    assert pushforward_quasistable(c, pol) is True
    # The conclusion it certifies: after semistabilizing, the flat
    # degrees are quasistable on the stretched graph.
    settled = semistabilize(c).curve
    extended = induced_polarization(pol, 2, 1)
    assert is_quasistable(settled.to_graph(), extended, settled.flat_degrees()).ok


def test_pushforward_hypothesis_rejects_a_skewed_example():
    c = ChainCurve(two_component(2), 1, (2, -2), ((1,), (0,)))
    pol = Polarization((Fraction(1), Fraction(0)))
    assert pushforward_quasistable(c, pol) is False


def test_pushforward_hypothesis_rejects_inadmissible_chains():
    c = ChainCurve(two_component(1), 2, (1, 0), ((1, 1),))
    pol = Polarization((Fraction(3),))
    with pytest.raises(ValueError):
        # Polarization length mismatches the base graph.
        pushforward_quasistable(c, pol)
    pol = Polarization((Fraction(2), Fraction(1)))
    assert pushforward_quasistable(c, pol) is False


def test_pushforward_checks_the_degree_total_first():
    c = ChainCurve(two_component(1), 1, (1, 1), ((0,),))
    with pytest.raises(DegreeMismatchError):
        pushforward_quasistable(c, Polarization((Fraction(1), Fraction(0))))


def test_single_node_hypothesis_forces_zero_chain_rows():
    # With one node, margins along the chain differ by integers inside a
    # length-one window, so only the all-zero row can pass.
    pol = Polarization((Fraction(1), Fraction(1)))
    passing = []
    for row in [(0, 0), (1, -1), (-1, 1), (0, 1), (1, 0), (-1, 0), (0, -1)]:
        degs = (1, 1 - sum(row))
        c = ChainCurve(two_component(1), 2, degs, (row,))
        if is_admissible(c) and pushforward_quasistable(c, pol):
            passing.append(row)
    assert passing == [(0, 0)]


def test_component_index_walks_chains_in_storage_order():
    c = ChainCurve(two_component(2), 3, (0, 0), ((0, 0, 0), (0, 0, 0)))
    assert c.component_index(0, 1) == 3
    assert c.component_index(0, 3) == 5
    assert c.component_index(1, 1) == 6
    assert c.component_index(1, 3) == 8


def test_stretched_graph_wiring_matches_component_indices():
    c = ChainCurve(two_component(1), 2, (1, 2), ((0, 0),))
    g = c.to_graph()
    assert g.components == 4
    assert g.nodes == ((1, 3), (3, 4), (4, 2))
    assert c.flat_degrees().degs == (1, 2, 0, 0)


def test_chain_curve_shape_validation():
    base = two_component(1)
    with pytest.raises(ValueError):
        ChainCurve(base, -1, (0, 0), ((),))
    with pytest.raises(ValueError):
        ChainCurve(base, 1, (0,), ((0,),))
    with pytest.raises(ValueError):
        ChainCurve(base, 1, (0, 0), ())
    with pytest.raises(ValueError):
        ChainCurve(base, 2, (0, 0), ((0,),))
