import pytest
from hypothesis import given, settings, strategies as st

from commpres.errors import (
    CycleDetected,
    NotConnected,
    RedundantCover,
    TrivialPoset,
    UnknownElement,
)
from commpres.poset import Poset, Walk, from_cover_relations


def test_two_chain_is_smallest(chain2):
    assert chain2.interval_length(1, 2) == 1
    assert chain2.maximal_chains() == [(1, 2)]
    assert chain2.strict_pairs == ((1, 2),)


def test_vee_construction(vee):
    assert vee.leq(1, 2) and vee.leq(1, 3)
    assert not vee.comparable(2, 3)
    assert vee.minimal_elements == (1,)
    assert vee.maximal_elements == (2, 3)


def test_twoarm_chains(twoarm):
    assert twoarm.maximal_chains() == [(1, 2, 3), (1, 4, 5)]


def test_vee_chains_exhaustive(vee):
    # Oracle: depth-first search over cover edges by hand gives exactly
    # the two cover chains.
    assert vee.maximal_chains() == [(1, 2), (1, 3)]


def test_trivial_poset_rejected():
    with pytest.raises(TrivialPoset):
        Poset([1], [])


def test_cycle_detected():
    with pytest.raises(CycleDetected):
        Poset([1, 2, 3], [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(CycleDetected):
        Poset([1, 2], [(1, 1)])


def test_redundant_cover_rejected():
    with pytest.raises(RedundantCover):
        Poset([1, 2, 3], [(1, 2), (2, 3), (1, 3)])


def test_disconnected_rejected():
    with pytest.raises(NotConnected):
        Poset([1, 2, 3, 4], [(1, 2), (3, 4)])


def test_unknown_labels_rejected():
    with pytest.raises(UnknownElement):
        Poset([1, 2], [(1, 9)])
    with pytest.raises(UnknownElement):
        Poset([1, 1], [])
    with pytest.raises(UnknownElement):
        Poset(["a,b", "c"], [("a,b", "c")])


def test_from_cover_relations_matches_constructor(vee):
    assert from_cover_relations([1, 2, 3], [(1, 2), (1, 3)]) == vee


def test_walks_vee(vee):
    assert list(vee.find_walk(2, 3)) == [2, 1, 3]
    assert list(vee.find_walk(1, 1)) == [1]


def test_walk_twoarm(twoarm):
    assert list(twoarm.find_walk(3, 5)) == [3, 2, 1, 4, 5]


def test_walk_concatenation_closes(twoarm):
    forward = twoarm.find_walk(3, 5)
    closed = Walk(forward.vertices + forward.reversed().vertices[1:])
    assert closed.is_closed
    assert twoarm.check_walk(closed)


def test_fundamental_cycles_trees(vee, chain2):
    assert vee.fundamental_cycles() == []
    assert chain2.fundamental_cycles() == []


def test_fundamental_cycles_crown(crown):
    cycles = crown.fundamental_cycles()
    assert len(cycles) == 1  # |E| - |V| + 1
    cycle = cycles[0]
    assert cycle.is_closed and cycle.step_count == 4
    edges = {frozenset(step) for step in cycle.steps()}
    assert edges == {frozenset(c) for c in crown.covers}


def test_interval_lengths(twoarm):
    assert twoarm.interval_length(1, 3) == 2
    assert twoarm.interval_length(1, 2) == 1
    assert twoarm.interval_length(2, 5) is None
    assert twoarm.interval(1, 3) == (1, 2, 3)


def test_length_one_iff_cover(crown, twoarm):
    for poset in (crown, twoarm):
        covers = set(poset.covers)
        for pair in poset.strict_pairs:
            assert (poset.interval_length(*pair) == 1) == (pair in covers)


def test_every_strict_pair_on_a_maximal_chain(crown, twoarm, vee):
    for poset in (crown, twoarm, vee):
        chains = poset.maximal_chains()
        for x, y in poset.strict_pairs:
            assert any(x in ch and y in ch for ch in chains)


def test_comparable_pairs_order(vee):
    assert vee.comparable_pairs == ((1, 1), (2, 2), (3, 3), (1, 2), (1, 3))
    assert vee.pair_index[(1, 3)] == 4


def test_walk_determinism(crown):
    assert list(crown.find_walk(3, 4)) == [3, 1, 4]
    assert [list(w.vertices) for w in crown.fundamental_cycles()] == [[2, 3, 1, 4, 2]]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.sets(st.tuples(st.integers(1, 5), st.integers(1, 5))))
def test_random_cover_sets_validate_or_raise(n, raw_pairs):
    elements = list(range(1, n + 1))
    pairs = [(a, b) for a, b in raw_pairs if a <= n and b <= n]
    try:
        poset = Poset(elements, pairs)
    except (CycleDetected, NotConnected, RedundantCover, TrivialPoset):
        return
    # When construction succeeds, the derived order must be a genuine
    # connected partial order with exact cover semantics.
    for x in elements:
        for y in elements:
            if poset.less(x, y):
                assert not poset.less(y, x)
            for z in elements:
                if poset.less(x, y) and poset.less(y, z):
                    assert poset.less(x, z)
    for a, b in poset.covers:
        assert poset.interval_length(a, b) == 1
    for x in elements:
        for y in elements:
            walk = poset.find_walk(x, y)
            assert poset.check_walk(walk)
            assert walk.vertices[0] == x and walk.vertices[-1] == y
