import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degsplit.graph import Graph, weak_diameter
from degsplit.generators import gen_cycle, gen_path, gen_random_regular
from degsplit.split import build_split_graph, components_paths_cycles, true_length
from degsplit.voting import (ComponentIndex, block_intersection_graph, candidate_blocks, complete_residual,
                             local_voting_block,
                             residual_components, ruling_set, select_disjoint_blocks)


def _check_selection(s, ell, blocks):
    seen = set()
    for b in blocks:
        assert not seen & set(b.nodes)
        seen |= set(b.nodes)
        assert true_length(s, b.nodes) >= ell
        assert b.weak_diameter(s) <= ell
        assert len(b.nodes) <= ell * ell
    for comp in residual_components(s, seen):
        assert weak_diameter(s.graph, {s.creator(i) for i in comp}) < ell


def test_ruling_set_examples():
    assert ruling_set(Graph(0, [])).vertices == []
    star = Graph(5, [(1, v) for v in range(2, 6)])
    assert ruling_set(star).vertices == [1]
    assert ruling_set(gen_path(5)).vertices == [1, 3, 5]
    with pytest.raises(ValueError):
        ruling_set(star, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 25), st.lists(st.tuples(st.integers(1, 25), st.integers(1, 25)), max_size=60))
def test_ruling_set_contract(n, pairs):
    g = Graph(n, [(a, b) for a, b in pairs if a != b and a <= n and b <= n])
    rs = ruling_set(g)
    chosen = set(rs.vertices)
    for _, u, v in g.edges():
        assert not (u in chosen and v in chosen)
    for v in g.vertices:
        assert v in chosen or any(w in chosen for w in g.neighbors(v))
    assert (rs.alpha, rs.beta) == (2, 1)


def test_local_block_short_component():
    s = build_split_graph(gen_path(2))
    assert local_voting_block(s, 0, 5) is None
    with pytest.raises(ValueError):
        local_voting_block(s, 0, 0)


def test_local_block_whole_component():
    s = build_split_graph(gen_cycle(5))
    blk = local_voting_block(s, 0, 5)
    assert sorted(blk.nodes) == list(range(5))


def test_local_block_on_long_path():
    s = build_split_graph(gen_path(60))
    ell = 7
    for v in range(s.num_nodes):
        blk = local_voting_block(s, v, ell)
        assert v in blk.nodes
        assert true_length(s, blk.nodes) >= ell
        assert blk.weak_diameter(s) <= ell


def test_select_all_short():
    s = build_split_graph(Graph(6, [(1, 2), (2, 3), (3, 1), (4, 5)]))
    assert select_disjoint_blocks(s, 5) == []


def test_select_long_path():
    ell = 6
    s = build_split_graph(gen_path(10 * ell))
    blocks = select_disjoint_blocks(s, ell)
    assert len(blocks) >= 1
    _check_selection(s, ell, blocks)


def test_completion_loop_fires_on_cycle_of_nonadjacent_creators():
    # a long cycle in the split graph whose consecutive creators are far apart in G
    g = gen_random_regular(300, 4, 11)
    s = build_split_graph(g)
    for ell in (4, 8, 16):
        _check_selection(s, ell, select_disjoint_blocks(s, ell))


def test_greedy_phase_is_ruling_set_of_intersection_graph():
    g = gen_random_regular(200, 6, 5)
    s = build_split_graph(g)
    ell = 8
    index = ComponentIndex(s)
    cands = candidate_blocks(s, ell, index)
    gb = block_intersection_graph(cands)
    assert gb.max_degree <= 3 * ell * ell
    mis = {cands[i - 1].nodes for i in ruling_set(gb).vertices}
    chosen = {b.nodes for b in select_disjoint_blocks(s, ell, index)}
    assert mis <= chosen
    extra = chosen - mis
    covered = {x for b in mis for x in b}
    assert all(not covered & set(b) for b in extra)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(40, 3), (60, 4), (50, 5), (80, 6)]), st.integers(0, 10_000), st.integers(2, 12))
def test_select_random(nd, seed, ell):
    g = gen_random_regular(nd[0], nd[1], seed)
    s = build_split_graph(g)
    blocks = select_disjoint_blocks(s, ell)
    _check_selection(s, ell, blocks)
    assert block_intersection_graph(candidate_blocks(s, ell)).max_degree <= 3 * ell * ell
    creators_per_block = [len({s.creator(i) for i in b.nodes}) for b in blocks]
    assert all(c >= ell for c in creators_per_block)


def test_components_in_split_are_indexed():
    s = build_split_graph(gen_random_regular(50, 4, 1))
    idx = ComponentIndex(s)
    for ci, c in enumerate(components_paths_cycles(s)):
        for p, node in enumerate(c.nodes):
            assert idx.where[node] == (ci, p)


@pytest.mark.parametrize("cyclic", [False, True])
def test_completion_loop_from_empty_selection(cyclic):
    ell = 5
    g = gen_cycle(12 * ell) if cyclic else gen_path(12 * ell)
    s = build_split_graph(g)
    (comp,) = components_paths_cycles(s)
    used = bytearray(s.num_nodes)
    blocks = complete_residual(s, 0, comp, ell, used)
    assert blocks
    assert {i for b in blocks for i in b.nodes} == {i for i in range(s.num_nodes) if used[i]}
    _check_selection(s, ell, blocks)


def test_completion_loop_respects_prior_blocks():
    ell = 4
    s = build_split_graph(gen_path(50))
    (comp,) = components_paths_cycles(s)
    used = bytearray(s.num_nodes)
    for node in comp.nodes[20:24]:
        used[node] = 1
    blocks = complete_residual(s, 0, comp, ell, used)
    assert all(not set(b.nodes) & set(comp.nodes[20:24]) for b in blocks)
    taken = [i for i in range(s.num_nodes) if used[i]]
    for piece in residual_components(s, taken):
        assert weak_diameter(s.graph, {s.creator(i) for i in piece}) < ell
