import numpy as np
import pytest
from hypothesis import given, strategies as st

from riplayer.filtration import (
    IncrementalComponents,
    UnionFind,
    components,
    parameter_grid,
    sweep,
    vertex_set,
)

from .conftest import any_points, line, space_of
from .oracles import bfs_blocks, bfs_vertex_set, grid_values


def test_vertex_set_examples(line4):
    assert vertex_set(line4, 0, 0) == {0, 1, 2, 3}
    assert vertex_set(line4, 2, 2) == {1}
    assert vertex_set(line4, 3, 2) == {0, 1, 2}


def test_components_examples(line4):
    assert components(line4, 1, 0).blocks == (frozenset({0, 1}), frozenset({2}), frozenset({3}))
    assert components(line4, 1, 1).blocks == (frozenset({0, 1}),)
    assert components(line4, 100, 4).blocks == ()


def test_grid_examples(line4):
    assert parameter_grid(line4).values == (0, 1, 2, 3, 4, 6, 7)
    assert parameter_grid(line(5)).values == (0,)
    got = parameter_grid(line(0, 1, 3, 7, 7.2)).values
    assert got == pytest.approx((0, 0.2, 1, 2, 3, 4, 4.2, 6, 6.2, 7, 7.2))


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(0) == uf.find(3)
    assert uf.find(2) != uf.find(0)


def test_partition_helpers(line4):
    part = components(line4, 2, 0)
    assert part.vertices == {0, 1, 2, 3}
    assert part.block_of(2) == {0, 1, 2}
    assert components(line4, 1, 1).block_of(3) is None


@given(any_points, st.integers(0, 3))
def test_sweep_matches_bfs(points, k):
    sp = space_of(points)
    assert parameter_grid(sp).values == tuple(grid_values(sp.dist))
    for t, lab in sweep(sp, k):
        blocks = bfs_blocks(sp.dist, t, k)
        assert components(sp, t, k).blocks == tuple(blocks)
        got = sorted((frozenset(np.flatnonzero(lab == r).tolist()) for r in np.unique(lab[lab >= 0])), key=min)
        assert got == blocks
        assert vertex_set(sp, t, k) == bfs_vertex_set(sp.dist, t, k)


@given(any_points, st.integers(0, 3))
def test_monotone_in_s(points, k):
    sp = space_of(points)
    parts = [components(sp, t, k) for t in parameter_grid(sp)]
    for a, b in zip(parts, parts[1:]):
        assert a.vertices <= b.vertices
        for block in a.blocks:
            assert sum(block <= other for other in b.blocks) == 1


@given(any_points, st.integers(0, 3))
def test_antimonotone_in_k(points, k):
    sp = space_of(points)
    for t in parameter_grid(sp):
        assert vertex_set(sp, t, k + 1) <= vertex_set(sp, t, k)


@given(any_points, st.integers(0, 2), st.floats(0, 1))
def test_constant_between_events(points, k, frac):
    sp = space_of(points)
    g = parameter_grid(sp).values
    for a, b in zip(g, g[1:]):
        s = a + frac * (b - a)
        if s < b:
            assert components(sp, s, k).blocks == components(sp, a, k).blocks


def test_incremental_labels_use_min_index(line4):
    inc = IncrementalComponents(line4, 1)
    for _ in range(3):
        inc.advance()
    assert inc.value == 2
    assert inc.labels().tolist() == [0, 0, 0, -1]
