import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from riplayer.hierarchy import NodeRef, build
from riplayer.layers import (
    LayerParameters,
    branch_points,
    check_invariants,
    layer_parameters,
    layer_points,
    layers_dict,
    layers_dot,
    layers_markdown,
    lub_layer,
    max_branch_below,
    max_layer_below,
)

from .conftest import any_points, described, labelset, names, space_of
from .oracles import definition_layer_branch


@pytest.fixture
def g0(line4):
    return build(line4, 0)


@pytest.fixture
def g1(line4):
    return build(line4, 1)


GAMMA1_LAYERS = {(1, labelset(0, 1)), (2, labelset(0, 1, 3)), (4, labelset(0, 1, 3, 7))}
GAMMA0_LAYERS = {(0, labelset(0)), (0, labelset(1)), (0, labelset(3)), (0, labelset(7)),
                 (1, labelset(0, 1)), (2, labelset(0, 1, 3)), (4, labelset(0, 1, 3, 7))}


def test_gamma1_points(g1):
    assert described(g1, layer_points(g1)) == GAMMA1_LAYERS
    assert described(g1, branch_points(g1)) == {(1, labelset(0, 1))}


def test_gamma0_points(g0):
    assert described(g0, layer_points(g0)) == GAMMA0_LAYERS
    assert described(g0, branch_points(g0)) == GAMMA0_LAYERS


def _at(forest, s, point):
    return forest.node_at(s, point)


def test_max_layer_below_examples(g1):
    p = max_layer_below(g1, _at(g1, 3, 0))
    assert (p.birth, names(g1, p.segment)) == (2, labelset(0, 1, 3))
    p = max_layer_below(g1, _at(g1, 6, 0))
    assert (p.birth, names(g1, p.segment)) == (4, labelset(0, 1, 3, 7))


def test_max_branch_below_examples(g0, g1):
    p = max_branch_below(g1, _at(g1, 3, 0))
    assert (p.birth, names(g1, p.segment)) == (1, labelset(0, 1))
    p = max_branch_below(g0, _at(g0, 3, 0))
    assert (p.birth, names(g0, p.segment)) == (2, labelset(0, 1, 3))


def test_lub_layer_examples(g0, g1):
    pts0 = {(p.birth, names(g0, p.segment)): p for p in layer_points(g0)}
    j = lub_layer(g0, pts0[(0, labelset(0))], pts0[(0, labelset(3))])
    assert (j.birth, names(g0, j.segment)) == (2, labelset(0, 1, 3))
    pts1 = {(p.birth, names(g1, p.segment)): p for p in layer_points(g1)}
    j = lub_layer(g1, pts1[(1, labelset(0, 1))], pts1[(2, labelset(0, 1, 3))])
    assert (j.birth, names(g1, j.segment)) == (2, labelset(0, 1, 3))


def test_layer_parameters(g0, g1):
    params = layer_parameters(g1)
    assert params.values == (1, 2, 4)
    assert params.successor(1) == 2 and params.predecessor(2) == 1
    assert params.successor(4) == math.inf and params.predecessor(1) == -math.inf
    assert params.any_in(1, 2) and not params.any_in(2, 3.9)
    assert layer_parameters(g0).values == (0, 1, 2, 4)
    assert LayerParameters(()).successor(0) == math.inf


def test_exports(g1):
    d = layers_dict(g1)
    assert d["layer_parameters"] == [1, 2, 4] and d["branch_parameters"] == [1]
    assert [s["branch"] for s in d["segments"]] == [True, False, False]
    json.dumps(d)
    assert "doublecircle" in layers_dot(g1)
    md = layers_markdown(g1)
    assert "| 1 | {0, 1} | yes |" in md


def test_invariants_on_examples(g0, g1):
    for forest in (g0, g1):
        results = check_invariants(forest)
        assert [r.id for r in results] == ["Lemma2", "Lemma3", "Lemma4", "Lemma6", "Remark7", "Lemma12"]
        assert all(r.passed for r in results)


@given(any_points, st.integers(0, 3))
def test_points_match_definitions(points, k):
    sp = space_of(points)
    forest = build(sp, k)
    layer, branch = definition_layer_branch(sp.dist, k)
    assert {(p.birth, forest[p.segment].members) for p in layer_points(forest)} == layer
    assert {(p.birth, forest[p.segment].members) for p in branch_points(forest)} == branch
    assert branch <= layer
    if k == 0:
        assert branch == layer


@given(any_points, st.integers(0, 3))
def test_invariant_suite_clean(points, k):
    for res in check_invariants(build(space_of(points), k)):
        assert res.passed, (res.id, res.witnesses)


@given(any_points, st.integers(0, 2))
def test_layer_points_closed_under_lub(points, k):
    forest = build(space_of(points), k)
    pts = layer_points(forest)
    params = set(layer_parameters(forest))
    for a, b in itertools.combinations(pts, 2):
        j = lub_layer(forest, a, b)
        assert j.birth in params


@given(any_points, st.integers(0, 2), st.floats(0, 1))
def test_retractions(points, k, frac):
    forest = build(space_of(points), k)
    for seg in forest.segments:
        end = seg.death if not seg.terminal else seg.birth + 1
        s = seg.birth + frac * (end - seg.birth)
        if s >= end:
            continue
        v = NodeRef(s, seg.id, forest)
        ly = max_layer_below(forest, v)
        br = max_branch_below(forest, v)
        assert forest.leq(br.node(forest), ly.node(forest))
        assert forest.leq(ly.node(forest), v)
        assert max_layer_below(forest, ly.node(forest)) == ly
        assert br.branch
        # brute force: the largest layer point below v
        below = [p for p in layer_points(forest) if forest.leq(p.node(forest), v)]
        assert max(below, key=lambda p: (p.birth, len(forest[p.segment].members))) == ly
