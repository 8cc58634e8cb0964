"""Independent brute-force oracles.  None of these call into the code they check."""
from __future__ import annotations

import itertools
from collections import deque

import numpy as np


def bfs_vertex_set(dist, s, k):
    n = len(dist)
    out = set()
    for x in range(n):
        nbrs = sum(1 for y in range(n) if y != x and dist[x][y] <= s)
        if nbrs >= k:
            out.add(x)
    return out


def bfs_blocks(dist, s, k):
    """Connected components of the threshold graph on the degree-k vertex set."""
    verts = bfs_vertex_set(dist, s, k)
    seen, blocks = set(), []
    for v in sorted(verts):
        if v in seen:
            continue
        block, queue = {v}, deque([v])
        seen.add(v)
        while queue:
            a = queue.popleft()
            for b in verts:
                if b not in seen and dist[a][b] <= s:
                    seen.add(b)
                    block.add(b)
                    queue.append(b)
        blocks.append(frozenset(block))
    return sorted(blocks, key=min)


def grid_values(dist):
    n = len(dist)
    return sorted({0.0} | {float(dist[i][j]) for i in range(n) for j in range(i + 1, n)})


def minimal_join(dist, k, a_s, a_members, b_s, b_members):
    """Smallest u >= max(a_s, b_s) where both member sets lie in one block."""
    s0 = max(a_s, b_s)
    cands = sorted({s0} | {g for g in grid_values(dist) if g >= s0})
    for u in cands:
        for block in bfs_blocks(dist, u, k):
            if a_members <= block and b_members <= block:
                return u, block
    return None


def definition_layer_branch(dist, k):
    """(t, members) layer and branch points from the definitions, grid value by grid value."""
    layer, branch = set(), set()
    prev = None
    for t in grid_values(dist):
        blocks = bfs_blocks(dist, t, k)
        for b in blocks:
            ante = [p for p in (prev or []) if p & b]
            if all(len(p) < len(b) for p in ante):
                layer.add((t, b))
            if len(ante) != 1:
                branch.add((t, b))
        prev = blocks
    return layer, branch


def config_tuples(points, k):
    return list(itertools.permutations(points, k + 1))


def hausdorff_double_loop(dist_y, x_in_y, k):
    """Directed Hausdorff from Y^k_dis to X^k_dis by enumerating ordered tuples."""
    dist_y = np.asarray(dist_y)
    ys = config_tuples(range(len(dist_y)), k)
    xs = np.array(config_tuples(list(x_in_y), k), dtype=int)
    worst = 0.0
    for u in ys:
        cols = [dist_y[u[i], xs[:, i]] for i in range(k + 1)]
        best = np.min(np.max(np.vstack(cols), axis=0))
        worst = max(worst, float(best))
    return worst


def classical_directed_hausdorff(dist_y, x_in_y):
    worst = 0.0
    for y in range(len(dist_y)):
        worst = max(worst, min(float(dist_y[y][x]) for x in x_in_y))
    return worst
