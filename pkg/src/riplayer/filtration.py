"""Degree-Rips combinatorics at fixed scale and density."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .metric import MetricSpace


class UnionFind:
    """Disjoint sets over 0..n-1 with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra


@dataclass(frozen=True)
class ParameterGrid:
    values: tuple[float, ...]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def snap_index(self, s: float) -> int:
        """Index of the largest grid value <= s, or -1 below the first value."""
        return int(np.searchsorted(self.values, s, side="right")) - 1


@dataclass(frozen=True)
class ComponentPartition:
    s: float
    k: int
    blocks: tuple[frozenset[int], ...]  # sorted by canonical (minimum) member

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def block_of(self, point: int) -> frozenset[int] | None:
        for b in self.blocks:
            if point in b:
                return b
        return None


def degrees(space: MetricSpace, s: float) -> np.ndarray:
    """Number of distinct neighbours y != x with d(x, y) <= s."""
    return np.count_nonzero(space.dist <= s, axis=1) - 1


def vertex_set(space: MetricSpace, s: float, k: int) -> frozenset[int]:
    if space.n == 0:
        return frozenset()
    return frozenset(int(i) for i in np.flatnonzero(degrees(space, s) >= k))


def components(space: MetricSpace, s: float, k: int) -> ComponentPartition:
    verts = sorted(vertex_set(space, s, k))
    uf = UnionFind(space.n)
    for a, i in enumerate(verts):
        row = space.dist[i]
        for j in verts[a + 1:]:
            if row[j] <= s:
                uf.union(i, j)
    groups: dict[int, set[int]] = {}
    for v in verts:
        groups.setdefault(uf.find(v), set()).add(v)
    blocks = sorted((frozenset(g) for g in groups.values()), key=min)
    return ComponentPartition(s, k, tuple(blocks))


def parameter_grid(space: MetricSpace) -> ParameterGrid:
    values = np.unique(np.concatenate([[0.0], space.distances()]))
    return ParameterGrid(tuple(float(v) for v in values))


class IncrementalComponents:
    """Union-find sweep over the grid; each event is processed once.

    ``advance()`` moves to the next grid value and returns the roots of the
    components that may have changed there.
    """

    def __init__(self, space: MetricSpace, k: int, grid: ParameterGrid | None = None):
        self.space = space
        self.k = k
        self.grid = grid if grid is not None else parameter_grid(space)
        n = space.n
        iu, ju = np.triu_indices(n, k=1)
        d = space.dist[iu, ju]
        order = np.argsort(d, kind="stable")
        self._ei, self._ej, self._ed = iu[order], ju[order], d[order]
        self._bounds = np.searchsorted(self._ed, np.asarray(self.grid.values), side="right")
        self.uf = UnionFind(n)
        self.members: dict[int, list[int]] = {}
        self.active = np.zeros(n, dtype=bool)
        self.degree = np.zeros(n, dtype=np.int64)
        self.index = -1

    @property
    def value(self) -> float:
        return self.grid[self.index]

    def _union(self, a: int, b: int, touched: set[int]) -> None:
        ra, rb = self.uf.find(a), self.uf.find(b)
        if ra == rb:
            return
        root = self.uf.union(ra, rb)
        other = rb if root == ra else ra
        self.members[root].extend(self.members.pop(other))
        touched.add(root)

    def advance(self) -> list[int]:
        self.index += 1
        i = self.index
        t = self.grid[i]
        lo = self._bounds[i - 1] if i > 0 else 0
        hi = self._bounds[i]
        ei, ej = self._ei[lo:hi], self._ej[lo:hi]
        np.add.at(self.degree, ei, 1)
        np.add.at(self.degree, ej, 1)
        fresh = np.flatnonzero(~self.active & (self.degree >= self.k))
        touched: set[int] = set()
        for v in fresh.tolist():
            self.active[v] = True
            self.members[v] = [v]
            touched.add(v)
        for v in fresh.tolist():
            for w in np.flatnonzero(self.active & (self.space.dist[v] <= t)).tolist():
                if w != v:
                    self._union(v, w, touched)
        for a, b in zip(ei.tolist(), ej.tolist()):
            if self.active[a] and self.active[b]:
                self._union(a, b, touched)
                touched.add(self.uf.find(a))
        return sorted({self.uf.find(r) for r in touched})

    def labels(self) -> np.ndarray:
        """Canonical block label (minimum member) per point, -1 for non-vertices."""
        out = np.full(self.space.n, -1, dtype=np.int64)
        for root, mem in self.members.items():
            out[mem] = min(mem)
        return out

    def partition(self) -> ComponentPartition:
        blocks = sorted((frozenset(m) for m in self.members.values()), key=min)
        return ComponentPartition(self.value, self.k, tuple(blocks))


def sweep(space: MetricSpace, k: int, grid: ParameterGrid | None = None) -> Iterator[tuple[float, np.ndarray]]:
    """Yield ``(grid value, labels)`` for every grid value, in increasing order."""
    inc = IncrementalComponents(space, k, grid)
    for _ in range(len(inc.grid)):
        inc.advance()
        yield inc.value, inc.labels()
