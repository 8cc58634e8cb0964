"""Finite metric spaces, isometric inclusions and configuration-space Hausdorff distance."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DuplicatePoint,
    EmptyConfigSpace,
    LengthMismatch,
    NegativeDistance,
    NotAnInclusion,
    TriangleViolation,
    ZeroOffDiagonal,
)

METRICS = ("euclidean", "manhattan", "chebyshev")
DEFAULT_TUPLE_BUDGET = 2_000_000
CONFIG_METRIC = "ordered (k+1)-tuples of distinct points, max (l-infinity) product metric"

# relative slack for the triangle check on user-supplied tables
_TRIANGLE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class MetricSpace:
    labels: tuple[str, ...]
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64, copy=True).reshape(len(self.labels), len(self.labels))
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, MetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.labels, self.dist.tobytes()))

    def distances(self) -> np.ndarray:
        """Off-diagonal distances (upper triangle), in row-major order."""
        iu = np.triu_indices(self.n, k=1)
        return self.dist[iu]

    def restrict(self, indices: Sequence[int], labels: Sequence[str] | None = None) -> MetricSpace:
        idx = np.asarray(indices, dtype=np.intp)
        if labels is None:
            labels = [self.labels[i] for i in idx]
        return MetricSpace(tuple(labels), self.dist[np.ix_(idx, idx)])


def pairwise(points: np.ndarray, metric: str = "euclidean") -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    if metric == "euclidean":
        return np.sqrt(np.sum(diff * diff, axis=-1))
    if metric == "manhattan":
        return np.sum(np.abs(diff), axis=-1)
    if metric == "chebyshev":
        if points.shape[1] == 0:
            return np.zeros((len(points), len(points)))
        return np.max(np.abs(diff), axis=-1)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def from_points(points, metric: str = "euclidean", dedup: bool = False,
                labels: Sequence[str] | None = None) -> MetricSpace:
    rows = [np.atleast_1d(np.asarray(p, dtype=np.float64)) for p in points]
    if labels is not None and len(labels) != len(rows):
        raise DimensionMismatch(f"{len(labels)} labels for {len(rows)} points")
    if rows:
        dims = {r.shape for r in rows}
        if len(dims) != 1:
            raise DimensionMismatch(f"points have differing shapes {sorted(dims)}")
        arr = np.vstack(rows)
    else:
        arr = np.zeros((0, 0))
    if labels is None:
        labels = [str(i) for i in range(len(rows))]
    labels = list(labels)

    seen: dict[bytes, int] = {}
    keep = []
    for i, row in enumerate(arr):
        key = (row + 0.0).tobytes()  # folds -0.0 into 0.0
        if key in seen:
            if not dedup:
                raise DuplicatePoint(f"points {seen[key]} and {i} coincide")
            continue
        seen[key] = i
        keep.append(i)
    arr = arr[keep]
    labels = [labels[i] for i in keep]
    return MetricSpace(tuple(labels), pairwise(arr, metric))


def from_matrix(table, labels: Sequence[str] | None = None) -> MetricSpace:
    """Build a space from a lower-triangular table.

    ``table`` is either the strictly-lower rows ``[[d10], [d20, d21], ...]``
    (n-1 rows), the same with a leading empty row (n rows), or a square array.
    """
    if isinstance(table, np.ndarray) and table.ndim == 2 and table.shape[0] == table.shape[1]:
        d = np.array(table, dtype=np.float64)
        n = d.shape[0]
        if not np.array_equal(d, d.T):
            raise DimensionMismatch("square distance table is not symmetric")
    else:
        rows = [list(r) for r in table]
        if rows and len(rows[0]) == 0:
            n = len(rows)
            rows = rows[1:]
        else:
            n = len(rows) + 1 if rows else 0
        d = np.zeros((n, n))
        for i, row in enumerate(rows, start=1):
            if len(row) != i:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {i}")
            d[i, :i] = row
        d = d + d.T
    if n and np.any(np.diag(d) != 0):
        raise DimensionMismatch("non-zero diagonal")
    off = ~np.eye(n, dtype=bool)
    if np.any(~np.isfinite(d)):
        raise NegativeDistance("non-finite distance")
    if np.any(d < 0):
        i, j = np.argwhere(d < 0)[0]
        raise NegativeDistance(f"negative distance between {i} and {j}")
    if np.any((d == 0) & off):
        i, j = np.argwhere((d == 0) & off)[0]
        raise ZeroOffDiagonal(f"points {min(i, j)} and {max(i, j)} at distance 0")
    check_triangle(d)
    if labels is None:
        labels = [str(i) for i in range(n)]
    return MetricSpace(tuple(labels), d)


def check_triangle(d: np.ndarray) -> None:
    """Raise TriangleViolation on the first (i, j, k) with d(i,k) > d(i,j) + d(j,k)."""
    n = d.shape[0]
    for j in range(n):
        via = d[:, j:j + 1] + d[j:j + 1, :]
        bad = d > via * (1.0 + _TRIANGLE_RTOL)
        if bad.any():
            i, k = min((int(a), int(b)) for a, b in np.argwhere(bad))
            raise TriangleViolation(
                (i, j, k), f"triangle inequality violated on triple ({i}, {j}, {k}): "
                f"{float(d[i, k])!r} > {float(d[i, j])!r} + {float(d[j, k])!r}")


def snap(space: MetricSpace, eps: float) -> MetricSpace:
    """Merge distance values that chain together with gaps below ``eps``.

    Every value in a chain is replaced by the chain's largest member.  Rounding
    up can break the triangle inequality, so the result is re-validated.
    """
    if eps <= 0 or space.n < 2:
        return space
    values = np.unique(space.distances())
    rep = values.copy()
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] >= eps:
            rep[start:i] = values[i - 1]
            start = i
    d = space.dist.copy()
    off = ~np.eye(space.n, dtype=bool)
    d[off] = rep[np.searchsorted(values, d[off])]
    check_triangle(d)
    return MetricSpace(space.labels, d)


@dataclass(frozen=True, eq=False)
class Inclusion:
    """Isometric embedding of ``sub`` (X) into ``sup`` (Y)."""

    sub: MetricSpace
    sup: MetricSpace
    embed: tuple[int, ...]

    def __post_init__(self):
        embed = tuple(int(i) for i in self.embed)
        object.__setattr__(self, "embed", embed)
        if len(embed) != self.sub.n:
            raise NotAnInclusion(f"embedding has {len(embed)} entries for {self.sub.n} points")
        if len(set(embed)) != len(embed):
            raise NotAnInclusion("embedding is not injective")
        if any(i < 0 or i >= self.sup.n for i in embed):
            raise NotAnInclusion("embedding index out of range")
        img = self.sup.dist[np.ix_(embed, embed)]
        if not np.allclose(img, self.sub.dist, rtol=1e-9, atol=1e-12):
            raise NotAnInclusion("embedding is not isometric")

    @classmethod
    def identity(cls, space: MetricSpace) -> Inclusion:
        return cls(space, space, tuple(range(space.n)))

    @classmethod
    def from_points(cls, x_points, y_points, metric: str = "euclidean",
                    x_labels=None, y_labels=None) -> Inclusion:
        """Match X into Y by exact coordinate equality; X inherits Y's distances."""
        sup = from_points(y_points, metric, labels=y_labels)
        index = {}
        for i, p in enumerate(y_points):
            index[(np.atleast_1d(np.asarray(p, dtype=np.float64)) + 0.0).tobytes()] = i
        embed = []
        for j, p in enumerate(x_points):
            key = (np.atleast_1d(np.asarray(p, dtype=np.float64)) + 0.0).tobytes()
            if key not in index:
                raise NotAnInclusion(f"X point {j} ({np.atleast_1d(p).tolist()}) is not a point of Y")
            embed.append(index[key])
        if x_labels is None:
            x_labels = [str(i) for i in range(len(embed))]
        return cls(sup.restrict(embed, x_labels), sup, tuple(embed))

    def cross(self) -> np.ndarray:
        """Distances from every Y point (rows) to every X point (columns), in Y's metric."""
        return self.sup.dist[:, list(self.embed)]


def config_distance(a: Sequence[int], b: Sequence[int], space: MetricSpace) -> float:
    if len(a) != len(b):
        raise LengthMismatch(f"tuples of length {len(a)} and {len(b)}")
    if not a:
        return 0.0
    return float(max(space.dist[i, j] for i, j in zip(a, b)))


def hausdorff_config(pair: Inclusion, k: int, budget: int = DEFAULT_TUPLE_BUDGET) -> float:
    """Hausdorff distance between the (k+1)-configuration spaces of X and Y.

    X is a subset of Y, so only the Y -> X direction contributes.  A Y-tuple
    is matched to X-tuples by a bottleneck assignment; by Hall's theorem the
    worst case over Y-tuples equals the maximum, over sets S of at most k+1
    points of Y, of the |S|-th smallest value of min_{y in S} d(y, x) over
    x in X.  Sets that cannot beat the running maximum are pruned, and
    ``budget`` caps the number of candidate sets examined.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if pair.sub.n < k + 1:
        raise EmptyConfigSpace(f"X has {pair.sub.n} points, fewer than k+1 = {k + 1}")
    cross = pair.cross()
    ordered = np.sort(cross, axis=1)
    best = 0.0
    used = 0
    for size in range(1, k + 2):
        # tau(S) <= the size-th nearest X distance of each member of S
        cand = np.flatnonzero(ordered[:, size - 1] > best)
        count = math.comb(len(cand), size)
        used += count
        if used > budget:
            raise BudgetExceeded(
                f"{used} candidate configurations exceed the budget of {budget}")
        if count == 0:
            continue
        combos = itertools.combinations(cand.tolist(), size)
        while True:
            chunk = list(itertools.islice(combos, 65536))
            if not chunk:
                break
            idx = np.asarray(chunk, dtype=np.intp)
            covered = cross[idx].min(axis=1)
            vals = np.partition(covered, size - 1, axis=1)[:, size - 1]
            best = max(best, float(vals.max()))
    return best
