"""Point-cloud CSV, distance-matrix and index-map readers."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .metric import MetricSpace, from_matrix


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_points(path) -> tuple[np.ndarray, list[str] | None]:
    """Read one point per line; an optional header ``label,x0,x1,...`` enables labels."""
    with open(path, newline="") as fh:
        rows = [[c.strip() for c in row] for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise ValidationError(f"{path}: no points")
    labelled = False
    if not all(_is_number(c) for c in rows[0]):
        labelled = rows[0][0].lower() == "label"
        rows = rows[1:]
        if not rows:
            raise ValidationError(f"{path}: header but no points")
    labels = None
    if labelled:
        labels = [r[0] for r in rows]
        rows = [r[1:] for r in rows]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DimensionMismatch(f"{path}: rows have differing numbers of coordinates {sorted(widths)}")
    try:
        pts = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return pts, labels


def read_matrix(path, labels=None) -> MetricSpace:
    """First token n, then the lower triangle (with or without the zero diagonal)."""
    tokens = Path(path).read_text().split()
    if not tokens:
        raise ValidationError(f"{path}: empty distance-matrix file")
    try:
        n = int(tokens[0])
        vals = [float(t) for t in tokens[1:]]
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    strict, full = n * (n - 1) // 2, n * (n + 1) // 2
    d = np.zeros((n, n))
    it = iter(vals)
    if len(vals) == strict:
        for i in range(n):
            for j in range(i):
                d[i, j] = next(it)
    elif len(vals) == full:
        for i in range(n):
            for j in range(i + 1):
                d[i, j] = next(it)
        if np.any(np.diag(d) != 0):
            raise ValidationError(f"{path}: non-zero diagonal")
    else:
        raise DimensionMismatch(f"{path}: {len(vals)} values do not form a lower triangle for n={n}")
    return from_matrix(d + d.T, labels=labels)


def read_index_map(path, n_x: int) -> tuple[int, ...]:
    """Either one Y index per line (in X order) or ``x y`` pairs."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        if all(len(ln) == 1 for ln in lines):
            embed = [int(ln[0]) for ln in lines]
        elif all(len(ln) == 2 for ln in lines):
            pairs = {int(a): int(b) for a, b in lines}
            embed = [pairs[i] for i in range(n_x)]
        else:
            raise ValidationError(f"{path}: mixed index-map line formats")
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"{path}: bad index map ({exc})") from exc
    if len(embed) != n_x:
        raise ValidationError(f"{path}: {len(embed)} entries for {n_x} X points")
    return tuple(embed)
