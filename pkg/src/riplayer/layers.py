"""Layer points, branch points and the max retractions onto them."""
from __future__ import annotations

import bisect
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .filtration import sweep
from .hierarchy import NodeRef, SegmentForest
from .report import CheckResult


@dataclass(frozen=True)
class LayerPoint:
    """The birth (birth, [x]) of a segment.  Branch points carry ``branch=True``."""

    birth: float
    segment: int
    cardinality: int
    branch: bool

    def node(self, forest: SegmentForest) -> NodeRef:
        return NodeRef(self.birth, self.segment, forest)


BranchPoint = LayerPoint


def _point(forest: SegmentForest, sid: int) -> LayerPoint:
    seg = forest[sid]
    return LayerPoint(seg.birth, sid, len(seg.members), len(seg.antecedents) != 1)


def layer_points(forest: SegmentForest) -> list[LayerPoint]:
    return [_point(forest, s.id) for s in forest.segments]


def branch_points(forest: SegmentForest) -> list[LayerPoint]:
    return [p for p in layer_points(forest) if p.branch]


def max_layer_below(forest: SegmentForest, v: NodeRef) -> LayerPoint:
    return _point(forest, v.segment)


def max_branch_below(forest: SegmentForest, v: NodeRef) -> LayerPoint:
    sid = v.segment
    while len(forest[sid].antecedents) == 1:
        sid = forest[sid].antecedents[0]
    return _point(forest, sid)


class LemmaViolation(AssertionError):
    pass


def lub_layer(forest: SegmentForest, a: LayerPoint, b: LayerPoint) -> LayerPoint:
    """Join of two layer points; raises LemmaViolation if it is not itself a layer point."""
    j = forest.lub(a.node(forest), b.node(forest))
    if j.s != forest[j.segment].birth:
        raise LemmaViolation(f"join at {j.s} of segment {j.segment} is not a segment birth")
    return _point(forest, j.segment)


@dataclass(frozen=True)
class LayerParameters:
    values: tuple[float, ...]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def successor(self, t: float) -> float:
        """Smallest layer parameter strictly above t (+inf if none)."""
        i = bisect.bisect_right(self.values, t)
        return self.values[i] if i < len(self.values) else math.inf

    def predecessor(self, t: float) -> float:
        """Largest layer parameter strictly below t (-inf if none)."""
        i = bisect.bisect_left(self.values, t)
        return self.values[i - 1] if i > 0 else -math.inf

    def any_in(self, lo: float, hi: float) -> bool:
        """Is there a layer parameter u with lo < u <= hi?"""
        i = bisect.bisect_right(self.values, lo)
        return i < len(self.values) and self.values[i] <= hi


def layer_parameters(forest: SegmentForest) -> LayerParameters:
    return LayerParameters(tuple(sorted({s.birth for s in forest.segments})))


# -- export -------------------------------------------------------------

def _members(forest, sid):
    return sorted(forest[sid].members)


def layers_dict(forest: SegmentForest) -> dict:
    data = forest.to_dict()
    pts = {p.segment: p for p in layer_points(forest)}
    for s in data["segments"]:
        s["layer"] = s["id"] in pts
        s["branch"] = s["layer"] and pts[s["id"]].branch
    data["layer_parameters"] = list(layer_parameters(forest).values)
    data["branch_parameters"] = sorted({p.birth for p in branch_points(forest)})
    return data


def layers_json(forest: SegmentForest, indent: int | None = 2) -> str:
    return json.dumps(layers_dict(forest), indent=indent)


def layers_dot(forest: SegmentForest) -> str:
    labels = forest.space.labels
    lines = [f"digraph layers_k{forest.k} {{", "  rankdir=BT;"]
    for p in layer_points(forest):
        names = ",".join(labels[m] for m in _members(forest, p.segment))
        shape = "doublecircle" if p.branch else "circle"
        lines.append(f'  L{p.segment} [shape={shape}, label="{p.birth:g} | {{{names}}}"];')
    for s in forest.segments:
        if s.successor is not None:
            lines.append(f"  L{s.id} -> L{s.successor};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def layers_markdown(forest: SegmentForest) -> str:
    labels = forest.space.labels
    out = [f"# Layer points (k={forest.k})", "", "| birth | members | branch |", "|---|---|---|"]
    for p in layer_points(forest):
        names = ", ".join(labels[m] for m in _members(forest, p.segment))
        out.append(f"| {p.birth:g} | {{{names}}} | {'yes' if p.branch else 'no'} |")
    out += ["", "Layer parameters: " + ", ".join(f"{t:g}" for t in layer_parameters(forest)),
            "Branch parameters: " + ", ".join(f"{p.birth:g}" for p in branch_points(forest))]
    return "\n".join(out) + "\n"


# -- invariant suite ----------------------------------------------------

def _sample_nodes(forest: SegmentForest) -> list[NodeRef]:
    """Nodes at each segment birth, midway, and at the last grid value before death."""
    grid = forest.grid.values
    nodes = []
    for seg in forest.segments:
        lo = bisect.bisect_left(grid, seg.birth)
        hi = bisect.bisect_left(grid, seg.death) - 1 if not seg.terminal else len(grid) - 1
        for gi in sorted({lo, (lo + hi) // 2, hi}):
            nodes.append(NodeRef(grid[gi], seg.id, forest))
        if seg.terminal:
            nodes.append(NodeRef(grid[-1] + 1.0, seg.id, forest))
    return nodes


def definition_points(forest: SegmentForest) -> tuple[set, set]:
    """Layer and branch points found by applying the definitions at every grid value.

    Works from a fresh component sweep, not from the segment records.  Returns
    sets of ``(parameter, members)``.
    """
    layer, branch = set(), set()
    prev = None
    for t, lab in sweep(forest.space, forest.k, forest.grid):
        for root in np.unique(lab[lab >= 0]).tolist():
            block = np.flatnonzero(lab == root)
            if prev is None:
                below = np.array([], dtype=np.int64)
            else:
                below = prev[block]
                below = below[below >= 0]
            ante = np.unique(below)
            sizes = [int(np.count_nonzero(prev == a)) for a in ante.tolist()]
            key = (t, frozenset(block.tolist()))
            if all(sz < len(block) for sz in sizes):
                layer.add(key)
            if len(ante) != 1:
                branch.add(key)
        prev = lab
    return layer, branch


def bijection_failures(forest: SegmentForest, params: LayerParameters | None = None) -> tuple[int, list]:
    """Block maps between grid values with no layer parameter in between."""
    params = params if params is not None else layer_parameters(forest)
    tested, bad = 0, []
    prev_t, prev = None, None
    for t, lab in sweep(forest.space, forest.k, forest.grid):
        if prev is not None and not params.any_in(prev_t, t):
            tested += 1
            src = prev >= 0
            pairs = set(zip(prev[src].tolist(), lab[src].tolist()))
            n_src = len(np.unique(prev[src]))
            n_dst = len(np.unique(lab[lab >= 0]))
            images = {b for _, b in pairs}
            if not (len(pairs) == n_src == len(images) == n_dst):
                bad.append({"s": prev_t, "t": t, "blocks_s": n_src, "blocks_t": n_dst,
                            "images": len(images)})
        prev_t, prev = t, lab
    return tested, bad


def _desc(forest, p):
    if isinstance(p, LayerPoint):
        return {"birth": p.birth, "members": _members(forest, p.segment)}
    return {"s": p.s, "members": _members(forest, p.segment)}


def check_invariants(forest: SegmentForest) -> list[CheckResult]:
    """Structural claims about layer and branch points, as a list of check results."""
    results = []
    lps = layer_points(forest)
    bps = branch_points(forest)
    by_def_layer, by_def_branch = definition_points(forest)
    listed_layer = {(p.birth, forest[p.segment].members) for p in lps}
    listed_branch = {(p.birth, forest[p.segment].members) for p in bps}

    w = []
    for key in sorted(by_def_branch - by_def_layer, key=repr):
        w.append({"kind": "branch-not-layer", "s": key[0], "members": sorted(key[1])})
    for key in sorted(listed_layer ^ by_def_layer, key=repr):
        w.append({"kind": "layer-definition-mismatch", "s": key[0], "members": sorted(key[1])})
    for key in sorted(listed_branch ^ by_def_branch, key=repr):
        w.append({"kind": "branch-definition-mismatch", "s": key[0], "members": sorted(key[1])})
    results.append(CheckResult("Lemma2", len(by_def_branch) + len(lps), w))

    if forest.k == 0:
        w = [{"s": key[0], "members": sorted(key[1])}
             for key in sorted(by_def_layer ^ by_def_branch, key=repr)]
        results.append(CheckResult("Lemma3", len(by_def_layer), w))
    else:
        results.append(CheckResult("Lemma3", 0, []))

    w, tested = [], 0
    for a, b in itertools.combinations_with_replacement(lps, 2):
        tested += 1
        j = forest.lub(a.node(forest), b.node(forest))
        if j.s != forest[j.segment].birth:
            w.append({"a": _desc(forest, a), "b": _desc(forest, b), "join": _desc(forest, j)})
    results.append(CheckResult("Lemma4", tested, w))

    w, tested = [], 0
    for p in lps:
        tested += 1
        if max_layer_below(forest, p.node(forest)) != p:
            w.append({"kind": "max-incl", "point": _desc(forest, p)})
    nodes = _sample_nodes(forest)
    for v in nodes:
        tested += 1
        m = max_layer_below(forest, v)
        if not forest.leq(m.node(forest), v) or forest[m.segment].members != forest[v.segment].members:
            w.append({"kind": "incl-max", "node": _desc(forest, v)})
    grid = forest.grid.values
    for v in nodes:
        # covering steps v <= v' generate the order
        gi = bisect.bisect_right(grid, v.s)
        if gi >= len(grid):
            continue
        rep = forest[v.segment].representative
        u = forest.node_at(grid[gi], rep)
        tested += 1
        if not forest.leq(v, u):
            w.append({"kind": "order", "node": _desc(forest, v), "next": _desc(forest, u)})
        elif not forest.leq(max_layer_below(forest, v).node(forest), max_layer_below(forest, u).node(forest)):
            w.append({"kind": "monotone", "node": _desc(forest, v), "next": _desc(forest, u)})
    results.append(CheckResult("Lemma6", tested, w))

    w = []
    for v in nodes:
        br = max_branch_below(forest, v).node(forest)
        ly = max_layer_below(forest, v).node(forest)
        if not (forest.leq(br, ly) and forest.leq(ly, v)):
            w.append({"node": _desc(forest, v), "branch": _desc(forest, br), "layer": _desc(forest, ly)})
    results.append(CheckResult("Remark7", len(nodes), w))

    tested, bad = bijection_failures(forest)
    results.append(CheckResult("Lemma12", tested, bad))
    return results
