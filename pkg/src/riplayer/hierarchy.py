"""The cluster hierarchy as a forest of constant-member segments."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import BelowFirstEvent, ForestMismatch, NoCommonUpperBound, NotAVertex
from .filtration import IncrementalComponents, ParameterGrid, parameter_grid
from .metric import MetricSpace


@dataclass(frozen=True)
class Segment:
    """A maximal parameter interval [birth, death) on which a cluster keeps its members."""

    id: int
    members: frozenset[int]
    birth: float
    death: float
    antecedents: tuple[int, ...]
    successor: int | None

    @property
    def representative(self) -> int:
        return min(self.members)

    @property
    def terminal(self) -> bool:
        return self.successor is None


@dataclass(frozen=True)
class NodeRef:
    """A vertex (s, [x]) of the hierarchy: parameter ``s`` inside ``segment``."""

    s: float
    segment: int
    forest: SegmentForest | None = field(default=None, compare=False, repr=False, hash=False)


@dataclass(frozen=True, eq=False)
class SegmentForest:
    space: MetricSpace
    k: int
    grid: ParameterGrid
    segments: tuple[Segment, ...]
    _entry: dict = field(default_factory=dict, repr=False)  # point -> first segment containing it

    def __post_init__(self):
        if not self._entry:
            entry = {}
            for seg in self.segments:
                for p in seg.members:
                    entry.setdefault(p, seg.id)
            object.__setattr__(self, "_entry", entry)

    def __len__(self):
        return len(self.segments)

    def same_structure(self, other: SegmentForest) -> bool:
        return (self.k == other.k and self.grid == other.grid
                and self.segments == other.segments)

    def __getitem__(self, sid: int) -> Segment:
        return self.segments[sid]

    @property
    def terminals(self) -> list[Segment]:
        return [s for s in self.segments if s.terminal]

    def alive_at(self, t: float) -> list[Segment]:
        """Segments whose member set is a component at parameter t."""
        return [s for s in self.segments if s.birth <= t < s.death]

    def chain(self, sid: int):
        """Segment ids from ``sid`` along successors to a terminal segment."""
        while sid is not None:
            yield sid
            sid = self.segments[sid].successor

    # -- vertex lookup -------------------------------------------------

    def segment_at(self, s: float, point: int) -> int:
        if s < 0:
            raise BelowFirstEvent(f"parameter {s} is below 0")
        sid = self._entry.get(point)
        if sid is None or self.segments[sid].birth > s:
            raise NotAVertex(f"point {point} is not a vertex at parameter {s} (k={self.k})")
        segs = self.segments
        while segs[sid].successor is not None and segs[segs[sid].successor].birth <= s:
            sid = segs[sid].successor
        return sid

    def node_at(self, s: float, point: int) -> NodeRef:
        return NodeRef(float(s), self.segment_at(s, point), self)

    def node(self, s: float, sid: int) -> NodeRef:
        seg = self.segments[sid]
        if not seg.birth <= s or not (s < seg.death or seg.terminal):
            raise ValueError(f"parameter {s} outside segment {sid} [{seg.birth}, {seg.death})")
        return NodeRef(float(s), sid, self)

    def members(self, ref: NodeRef) -> frozenset[int]:
        return self.segments[ref.segment].members

    # -- order ----------------------------------------------------------

    def _check(self, *refs: NodeRef) -> None:
        for r in refs:
            if r.forest is not None and r.forest is not self:
                raise ForestMismatch("node belongs to a different forest")

    def leq(self, a: NodeRef, b: NodeRef) -> bool:
        self._check(a, b)
        return a.s <= b.s and self.segments[a.segment].members <= self.segments[b.segment].members

    def lub(self, a: NodeRef, b: NodeRef) -> NodeRef:
        """Least upper bound: walk both successor chains to their first common segment."""
        self._check(a, b)
        s0 = max(a.s, b.s)
        segs = self.segments
        sa = self._advance(a.segment, s0)
        sb = self._advance(b.segment, s0)
        while sa != sb:
            na, nb = segs[sa].successor, segs[sb].successor
            if na is None and nb is None:
                raise NoCommonUpperBound(f"segments {sa} and {sb} never merge")
            # advance whichever chain has the earlier next event
            ta = segs[na].birth if na is not None else math.inf
            tb = segs[nb].birth if nb is not None else math.inf
            if ta <= tb:
                sa = na
            if tb <= ta:
                sb = nb
        return NodeRef(max(s0, segs[sa].birth), sa, self)

    def _advance(self, sid: int, s: float) -> int:
        segs = self.segments
        while segs[sid].successor is not None and segs[segs[sid].successor].birth <= s:
            sid = segs[sid].successor
        return sid

    # -- export -----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "grid": list(self.grid.values),
            "segments": [
                {
                    "id": s.id,
                    "members": sorted(s.members),
                    "birth": s.birth,
                    "death": None if math.isinf(s.death) else s.death,
                    "antecedents": list(s.antecedents),
                    "successor": s.successor,
                    "terminal": s.terminal,
                }
                for s in self.segments
            ],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict, space: MetricSpace) -> SegmentForest:
        segments = tuple(
            Segment(
                id=int(s["id"]),
                members=frozenset(int(m) for m in s["members"]),
                birth=float(s["birth"]),
                death=math.inf if s["death"] is None else float(s["death"]),
                antecedents=tuple(int(a) for a in s["antecedents"]),
                successor=None if s["successor"] is None else int(s["successor"]),
            )
            for s in data["segments"]
        )
        return cls(space, int(data["k"]), ParameterGrid(tuple(float(g) for g in data["grid"])), segments)

    @classmethod
    def from_json(cls, text: str, space: MetricSpace) -> SegmentForest:
        return cls.from_dict(json.loads(text), space)

    def to_dot(self) -> str:
        lines = [f"digraph hierarchy_k{self.k} {{", "  rankdir=BT;"]
        for s in self.segments:
            names = ",".join(self.space.labels[m] for m in sorted(s.members))
            death = "inf" if math.isinf(s.death) else f"{s.death:g}"
            lines.append(f'  s{s.id} [label="[{s.birth:g}, {death}) | {{{names}}}"];')
        for s in self.segments:
            if s.successor is not None:
                lines.append(f"  s{s.id} -> s{s.successor};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build(space: MetricSpace, k: int, grid: ParameterGrid | None = None) -> SegmentForest:
    """Sweep the grid once, opening a segment whenever a component's member set changes."""
    if k < 0:
        raise ValueError("k must be non-negative")
    grid = grid if grid is not None else parameter_grid(space)
    inc = IncrementalComponents(space, k, grid)
    members: list[frozenset[int]] = []
    births: list[float] = []
    antecedents: list[tuple[int, ...]] = []
    successor: list[int | None] = []
    death: list[float] = []
    seg_of: dict[int, int] = {}

    for _ in range(len(grid)):
        roots = inc.advance()
        t = inc.value
        opened = []
        for root in roots:
            mem = frozenset(inc.members[root])
            prev = sorted({seg_of[p] for p in mem if p in seg_of})
            if len(prev) == 1 and len(members[prev[0]]) == len(mem):
                continue
            opened.append((min(mem), mem, tuple(prev)))
        for _, mem, prev in sorted(opened, key=lambda o: o[0]):
            sid = len(members)
            members.append(mem)
            births.append(t)
            antecedents.append(prev)
            successor.append(None)
            death.append(math.inf)
            for a in prev:
                successor[a] = sid
                death[a] = t
            for p in mem:
                seg_of[p] = sid

    segments = tuple(
        Segment(i, members[i], births[i], death[i], antecedents[i], successor[i])
        for i in range(len(members))
    )
    return SegmentForest(space, k, grid, segments)
