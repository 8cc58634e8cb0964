"""Interleaving maps between the layer posets of X and Y, and a checker for the stability claims."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAVertex, RTooSmall, ThetaNotVertex
from .filtration import components
from .hierarchy import SegmentForest, build
from .layers import (
    LayerParameters,
    LayerPoint,
    bijection_failures,
    layer_parameters,
    layer_points,
    max_layer_below,
)
from .metric import CONFIG_METRIC, DEFAULT_TUPLE_BUDGET, Inclusion, hausdorff_config
from .report import CheckResult, StabilityReport

CHECK_IDS = ("Thm8-eq6", "Thm8-eq7", "Rel-eq8", "L10", "C11", "L12",
             "L13", "L14", "C15", "L16", "L17")
THETA_RULE = "nearest point of X, ties to the smallest X index"


@dataclass(frozen=True, eq=False)
class InclusionPair:
    inclusion: Inclusion
    k: int
    r: float
    hausdorff: float
    theta: tuple[int, ...]  # Y index -> X index
    forest_x: SegmentForest
    forest_y: SegmentForest
    params_x: LayerParameters
    params_y: LayerParameters

    @property
    def shift(self) -> float:
        return 2.0 * self.r


def nearest_projection(inclusion: Inclusion) -> tuple[int, ...]:
    # argmin returns the first minimum, i.e. the smallest X index on ties
    return tuple(int(i) for i in np.argmin(inclusion.cross(), axis=1))


def default_r(hausdorff: float) -> float:
    return hausdorff * (1 + 1e-9) + 1e-12


def make_pair(inclusion: Inclusion, k: int, r: float | None = None,
              budget: int = DEFAULT_TUPLE_BUDGET) -> InclusionPair:
    dh = hausdorff_config(inclusion, k, budget)
    if r is None:
        r = default_r(dh)
    elif not r > dh:
        raise RTooSmall(f"r = {r!r} must exceed the configuration Hausdorff distance {dh!r}")
    fx = build(inclusion.sub, k)
    fy = build(inclusion.sup, k)
    return InclusionPair(inclusion, k, float(r), dh, nearest_projection(inclusion),
                         fx, fy, layer_parameters(fx), layer_parameters(fy))


def i_star(pair: InclusionPair, p: LayerPoint) -> LayerPoint:
    """Maximal layer point of Y below (p.birth, [i(x)])."""
    rep = pair.forest_x[p.segment].representative
    node = pair.forest_y.node_at(p.birth, pair.inclusion.embed[rep])
    return max_layer_below(pair.forest_y, node)


def theta_star(pair: InclusionPair, q: LayerPoint, rep: int | None = None) -> LayerPoint:
    """Maximal layer point of X below (q.birth + 2r, [theta(y)])."""
    if rep is None:
        rep = pair.forest_y[q.segment].representative
    x = pair.theta[rep]
    s = q.birth + pair.shift
    try:
        node = pair.forest_x.node_at(s, x)
    except NotAVertex as exc:
        raise ThetaNotVertex(f"theta({rep}) = {x} is not a vertex of X at {s}") from exc
    return max_layer_below(pair.forest_x, node)


def sigma_star(forest: SegmentForest, r: float, p: LayerPoint) -> LayerPoint:
    """Maximal layer point below (p.birth + 2r, [x])."""
    node = forest.node_at(p.birth + 2.0 * r, forest[p.segment].representative)
    return max_layer_below(forest, node)


# -- checker ------------------------------------------------------------

def _desc(forest: SegmentForest, p: LayerPoint) -> dict:
    members = sorted(forest[p.segment].members)
    return {"birth": p.birth, "members": members,
            "labels": [forest.space.labels[m] for m in members]}


class _Checker:
    def __init__(self, pair: InclusionPair, strict_l16: bool):
        self.pair = pair
        self.strict = strict_l16
        self.fx, self.fy = pair.forest_x, pair.forest_y
        self.lx, self.ly = layer_points(self.fx), layer_points(self.fy)
        self.shift = pair.shift
        diam = float(pair.inclusion.sup.dist.max()) if pair.inclusion.sup.n else 0.0
        self.tol = 1e-12 * max(1.0, diam)
        self._theta_cache: dict[int, LayerPoint | str] = {}

    def theta_of(self, q: LayerPoint):
        """theta_star(q), or the string 'theta-not-vertex'."""
        if q.segment not in self._theta_cache:
            try:
                self._theta_cache[q.segment] = theta_star(self.pair, q)
            except ThetaNotVertex:
                self._theta_cache[q.segment] = "theta-not-vertex"
        return self._theta_cache[q.segment]

    def eq6(self):
        w = []
        for p in self.lx:
            lhs = theta_star_or_none(self, i_star(self.pair, p))
            rhs = sigma_star(self.fx, self.pair.r, p)
            if lhs is None:
                w.append({"kind": "theta-not-vertex", "p": _desc(self.fx, p)})
            elif not self.fx.leq(lhs.node(self.fx), rhs.node(self.fx)):
                w.append({"p": _desc(self.fx, p), "theta_i": _desc(self.fx, lhs),
                          "sigma": _desc(self.fx, rhs)})
        return CheckResult("Thm8-eq6", len(self.lx), w)

    def eq7(self):
        w = []
        for q in self.ly:
            t = self.theta_of(q)
            if isinstance(t, str):
                w.append({"kind": t, "q": _desc(self.fy, q)})
                continue
            for y in sorted(self.fy[q.segment].members):
                try:
                    other = theta_star(self.pair, q, rep=y)
                except ThetaNotVertex:
                    other = None
                if other != t:
                    w.append({"kind": "representative", "q": _desc(self.fy, q), "rep": y})
                    break
            lhs = i_star(self.pair, t)
            rhs = sigma_star(self.fy, self.pair.r, q)
            if not self.fy.leq(lhs.node(self.fy), rhs.node(self.fy)):
                w.append({"q": _desc(self.fy, q), "i_theta": _desc(self.fy, lhs),
                          "sigma": _desc(self.fy, rhs)})
        return CheckResult("Thm8-eq7", len(self.ly), w)

    def eq8(self):
        w = []
        for space, forest, pts in (("X", self.fx, self.lx), ("Y", self.fy, self.ly)):
            for p in pts:
                sig = sigma_star(forest, self.pair.r, p)
                top = forest.node_at(p.birth + self.shift, forest[p.segment].representative)
                if not (forest.leq(p.node(forest), sig.node(forest)) and forest.leq(sig.node(forest), top)):
                    w.append({"space": space, "p": _desc(forest, p), "sigma": _desc(forest, sig)})
        return CheckResult("Rel-eq8", len(self.lx) + len(self.ly), w)

    def l10(self):
        inc = self.pair.inclusion
        th = np.asarray(self.pair.theta, dtype=np.intp)
        dy = inc.sup.dist
        dx = inc.sub.dist[np.ix_(th, th)]
        gap = np.abs(dy - dx)
        bound = 2.0 * self.pair.hausdorff + self.tol
        w = []
        iu, ju = np.triu_indices(inc.sup.n, k=1)
        bad = gap[iu, ju] > bound
        for a, b in zip(iu[bad].tolist(), ju[bad].tolist()):
            w.append({"y1": a, "y2": b, "d_y": float(dy[a, b]), "d_theta": float(dx[a, b]),
                      "bound": bound})
        return CheckResult("L10", len(iu), w)

    def c11(self):
        gx = np.asarray(self.fx.grid.values)
        w = []
        for g in self.fy.grid.values:
            if len(gx) == 0 or np.min(np.abs(gx - g)) > self.shift + self.tol:
                w.append({"y_phase_change": g})
        return CheckResult("C11", len(self.fy.grid), w)

    def l12(self):
        tx, bx = bijection_failures(self.fx, self.pair.params_x)
        ty, by = bijection_failures(self.fy, self.pair.params_y)
        w = [dict(space="X", **b) for b in bx] + [dict(space="Y", **b) for b in by]
        return CheckResult("L12", tx + ty, w)

    def _gated_x(self):
        """Layer parameters t of X with r < t < t_plus - 2r."""
        px, r = self.pair.params_x, self.pair.r
        return [t for t in px if r < t < px.successor(t) - self.shift]

    def l13(self):
        embed = self.pair.inclusion.embed
        w = []
        gated = self._gated_x()
        for t in gated:
            part_x = components(self.pair.inclusion.sub, t, self.pair.k)
            part_y = components(self.pair.inclusion.sup, t, self.pair.k)
            owner = {p: i for i, b in enumerate(part_y.blocks) for p in b}
            images = [owner.get(embed[min(b)]) for b in part_x.blocks]
            if None in images or len(set(images)) != len(images) or len(images) != len(part_y.blocks):
                w.append({"t": t, "blocks_x": len(part_x.blocks), "blocks_y": len(part_y.blocks),
                          "distinct_images": len(set(images) - {None})})
        return CheckResult("L13", len(gated), w)

    def l14_c15(self):
        gated = set(self._gated_x())
        w14, w15, tested = [], [], 0
        for p in self.lx:
            if p.birth not in gated:
                continue
            tested += 1
            img = i_star(self.pair, p)
            t = p.birth
            if not (t - self.shift <= img.birth <= t):
                w14.append({"p": _desc(self.fx, p), "i_star": _desc(self.fy, img)})
            back = theta_star_or_none(self, img)
            if back is None or back != p:
                w15.append({"p": _desc(self.fx, p), "i_star": _desc(self.fy, img),
                            "theta_i": None if back is None else _desc(self.fx, back)})
        return CheckResult("L14", tested, w14), CheckResult("C15", tested, w15)

    def _lower_bound_claim(self, q: LayerPoint, w: list) -> None:
        t = self.theta_of(q)
        if isinstance(t, str):
            w.append({"kind": t, "q": _desc(self.fy, q)})
        elif not (q.birth <= t.birth <= q.birth + self.shift):
            w.append({"q": _desc(self.fy, q), "theta_star": _desc(self.fx, t),
                      "s": q.birth, "t": t.birth})

    def l16(self):
        py, r = self.pair.params_y, self.pair.r
        w, tested = [], 0
        for q in self.ly:
            s = q.birth
            if not s < py.successor(s) - self.shift:
                continue
            if self.strict and not s > r:
                continue
            tested += 1
            self._lower_bound_claim(q, w)
        return CheckResult("L16", tested, w)

    def l17(self):
        if self.pair.k != 0:
            return CheckResult("L17", 0, [])
        w = []
        for q in self.ly:
            self._lower_bound_claim(q, w)
        px = self.pair.params_x.values
        for s in self.pair.params_y:
            if not any(t - self.shift <= s <= t for t in px):
                w.append({"kind": "containment", "y_layer_parameter": s})
        return CheckResult("L17", len(self.ly) + len(self.pair.params_y), w)

    def offsets(self):
        out = []
        for space, forest, pts in (("X", self.fx, self.lx), ("Y", self.fy, self.ly)):
            for p in pts:
                sig = sigma_star(forest, self.pair.r, p)
                out.append({
                    "space": space, "birth": p.birth, "members": sorted(forest[p.segment].members),
                    "shifted": sig.birth, "offset": sig.birth - p.birth,
                    "within": bool(p.birth <= sig.birth <= p.birth + self.shift),
                })
        return out


def theta_star_or_none(checker: _Checker, q: LayerPoint) -> LayerPoint | None:
    t = checker.theta_of(q)
    return None if isinstance(t, str) else t


def pair_header(pair: InclusionPair, strict_l16: bool = False) -> dict:
    return {
        "n_x": pair.inclusion.sub.n,
        "n_y": pair.inclusion.sup.n,
        "k": pair.k,
        "r": pair.r,
        "hausdorff": pair.hausdorff,
        "config_metric": CONFIG_METRIC,
        "theta": THETA_RULE,
        "strict_l16": strict_l16,
        "layer_parameters_x": list(pair.params_x.values),
        "layer_parameters_y": list(pair.params_y.values),
    }


def check_all(pair: InclusionPair, strict_l16: bool = False) -> StabilityReport:
    c = _Checker(pair, strict_l16)
    l14, c15 = c.l14_c15()
    checks = [c.eq6(), c.eq7(), c.eq8(), c.l10(), c.c11(), c.l12(), c.l13(), l14, c15, c.l16(), c.l17()]
    assert tuple(ch.id for ch in checks) == CHECK_IDS
    return StabilityReport(pair_header(pair, strict_l16), checks, c.offsets())


ROBUST_CHECKS = ("Thm8-eq6", "Thm8-eq7", "Rel-eq8", "L10", "C11", "L12", "L13", "L14", "C15")

