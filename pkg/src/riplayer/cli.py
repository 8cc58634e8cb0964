"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 violations found.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .corpus import run_corpus
from .errors import BudgetExceeded, EmptyConfigSpace, RTooSmall, ValidationError
from .hierarchy import build
from .layers import layers_dot, layers_json, layers_markdown
from .loaders import read_index_map, read_matrix, read_points
from .metric import DEFAULT_TUPLE_BUDGET, METRICS, Inclusion, from_points, snap
from .stability import check_all, make_pair

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    points: str | None = None
    dist_matrix: str | None = None
    points_y: str | None = None
    dist_matrix_y: str | None = None
    index_map: str | None = None
    k: int = 0
    r: float | None = None
    metric: str = "euclidean"
    format: str = "json"
    snap_eps: float = 0.0
    seed: int = 0
    trials: int = 100
    tuple_budget: int = DEFAULT_TUPLE_BUDGET
    strict_l16: bool = False
    out: str | None = None

    def validate(self) -> None:
        if self.k < 0:
            raise UsageError("--k must be non-negative")
        if self.r is not None and not self.r > 0:
            raise UsageError("--r must be positive")
        if self.snap_eps < 0:
            raise UsageError("--snap-eps must be non-negative")
        if self.trials < 0:
            raise UsageError("--trials must be non-negative")
        if self.tuple_budget < 1:
            raise UsageError("--tuple-budget must be positive")
        if self.command in ("build", "layers", "stability"):
            if (self.points is None) == (self.dist_matrix is None):
                raise UsageError("give exactly one of --points / --dist-matrix")
        if self.command == "stability":
            if (self.points_y is None) == (self.dist_matrix_y is None):
                raise UsageError("give exactly one of --points-y / --dist-matrix-y")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riplayer", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats):
        sp.add_argument("--points")
        sp.add_argument("--dist-matrix")
        sp.add_argument("--k", type=int, default=0)
        sp.add_argument("--metric", choices=METRICS, default="euclidean")
        sp.add_argument("--format", choices=formats, default="json")
        sp.add_argument("--snap-eps", type=float, default=0.0)
        sp.add_argument("--out", help="write the artifact here instead of stdout")

    common(sub.add_parser("build", help="build the hierarchy"), ("json", "dot", "md"))
    common(sub.add_parser("layers", help="layer and branch points"), ("json", "dot", "md"))
    st = sub.add_parser("stability", help="check the stability claims for X in Y")
    common(st, ("json", "md"))
    st.add_argument("--points-y")
    st.add_argument("--dist-matrix-y")
    st.add_argument("--index-map", help="Y index per X point (or 'x y' pairs)")
    st.add_argument("--r", type=float)
    st.add_argument("--tuple-budget", type=int, default=DEFAULT_TUPLE_BUDGET)
    st.add_argument("--strict-l16", action="store_true", help="add the s > r hypothesis to L16")
    gen = sub.add_parser("generate", help="seeded random corpus run")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--trials", type=int, default=100)
    gen.add_argument("--tuple-budget", type=int, default=DEFAULT_TUPLE_BUDGET)
    gen.add_argument("--strict-l16", action="store_true")
    gen.add_argument("--format", choices=("json", "md"), default="json")
    gen.add_argument("--out")
    return p


def _load_space(points, matrix, metric, eps):
    if points is not None:
        pts, labels = read_points(points)
        space = from_points(pts, metric, labels=labels)
    else:
        space = read_matrix(matrix)
    return snap(space, eps)


def _load_inclusion(cfg: RunConfig) -> Inclusion:
    if cfg.points is not None and cfg.points_y is not None and cfg.index_map is None:
        xp, xl = read_points(cfg.points)
        yp, yl = read_points(cfg.points_y)
        inc = Inclusion.from_points(xp, yp, cfg.metric, x_labels=xl, y_labels=yl)
    else:
        if cfg.index_map is None:
            raise ValidationError("matching X into Y from a distance matrix needs --index-map")
        sub = _load_space(cfg.points, cfg.dist_matrix, cfg.metric, 0.0)
        sup = _load_space(cfg.points_y, cfg.dist_matrix_y, cfg.metric, 0.0)
        inc = Inclusion(sub, sup, read_index_map(cfg.index_map, sub.n))
    if cfg.snap_eps > 0:
        sup = snap(inc.sup, cfg.snap_eps)
        inc = Inclusion(sup.restrict(inc.embed, inc.sub.labels), sup, inc.embed)
    return inc


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _segments_markdown(forest) -> str:
    labels = forest.space.labels
    out = [f"# Hierarchy (k={forest.k})", "", "| id | birth | death | members | antecedents | successor |",
           "|---|---|---|---|---|---|"]
    for s in forest.segments:
        names = ", ".join(labels[m] for m in sorted(s.members))
        out.append(f"| {s.id} | {s.birth:g} | {s.death:g} | {{{names}}} | "
                   f"{list(s.antecedents)} | {'' if s.successor is None else s.successor} |")
    return "\n".join(out) + "\n"


def cmd_build(cfg: RunConfig) -> int:
    space = _load_space(cfg.points, cfg.dist_matrix, cfg.metric, cfg.snap_eps)
    forest = build(space, cfg.k)
    if cfg.format == "dot":
        _emit(forest.to_dot(), cfg)
    elif cfg.format == "md":
        _emit(_segments_markdown(forest), cfg)
    else:
        _emit(forest.to_json() + "\n", cfg)
    return EXIT_OK


def cmd_layers(cfg: RunConfig) -> int:
    space = _load_space(cfg.points, cfg.dist_matrix, cfg.metric, cfg.snap_eps)
    forest = build(space, cfg.k)
    text = {"dot": layers_dot, "md": layers_markdown}.get(cfg.format, lambda f: layers_json(f) + "\n")(forest)
    _emit(text, cfg)
    return EXIT_OK


def cmd_stability(cfg: RunConfig) -> int:
    inc = _load_inclusion(cfg)
    pair = make_pair(inc, cfg.k, cfg.r, budget=cfg.tuple_budget)
    report = check_all(pair, strict_l16=cfg.strict_l16)
    _emit(report.to_markdown() if cfg.format == "md" else report.to_json() + "\n", cfg)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _corpus_markdown(rep: dict) -> str:
    out = [f"# Corpus run (seed {rep['seed']}, {rep['trials']} trials)", "",
           "| check | tested | violations | failing trials |", "|---|---|---|---|"]
    for cid, s in rep["summary"].items():
        out.append(f"| {cid} | {s['tested']} | {s['violations']} | {len(s['failed_trials'])} |")
    return "\n".join(out) + "\n"


def cmd_generate(cfg: RunConfig) -> int:
    rep = run_corpus(cfg.seed, cfg.trials, cfg.tuple_budget, cfg.strict_l16)
    _emit(_corpus_markdown(rep) if cfg.format == "md" else json.dumps(rep, indent=2) + "\n", cfg)
    failed = any(s["violations"] for s in rep["summary"].values())
    return EXIT_VIOLATION if failed else EXIT_OK


COMMANDS = {"build": cmd_build, "layers": cmd_layers, "stability": cmd_stability, "generate": cmd_generate}


def main(argv=None) -> int:
    ns = _parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items()})
    try:
        cfg.validate()
    except UsageError as exc:
        print(f"riplayer: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except (ValidationError, RTooSmall, EmptyConfigSpace, BudgetExceeded, OSError) as exc:
        print(f"riplayer: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
