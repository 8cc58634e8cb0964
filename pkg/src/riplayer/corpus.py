"""Seeded random instances and the aggregate corpus run."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hierarchy import build
from .layers import check_invariants
from .metric import DEFAULT_TUPLE_BUDGET, Inclusion
from .stability import CHECK_IDS, check_all, make_pair

INVARIANT_IDS = ("Lemma2", "Lemma3", "Lemma4", "Lemma6", "Remark7", "Lemma12")
JITTER_SIGMA = 0.02


@dataclass(frozen=True)
class Instance:
    trial: int
    k: int
    x_points: np.ndarray
    y_points: np.ndarray

    def inclusion(self) -> Inclusion:
        return Inclusion.from_points(self.x_points, self.y_points)


def random_instance(rng: np.random.Generator, trial: int = 0, n_range=(2, 32), k_max: int = 3,
                    dim: int = 2) -> Instance:
    """n uniform in n_range, points uniform in the unit cube, Y = X plus jittered copies."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    k = int(rng.integers(0, k_max + 1))
    x = rng.uniform(0.0, 1.0, size=(n, dim))
    extra = int(rng.integers(0, math.ceil(n / 4) + 1))
    src = rng.integers(0, n, size=extra)
    copies = x[src] + rng.normal(0.0, JITTER_SIGMA, size=(extra, dim))
    return Instance(trial, k, x, np.vstack([x, copies]))


def instances(seed: int, trials: int, **kw) -> list[Instance]:
    rng = np.random.default_rng(seed)
    return [random_instance(rng, i, **kw) for i in range(trials)]


def run_instance(inst: Instance, budget: int = DEFAULT_TUPLE_BUDGET, strict_l16: bool = False) -> dict:
    inc = inst.inclusion()
    out = {"trial": inst.trial, "n_x": inc.sub.n, "n_y": inc.sup.n, "k": inst.k, "checks": {}}
    for space, sp in (("X", inc.sub), ("Y", inc.sup)):
        for res in check_invariants(build(sp, inst.k)):
            rec = out["checks"].setdefault(res.id, [0, 0])
            rec[0] += res.tested
            rec[1] += len(res.witnesses)
    if inc.sub.n < inst.k + 1:
        out["skipped"] = "X has fewer than k+1 points"
        return out
    pair = make_pair(inc, inst.k, budget=budget)
    report = check_all(pair, strict_l16=strict_l16)
    out["hausdorff"] = pair.hausdorff
    out["r"] = pair.r
    for res in report.checks:
        out["checks"][res.id] = [res.tested, len(res.witnesses)]
    out["offsets_within"] = all(o["within"] for o in report.offsets)
    return out


def _run(args):
    return run_instance(*args)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RIPLAYER_THREADS", "1")))
    except ValueError:
        return 1


def run_corpus(seed: int, trials: int, budget: int = DEFAULT_TUPLE_BUDGET,
               strict_l16: bool = False) -> dict:
    insts = instances(seed, trials)
    jobs = [(inst, budget, strict_l16) for inst in insts]
    threads = min(_threads(), max(1, len(jobs)))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    results.sort(key=lambda r: r["trial"])

    summary = {}
    for cid in INVARIANT_IDS + CHECK_IDS:
        tested = sum(r["checks"].get(cid, [0, 0])[0] for r in results)
        viol = sum(r["checks"].get(cid, [0, 0])[1] for r in results)
        failed = [r["trial"] for r in results if r["checks"].get(cid, [0, 0])[1]]
        summary[cid] = {"tested": tested, "violations": viol, "failed_trials": failed}
    trials_out = []
    for r in results:
        row = {key: r[key] for key in ("trial", "n_x", "n_y", "k") if key in r}
        for key in ("hausdorff", "r", "skipped", "offsets_within"):
            if key in r:
                row[key] = r[key]
        row["failed"] = [cid for cid, (_, v) in r["checks"].items() if v]
        trials_out.append(row)
    return {
        "seed": seed,
        "trials": trials,
        "jitter_sigma": JITTER_SIGMA,
        "summary": summary,
        "results": trials_out,
    }
