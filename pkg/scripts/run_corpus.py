"""Run the seeded random corpus and print a per-check summary.

    python3 scripts/run_corpus.py --seed 1 --trials 500
"""
import argparse
import json
import time

from riplayer.corpus import run_corpus
from riplayer.metric import DEFAULT_TUPLE_BUDGET


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--tuple-budget", type=int, default=DEFAULT_TUPLE_BUDGET)
    ap.add_argument("--strict-l16", action="store_true")
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()

    start = time.perf_counter()
    rep = run_corpus(args.seed, args.trials, args.tuple_budget, args.strict_l16)
    elapsed = time.perf_counter() - start
    print(f"seed {args.seed}, {args.trials} trials, {elapsed:.1f}s")
    print(f"{'check':<10} {'tested':>8} {'violations':>11} {'failing trials':>15}")
    for cid, s in rep["summary"].items():
        print(f"{cid:<10} {s['tested']:>8} {s['violations']:>11} {len(s['failed_trials']):>15}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep, fh, indent=2)


if __name__ == "__main__":
    main()
