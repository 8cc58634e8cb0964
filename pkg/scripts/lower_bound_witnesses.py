"""Collect lower-bound violations (L16/L17) over random pairs and compare them with d_H.

For each witness (s, t) the script records s / d_H.  At k=0 every witness seen
so far has s <= d_H, so adding the floor s > r removes them all.

    python3 scripts/lower_bound_witnesses.py --seed 1 --trials 500
"""
import argparse
from collections import Counter

from riplayer.corpus import instances
from riplayer.stability import check_all, make_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=500)
    args = ap.parse_args()

    per_k = Counter()
    above_dh = []
    worst_ratio = 0.0
    for inst in instances(args.seed, args.trials):
        inc = inst.inclusion()
        if inc.sub.n < inst.k + 1:
            continue
        pair = make_pair(inc, inst.k)
        report = check_all(pair)
        for cid in ("L16", "L17"):
            for w in report.check(cid).witnesses:
                if "s" not in w:
                    continue
                per_k[(cid, inst.k)] += 1
                ratio = w["s"] / pair.hausdorff if pair.hausdorff else float("inf")
                worst_ratio = max(worst_ratio, ratio)
                if w["s"] > pair.hausdorff:
                    above_dh.append((inst.trial, cid, w["s"], pair.hausdorff))
    for (cid, k), count in sorted(per_k.items()):
        print(f"{cid} k={k}: {count} witnesses")
    print(f"largest s / d_H among witnesses: {worst_ratio:.6f}")
    print(f"witnesses with s > d_H: {len(above_dh)}")
    for row in above_dh[:20]:
        print("  trial %d %s s=%r d_H=%r" % row)


if __name__ == "__main__":
    main()
