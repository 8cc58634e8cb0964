"""Time the full pipeline (Hausdorff, both hierarchies, every check) against n.

    python3 scripts/timing.py --sizes 16 32 64 96
"""
import argparse
import time

import numpy as np

from riplayer.corpus import JITTER_SIGMA
from riplayer.errors import BudgetExceeded
from riplayer.metric import Inclusion
from riplayer.stability import check_all, make_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 96])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'n_x':>5} {'n_y':>5} {'k':>3} {'seconds':>9}")
    for n in args.sizes:
        x = rng.random((n, 2))
        extra = max(1, n // 4)
        y = np.vstack([x, x[:extra] + rng.normal(0, JITTER_SIGMA, size=(extra, 2))])
        inc = Inclusion.from_points(x, y)
        for k in range(4):
            start = time.perf_counter()
            try:
                check_all(make_pair(inc, k))
                msg = f"{time.perf_counter() - start:9.3f}"
            except BudgetExceeded:
                msg = "   budget"
            print(f"{n:>5} {len(y):>5} {k:>3} {msg}")


if __name__ == "__main__":
    main()
