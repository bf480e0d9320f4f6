#!/usr/bin/env python3
"""Print the vanishing-run trajectories of the block-zero witness family.

For each n the witness has zeros on the blocks [2^k, 2^k + k^(n+1)]; the
ratio m(f_n, 2^k) / k^(n+1) tends to 1 along the dyadic scales.  Early
scales merge into neighboring blocks, which shows up as inflated ratios.
"""

import argparse
import math

from hadalg import ideals
from hadalg.weights import FACTORIAL


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--horizon", type=int, default=1 << 14)
    args = ap.parse_args()

    for n in range(1, args.max_n + 1):
        f = ideals.krull_family(FACTORIAL, n, horizon=args.horizon)
        traj = ideals.growth_trajectory(f, n + 1, horizon=args.horizon)
        print(f"witness n = {n} (runs measured against k^{n + 1}):")
        for k, ratio in traj:
            shown = "inf" if math.isinf(ratio) else f"{ratio:.4f}"
            print(f"  k = {k:2d}  m(f,2^k)/k^{n + 1} = {shown}")
        print()


if __name__ == "__main__":
    main()
