#!/usr/bin/env python3
"""Corona / Bezout round trip on random tuples.

Draws random eventually periodic elements, checks the corona condition,
solves for the Bezout cofactors when it holds, and verifies the identity
residual.  With --plant-zero a common zero is inserted to show the witness.
"""

import argparse
import random

from hadalg import algebra as alg
from hadalg.coeffseq import EPSeq
from hadalg.errors import CoronaFails
from hadalg.weights import FACTORIAL


def random_element(rng, zero_at=None):
    pl = rng.randint(0, 3)
    cl = rng.randint(1, 4)
    vals = [complex(rng.randint(-4, 4), rng.randint(-4, 4))
            for _ in range(pl + cl)]
    if zero_at is not None and zero_at < len(vals):
        vals[zero_at] = 0.0
    return alg.Element(FACTORIAL, EPSeq(tuple(vals[:pl]), tuple(vals[pl:])))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--tuple-size", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--plant-zero", action="store_true",
                    help="insert a common zero at index 0")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    solved = failed = 0
    for trial in range(args.trials):
        zero_at = 0 if args.plant_zero else None
        fs = [random_element(rng, zero_at) for _ in range(args.tuple_size)]
        try:
            delta, gs = alg.corona_solve(fs)
        except CoronaFails as exc:
            failed += 1
            print(f"trial {trial:3d}: corona fails, witness index "
                  f"{exc.witness()['index']}")
            continue
        acc = alg.zero(FACTORIAL)
        for g, f in zip(gs, fs):
            acc = alg.add(acc, alg.star(g, f))
        resid = alg.norm(alg.sub(acc, alg.unit(FACTORIAL)))
        solved += 1
        print(f"trial {trial:3d}: delta = {delta:.6g}, "
              f"max ||g_i|| = {max(alg.norm(g) for g in gs):.6g}, "
              f"residual = {resid:.3e}")
    print(f"\n{solved} solved, {failed} rejected with witnesses")


if __name__ == "__main__":
    main()
