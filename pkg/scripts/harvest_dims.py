"""Dimension estimates of (M x V)(N) against dim M(N), over cutoffs and seeds.

    python scripts/harvest_dims.py [--cutoffs 6 8 10] [--seeds 0 1] [--outer 8]
"""
import argparse
import time

from artifact import families as fa
from artifact import fusion as fu


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--cutoffs", type=int, nargs="+", default=[6, 8, 10])
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1])
    p.add_argument("--outer", type=int, default=8)
    a = p.parse_args()
    V = fa.Vacuum()
    for M in (fa.Wkx(0), fa.Wkx(2), V):
        want = {N: M.dimension(N) for N in range(0, a.outer + 1, 2)}
        print(f"{M!r}: dim M(N) = {want}")
        for cutoff in a.cutoffs:
            for seed in a.seeds:
                t = time.time()
                rep = fu.harvest(M, V, cutoff, seed, outer=a.outer, total=cutoff + 2)
                got = {N: rep.dim_estimate(N) for N in sorted(rep.states)}
                print(f"  cutoff {cutoff:2d} seed {seed}: {got}  {time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
