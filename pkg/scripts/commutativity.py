"""Dimension estimates of (A x B)(N) and (B x A)(N) side by side.

    python scripts/commutativity.py [--cutoff 6] [--outer 6] [--seed 0]
"""
import argparse

from artifact import families as fa
from artifact import fusion as fu
from artifact.coeff import X2

PAIRS = [(fa.Wkx(2), fa.Vacuum()), (fa.Wkx(1), fa.Wkx(1, X2, "x2")), (fa.XXZ(0), fa.Wkx(0)),
         (fa.Wkx(0), fa.Wkx(2, X2, "x2")), (fa.XXZ(1), fa.Wkx(1))]


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--outer", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    for A, B in PAIRS:
        ab = fu.harvest(A, B, a.cutoff, a.seed, outer=a.outer, total=a.cutoff + 2)
        ba = fu.harvest(B, A, a.cutoff, a.seed, outer=a.outer, total=a.cutoff + 2)
        da = {N: ab.dim_estimate(N) for N in sorted(ab.states)}
        db = {N: ba.dim_estimate(N) for N in sorted(ba.states)}
        print(f"{A!r} x {B!r}: {da}")
        print(f"{B!r} x {A!r}: {db}  {'agree' if da == db else 'DIFFER'}")


if __name__ == "__main__":
    main()
