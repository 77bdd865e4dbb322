"""How often reduce(lam' . reduce(lam . s)) and reduce(lam' lam . s) differ.

    python scripts/compatibility_stats.py [--max-len 3] [--max-size 2] [--certify]

With --certify each distinct defect is tested against the harvested
relations at a generic point (cutoff 6, total 8).
"""
import argparse
import time
from collections import Counter

from artifact import families as fa
from artifact import fusion as fu
from artifact.coeff import X2


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--certify", action="store_true")
    a = p.parse_args()
    pairs = [(fa.Wkx(1), fa.Wkx(1, X2, "x2")), (fa.Wkx(2), fa.Vacuum()), (fa.Vacuum(), fa.Vacuum())]
    for Ma, Mb in pairs:
        t = time.time()
        rep = fu.compatibility_suite(Ma, Mb, a.max_len, a.max_size, keep=200 if a.certify else 5)
        print(f"{Ma!r} x {Mb!r}: bound violations {rep.bound_violations}, defects "
              f"{rep.defects}/{rep.diagram_pairs} diagram pairs, "
              f"{rep.defect_word_pairs}/{rep.word_pairs} word pairs  {time.time() - t:.1f}s")
        if a.certify and rep.examples:
            span = fu.RelationSpan(fu.Fusion(Ma, Mb), 6, 0, total=8)
            tally = Counter(span.contains(fu.vec_sub(lhs, rhs)) for *_, lhs, rhs in rep.examples)
            print(f"  first {len(rep.examples)} defects in harvested span: {dict(tally)}")


if __name__ == "__main__":
    main()
