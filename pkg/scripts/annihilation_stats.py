"""Pass / inconclusive counts for every witness map at N_a, N_b (, N_c) <= 2.

    python scripts/annihilation_stats.py [--nmax 2] [--cutoff 6] [--no-certify]
"""
import argparse
import time
from collections import Counter

from artifact import families as fa
from artifact import fusion as fu
from artifact.coeff import X2


def pairs():
    Wh1, Wh2 = fa.Wkx(1), fa.Wkx(1, X2, "x2")
    return [(Wh1, Wh2), (fa.Wkx(2), fa.Vacuum()), (fa.Vacuum(), fa.Vacuum()),
            (fa.Wkx(0), fa.Wkx(2, X2, "x2"))]


def generators(Ma, Mb, nmax):
    return [g for Na in range(nmax + 1) for Nb in range(nmax + 1)
            if Ma.admissible(Na) and Mb.admissible(Nb)
            for g in fu.relation_generators(Ma, Mb, Na, Nb)]


def map_rows(nmax, cutoff, certify):
    for Ma, Mb in pairs():
        for kind, build in (("swap", fu.swap_map), ("minus", fu.minus_map), ("reflect", fu.reflect_map)):
            t = time.time()
            fmap = build(Ma, Mb)
            span = fu.RelationSpan(fmap.target, cutoff, 0, total=cutoff + 2) if certify else None
            tally = Counter()
            for g in generators(fmap.source.Ma, fmap.source.Mb, nmax):
                v = fu.check_annihilates(fmap, g, span)
                tally[v.status if v.status != "inconclusive" else f"inconclusive/{v.in_span}"] += 1
            yield kind, f"{Ma!r} x {Mb!r}", dict(tally), time.time() - t


def vacuum_rows(nmax):
    for M in (fa.Wkx(0), fa.Wkx(1), fa.Wkx(2), fa.Vacuum()):
        phi = fu.vacuum_phi(M)
        tally = Counter(fu.check_annihilates(phi, g).status for g in generators(M, fa.Vacuum(), nmax))
        yield "vacuum_phi", repr(M), dict(tally)
        tally = Counter(s for N in range(nmax + 1) if M.admissible(N) for u in M.basis(N)
                        for s in fu.check_vacuum_psi(M, u).values())
        yield "vacuum_psi", repr(M), dict(tally)


def assoc_rows(nmax, max_len):
    Wh1, Wh2 = fa.Wkx(1), fa.Wkx(1, X2, "x2")
    for fams in ((Wh1, Wh2, Wh1), (fa.Vacuum(),) * 3, (fa.Wkx(0), fa.Vacuum(), fa.Wkx(2))):
        tally = Counter()
        sizes = [[N for N in range(nmax + 1) if M.admissible(N)] for M in fams]
        for Na in sizes[0]:
            for Nb in sizes[1]:
                for Nc in sizes[2]:
                    for u in fams[0].basis(Na):
                        for v in fams[1].basis(Nb):
                            for w in fams[2].basis(Nc):
                                for inst in fu.assoc_instances(*fams, u, v, w, max_len=max_len):
                                    tally[("pass" if not fu.vec_sub(inst.lhs, inst.rhs) else "differ")] += 1
        yield " x ".join(map(repr, fams)), dict(tally)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--max-len", type=int, default=2)
    p.add_argument("--no-certify", action="store_true")
    a = p.parse_args()
    for kind, pair, tally, dt in map_rows(a.nmax, a.cutoff, not a.no_certify):
        print(f"{kind:8s} {pair:40s} {tally}  {dt:.1f}s")
    for kind, fam, tally in vacuum_rows(a.nmax):
        print(f"{kind:10s} {fam:30s} {tally}")
    for fams, tally in assoc_rows(a.nmax, a.max_len):
        print(f"assoc {fams:60s} {tally}")


if __name__ == "__main__":
    main()
