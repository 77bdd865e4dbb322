"""Command-line front end: ``peritl <subcommand> ...``.

Exit codes: 0 on success or when every check passes, 1 when a check fails
(or stays inconclusive), 2 on usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, List

from . import diagram as dg
from . import fusion as fu
from . import transform as tr
from . import word as wd
from .coeff import to_text
from .diagram import AnnularDiagram
from .families import FamilyError, check_relations_on_family, family_spec, parse_family


class UsageError(Exception):
    pass


# -- parsing helpers ---------------------------------------------------------------------

def parse_diagram(text: str) -> AnnularDiagram:
    """A diagram from JSON, or from a word such as ``c[4,1] cd[4,0]`` (scalar dropped)."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return AnnularDiagram.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"diagram JSON: {exc.msg} at position {exc.pos}") from None
    return wd.word_to_diagram(wd.parse_word(text))[0]


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(y) for y in x)
    return x


def parse_state(text: str):
    try:
        return _tupled(json.loads(text))
    except json.JSONDecodeError:
        return text     # XXZ spin strings may be given bare


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def vector_json(vec: dict) -> List[dict]:
    rows = [{"state": _jsonable(st), "coef": str(k)} for st, k in vec.items()]
    return sorted(rows, key=lambda r: json.dumps(r["state"]))


def threads() -> int:
    """Worker cap from PERITL_THREADS; everything here currently runs in one process."""
    try:
        return max(1, int(os.environ.get("PERITL_THREADS", "1")))
    except ValueError:
        return 1


def emit(obj: Any, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# -- subcommands -------------------------------------------------------------------------

def cmd_compose(a) -> int:
    d1, d2 = parse_diagram(a.left), parse_diagram(a.right)
    d, k = dg.compose(d1, d2)
    emit({"diagram": d.to_json(), "scalar": to_text(k)}, a.format, f"({to_text(k)}) * {d!r}")
    return 0


def cmd_normalize(a) -> int:
    w = wd.parse_word(a.word)
    st = wd.normalize(w)
    canon = wd.format_word(st.letters())
    obj = {"word": canon, "beta_power": st.beta_pow, "k2": st.k2, "l": st.l,
           "diagram": st.to_diagram().to_json()}
    emit(obj, a.format, f"beta^{st.beta_pow} * [{canon}]")
    return 0


def cmd_act(a) -> int:
    fam = parse_family(a.family)
    st = parse_state(a.state)
    vec = fam.act_word(wd.parse_word(a.word), fam.unit(st))
    rows = vector_json(vec)
    emit({"family": family_spec(fam), "result": rows}, a.format,
         "\n".join(f"{r['coef']}  {r['state']}" for r in rows) or "0")
    return 0


def cmd_fuse(a) -> int:
    Ma, Mb = parse_family(a.left), parse_family(a.right)
    total = a.total if a.total is not None else a.cutoff + 2
    rep = fu.harvest_and_rank(Ma, Mb, a.size, a.cutoff, a.seed, total=total, outer=a.outer)
    obj = {"left": family_spec(Ma), "right": family_spec(Mb), "size": a.size,
           "cutoff": a.cutoff, "total": total, "outer": rep.outer, "seed": a.seed,
           "point": rep.point, "states": rep.states, "relations": rep.relations,
           "rank": rep.rank, "dim_estimate": rep.dim_estimate, "stable": rep.stable}
    emit(obj, a.format, f"dim estimate {rep.dim_estimate} "
                        f"({rep.states} states, rank {rep.rank}, stable={rep.stable})")
    return 0


_MAPS = {"swap": fu.swap_map, "minus": fu.minus_map, "reflect": fu.reflect_map,
         "naive_swap": fu.naive_swap, "identity": fu.identity_control}


def cmd_fuse_check(a) -> int:
    Ma, Mb = parse_family(a.left), parse_family(a.right)
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    certified = 0
    if a.witness == "vacuum":
        fmap = fu.vacuum_phi(Ma)
        gens = [g for Na in range(a.nmax + 1) for Nb in range(0, a.nmax + 1, 2)
                if Ma.admissible(Na) for g in fu.relation_generators(Ma, fmap.source.Mb, Na, Nb)]
        span = None
    elif a.witness == "dual":
        fmap = fu.dual_phi(Ma, Mb)
        gens = [g for Na in range(a.nmax + 1) for Nb in range(Na + 1)
                if Ma.admissible(Na) and Mb.admissible(Nb)
                for g in fu.dual_generators(Ma, Mb, Na, Nb)]
        span = fu.RelationSpan(fmap.target, a.cutoff, a.seed, total=a.cutoff + 2) if a.certify else None
    elif a.witness in _MAPS:
        fmap = _MAPS[a.witness](Ma, Mb)
        src = fmap.source
        gens = [g for Na in range(a.nmax + 1) for Nb in range(a.nmax + 1)
                if src.Ma.admissible(Na) and src.Mb.admissible(Nb)
                for g in fu.relation_generators(src.Ma, src.Mb, Na, Nb)]
        span = (fu.RelationSpan(fmap.target, a.cutoff, a.seed, total=a.cutoff + 2)
                if a.certify and isinstance(fmap.target, fu.Fusion) else None)
    else:
        raise UsageError(f"unknown witness {a.witness!r}")
    for g in gens:
        v = fu.check_annihilates(fmap, g, span)
        counts[v.status] += 1
        certified += v.status == "inconclusive" and v.in_span is True
    obj = {"witness": a.witness, "left": family_spec(Ma), "right": family_spec(Mb),
           "nmax": a.nmax, "generators": len(gens), **counts}
    if span is not None:
        obj["inconclusive_in_span"] = certified
    emit(obj, a.format, " ".join(f"{k}={v}" for k, v in obj.items()))
    return 0 if counts["pass"] == len(gens) else 1


def cmd_check_relations(a) -> int:
    rows, bad = [], 0
    if a.family:
        fam = parse_family(a.family)
        fails = check_relations_on_family(fam, a.nmax)
        emit({"family": family_spec(fam), "nmax": a.nmax, "failures": fails}, a.format,
             "\n".join(fails) or f"all relations hold on {family_spec(fam)} up to size {a.nmax}")
        return 1 if fails else 0
    for N in range(2, a.nmax + 1):
        per: dict = {}
        for r in wd.relation_instances(N):
            if max(x.size for x in r.lhs + r.rhs) > a.nmax + 2:
                continue
            ok = wd.check_relation_diagrammatic(r)
            tot, good = per.get(r.label, (0, 0))
            per[r.label] = (tot + 1, good + ok)
            bad += not ok
        for lab, (tot, good) in sorted(per.items()):
            rows.append({"N": N, "relation": lab, "instances": tot, "passed": good})
    text = "\n".join(f"N={r['N']} {r['relation']}: {r['passed']}/{r['instances']}" for r in rows)
    emit({"nmax": a.nmax, "rows": rows, "failures": bad}, a.format, text)
    return 1 if bad else 0


def cmd_check_iso(a) -> int:
    params = {}
    for item in a.param or []:
        key, _, val = item.partition("=")
        params[key] = _tupled(json.loads(val)) if val[:1] in "[{" or val.lstrip("-").isdigit() else val
    w = tr.iso_witness(a.kind, **params)
    rep = tr.verify_intertwiner(w, a.nmax)
    obj = {"kind": a.kind, "ok": rep.ok, "checked": rep.checked,
           "first_failure": rep.first_failure, "max_deviation": rep.max_deviation}
    emit(obj, a.format, f"{a.kind}: {'pass' if rep.ok else 'fail'} ({rep.checked} checks)")
    return 0 if rep.ok else 1


def cmd_dims(a) -> int:
    fam = parse_family(a.family)
    d = fam.dimension(a.n)
    emit({"family": family_spec(fam), "N": a.n, "dim": d}, a.format, str(d))
    return 0


def cmd_render(a) -> int:
    svg = dg.render_svg(parse_diagram(a.diagram))
    if a.output:
        Path(a.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="peritl")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("compose", help="product of two diagrams (left drawn outside)")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(fn=cmd_compose)

    s = sub.add_parser("normalize", help="canonical word of a word")
    s.add_argument("--word", required=True)
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("act", help="act with a word on a basis state of a family")
    s.add_argument("--family", required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--state", required=True)
    s.set_defaults(fn=cmd_act)

    s = sub.add_parser("fuse", help="generic-rank dimension estimate of a fusion product")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--cutoff", type=int, required=True)
    s.add_argument("--total", type=int, default=None, help="cap on N_a + N_b (default cutoff + 2)")
    s.add_argument("--outer", type=int, default=None, help="largest outer size kept (default size + 2)")
    s.set_defaults(fn=cmd_fuse)

    s = sub.add_parser("fuse-check", help="annihilation suite for a witness map")
    s.add_argument("witness", help="swap, minus, reflect, vacuum, dual, naive_swap or identity")
    s.add_argument("--left", required=True)
    s.add_argument("--right", default="V")
    s.add_argument("--nmax", type=int, default=2)
    s.add_argument("--certify", action="store_true", help="test inconclusive residues against harvested relations")
    s.add_argument("--cutoff", type=int, default=6)
    s.set_defaults(fn=cmd_fuse_check)

    s = sub.add_parser("check-relations", help="c-algebra relations, diagrammatically or on a family")
    s.add_argument("--nmax", type=int, default=6)
    s.add_argument("--family", default=None)
    s.set_defaults(fn=cmd_check_relations)

    s = sub.add_parser("check-iso", help="verify a transformation witness")
    s.add_argument("--kind", required=True, choices=tr.WITNESS_KINDS + ("XXZ_reflect_flip",))
    s.add_argument("--param", action="append", help="key=value, e.g. k2=2 or K=[3,2,1]")
    s.add_argument("--nmax", type=int, default=5)
    s.set_defaults(fn=cmd_check_iso)

    s = sub.add_parser("dims", help="dimension of a family at size N")
    s.add_argument("--family", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_dims)

    s = sub.add_parser("render", help="SVG picture of a diagram")
    s.add_argument("--diagram", required=True)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(fn=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (UsageError, FamilyError, fu.FusionError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
