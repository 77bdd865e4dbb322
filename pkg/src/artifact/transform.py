"""Twisted families (minus, reflect, dual) and the isomorphism witnesses between them.

A witness is a basis-indexed table ``state -> vector`` from a source family
into a target family, one table per size.  ``verify_intertwiner`` checks it
against every c and c-dagger letter.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import diagram as dg
from .coeff import ONE, U, X1, Scalar, evaluate
from .families import (RSOS, XXZ, Family, FamilyError, Vacuum, Vector, Wk, Wkx, vec_add,
                       vec_max_dev, vec_scale)

TAGS = ("minus", "reflect", "dual")


class TransformedFamily(Family):
    """M^-, M^r or the right-module dual of a base family.  States are the base states."""

    def __init__(self, base: Family, tag: str):
        if tag not in TAGS:
            raise FamilyError(f"unknown transform {tag!r}")
        self.base, self.tag = base, tag
        self.numeric = base.numeric
        self.link_states = base.link_states

    @staticmethod
    def of(base: Family, tag: str) -> Family:
        """Apply a transform; applying the same one twice returns the base."""
        if isinstance(base, TransformedFamily) and base.tag == tag:
            return base.base
        return TransformedFamily(base, tag)

    def __repr__(self):
        return f"{self.base!r}^{self.tag}"

    def __eq__(self, o):
        return isinstance(o, TransformedFamily) and (o.base, o.tag) == (self.base, self.tag)

    def __hash__(self):
        return hash((self.base, self.tag))

    @property
    def parity(self):
        return self.base.parity

    def admissible(self, N):
        return self.base.admissible(N)

    def beta(self):
        return self.base.beta()

    def coerce(self, k):
        return self.base.coerce(k)

    def basis(self, N, bound=None):
        return self.base.basis(N, bound)

    def dimension(self, N):
        return self.base.dimension(N)

    def state_size(self, st):
        return self.base.state_size(st)

    def _letter(self, d: dg.AnnularDiagram, st) -> Vector:
        u = self.base.unit(st)
        if self.tag == "minus":
            return vec_scale(self.base.act_diagram(d, u), self._sign(dg.sigma(d)))
        if self.tag == "reflect":
            return self.base.act_diagram(dg.reflect(d), u)
        raise FamilyError("the dual family acts from the right; use act_right")

    def _sign(self, s: int) -> Scalar:
        return Scalar.numeric(s) if self.numeric else Scalar.const(s)

    def c_state(self, N, j, st):
        return self._letter(dg.c(N, j), st)

    def cdag_state(self, N, j, st):
        return self._letter(dg.cdag(N, j), st)

    def act_diagram(self, lam, v):
        if self.tag == "dual":
            raise FamilyError("the dual family acts from the right; use act_right")
        if isinstance(lam, dg.AnnularDiagram):
            lam = {lam: ONE}
        out: Vector = {}
        for d, k in lam.items():
            if self.tag == "minus":
                w = vec_scale(self.base.act_diagram(d, v), self._sign(dg.sigma(d)))
            else:
                w = self.base.act_diagram(dg.reflect(d), v)
            for st, c in w.items():
                vec_add(out, st, self.coerce(k) * c)
        return out

    def act_right(self, v: Vector, lam) -> Vector:
        """u^dag . lambda = (lambda^dag . u)^dag."""
        if self.tag != "dual":
            raise FamilyError("right action is only defined on the dual family")
        if isinstance(lam, dg.AnnularDiagram):
            return self.base.act_diagram(dg.adjoint(lam), v)
        return self.base.act_diagram({dg.adjoint(d): k for d, k in lam.items()}, v)


def act_transformed(tf: TransformedFamily, lam, v: Vector) -> Vector:
    if tf.tag == "dual":
        return tf.act_right(v, lam)
    return tf.act_diagram(lam, v)


# -- witnesses -----------------------------------------------------------------------------

@dataclass
class Witness:
    """A family morphism source -> target given state by state.

    ``point`` is set when the table is numeric: both families are then
    evaluated at that specialization before comparison.
    """

    kind: str
    source: Family
    target: Family
    image: Callable[[int, object], Vector]
    point: Optional[Dict[str, complex]] = None

    def table(self, N: int) -> Dict[object, Vector]:
        return {st: self.image(N, st) for st in self.source.basis(N, 1)}

    def apply(self, N: int, v: Vector) -> Vector:
        out: Vector = {}
        for st, k in v.items():
            for st2, k2 in self.image(N, st).items():
                vec_add(out, st2, k * k2)
        return out


def _scalar_like(fam: Family, n: int) -> Scalar:
    return Scalar.numeric(n) if fam.numeric else Scalar.const(n)


def _state_sigma_link(fam, st) -> int:
    return dg.sigma(fam.state_diagram(st))


def _reflect_state(fam, st):
    d = dg.reflect(fam.state_diagram(st))
    return (d.out, d.l) if isinstance(fam, Wk) else d.out


def _neg_twist(fam: Wkx) -> Wkx:
    return Wkx(fam.k2, -fam.twist, "-" + fam.label if not fam.label.startswith("-") else fam.label[1:])


def _inv_twist(fam: Wkx) -> Wkx:
    return Wkx(fam.k2, fam.twist.inverse(), fam.label + "^-1")


def iso_witness(kind: str, **params) -> Witness:
    """Witness maps for the transformation table.

    Parameters: ``k2`` (twice k) for Wk/Wkx; ``m2`` for XXZ; ``series``, ``n``,
    ``mu`` and ``K`` for RSOS.  Each witness maps the right-hand family of an
    isomorphism into the transformed left-hand family.
    """
    if kind == "Wk_minus":
        fam = Wk(params.get("k2", 0))
        return Witness(kind, fam, TransformedFamily.of(fam, "minus"),
                       lambda N, st: {st: Scalar.const(_state_sigma_link(fam, st))})
    if kind == "Wk_reflect":
        fam = Wk(params.get("k2", 0))
        return Witness(kind, fam, TransformedFamily.of(fam, "reflect"),
                       lambda N, st: {_reflect_state(fam, st): ONE})
    if kind == "Wkx_minus":
        fam = Wkx(params.get("k2", 0))
        src = _neg_twist(fam)
        return Witness(kind, src, TransformedFamily.of(fam, "minus"),
                       lambda N, st: {st: Scalar.const(_state_sigma_link(fam, st))})
    if kind == "Wkx_reflect":
        fam = Wkx(params.get("k2", 0))
        src = _inv_twist(fam)
        return Witness(kind, src, TransformedFamily.of(fam, "reflect"),
                       lambda N, st: {_reflect_state(fam, st): ONE})
    if kind == "V_reflect":
        fam = Vacuum()

        def chords(N, st):
            return {tuple(sorted((N + 1 - j, N + 1 - i) for i, j in st)): ONE}
        return Witness(kind, fam, TransformedFamily.of(fam, "reflect"), chords)
    if kind == "XXZ_minus":
        fam = XXZ(params.get("m2", 0))
        src = XXZ(fam.m2, -fam.twist, "-u")
        return Witness(kind, src, TransformedFamily.of(fam, "minus"), lambda N, st: {st: ONE})
    if kind == "XXZ_reflect_flip":
        # exact: reverse the chain and flip every spin; changes the sector m -> -m
        fam = XXZ(params.get("m2", 0))
        src = XXZ(None if fam.m2 is None else -fam.m2)
        flip = str.maketrans("+-", "-+")
        return Witness(kind, src, TransformedFamily.of(fam, "reflect"),
                       lambda N, st: {st[::-1].translate(flip): ONE})
    if kind == "XXZ_reflect":
        fam = XXZ(params.get("m2", 0))
        src = XXZ(fam.m2, fam.twist.inverse(), "u^-1")
        return solve_witness(kind, src, TransformedFamily.of(fam, "reflect"),
                             params.get("nmax", 5), params.get("seed", 0))
    if kind in ("RSOS_minus", "RSOS_reflect"):
        K = params.get("K")
        fam = RSOS(params.get("series", "A"), params.get("n", 3), params.get("mu", 1), K)
        if kind == "RSOS_minus":
            return Witness(kind, fam, TransformedFamily.of(fam, "minus"),
                           lambda N, st: {st: Scalar.numeric(fam.theta[st[0]])})
        src = RSOS(fam.series, fam.n, fam.mu, fam.Kinv)
        return Witness(kind, src, TransformedFamily.of(fam, "reflect"),
                       lambda N, st: {st[::-1]: Scalar.numeric(1)})
    raise FamilyError(f"unsupported witness kind {kind!r}")


WITNESS_KINDS = ("Wk_minus", "Wk_reflect", "Wkx_minus", "Wkx_reflect", "V_reflect",
                 "RSOS_minus", "RSOS_reflect", "XXZ_minus", "XXZ_reflect")


# -- numeric linear algebra ----------------------------------------------------------------

def random_point(seed: int) -> Dict[str, complex]:
    """A generic complex specialization away from roots of unity."""
    rng = random.Random(seed)
    pt = {}
    for name in ("s", "x1", "x2", "u"):
        r = rng.uniform(0.6, 1.6)
        pt[name] = cmath.rect(r if abs(r - 1) > 0.05 else 1.3, rng.uniform(0.2, 3.0))
    return pt


def _num(k: Scalar, point) -> complex:
    return k.value if k.is_numeric else complex(evaluate(k, point).value)


def letter_matrix(fam: Family, d: dg.AnnularDiagram, point) -> np.ndarray:
    src, dst = fam.basis(d.n_in, 1), fam.basis(d.n_out, 1)
    index = {st: i for i, st in enumerate(dst)}
    M = np.zeros((len(dst), len(src)), dtype=complex)
    for i, st in enumerate(src):
        for t, k in fam.act_diagram(d, fam.unit(st)).items():
            M[index[t], i] += _num(k, point)
    return M


def _letters(N: int):
    for j in range(N):
        yield dg.c(N, j)
        yield dg.cdag(N, j)


def solve_witness(kind: str, source: Family, target: Family, nmax: int, seed: int = 0) -> Witness:
    """Find the intertwiner numerically, jointly over all admissible sizes <= nmax."""
    point = random_point(seed)
    sizes = [N for N in range(nmax + 1) if source.admissible(N)]
    bs = {N: source.basis(N) for N in sizes}
    bt = {N: target.basis(N) for N in sizes}
    offsets, total = {}, 0
    for N in sizes:
        offsets[N] = total
        total += len(bt[N]) * len(bs[N])
    rows = []
    for N in sizes:
        if N < 2 or N - 2 not in offsets:
            continue
        for d in _letters(N):
            A = letter_matrix(source, d, point)
            B = letter_matrix(target, d, point)
            # T_out A = B T_in
            n_out, n_in = d.n_out, d.n_in
            ro, ri = len(bt[n_out]), len(bt[n_in])
            co, ci = len(bs[n_out]), len(bs[n_in])
            for r in range(ro):
                for col in range(ci):
                    row = np.zeros(total, dtype=complex)
                    for k in range(co):
                        row[offsets[n_out] + r * co + k] += A[k, col]
                    for k in range(ri):
                        row[offsets[n_in] + k * ci + col] -= B[r, k]
                    rows.append(row)
    _, sv, vh = np.linalg.svd(np.array(rows))
    if total - np.sum(sv > 1e-8 * sv[0]) != 1:
        raise FamilyError(f"{kind}: intertwiner space is not one-dimensional")
    sol = vh[-1].conj()
    sol = sol / sol[np.argmax(np.abs(sol))]
    tables = {}
    for N in sizes:
        T = sol[offsets[N]:offsets[N] + len(bt[N]) * len(bs[N])].reshape(len(bt[N]), len(bs[N]))
        tables[N] = {st: {t: Scalar.numeric(T[r, i]) for r, t in enumerate(bt[N]) if abs(T[r, i]) > 1e-13}
                     for i, st in enumerate(bs[N])}
    return Witness(kind, source, target, lambda N, st: tables[N][st], point)


# -- verification --------------------------------------------------------------------------

@dataclass
class IntertwinerReport:
    ok: bool
    checked: int
    first_failure: Optional[str] = None
    max_deviation: float = 0.0


def _to_numeric(v: Vector, point) -> Vector:
    return {st: Scalar.numeric(_num(k, point)) for st, k in v.items()}


def _act_numeric(fam: Family, d, v: Vector, point) -> Vector:
    out: Vector = {}
    for st, k in v.items():
        for t, c in fam.act_diagram(d, fam.unit(st)).items():
            vec_add(out, t, k * Scalar.numeric(_num(c, point)))
    return out


def _same(a: Vector, b: Vector, point, tol) -> Tuple[bool, float]:
    if point is None and not any(k.is_numeric for k in list(a.values()) + list(b.values())):
        diff: Vector = dict(a)
        for st, k in b.items():
            vec_add(diff, st, -k)
        return not diff, 0.0
    pt = point or {}
    dev = vec_max_dev(_to_numeric(a, pt), _to_numeric(b, pt))
    return dev < tol, dev


def verify_intertwiner(w: Witness, nmax: int = 5, tol: float = 1e-9,
                       bijective: bool = True) -> IntertwinerReport:
    """Check phi(c_j u) = c_j phi(u) and phi(c^dag_j u) = c^dag_j phi(u) for all j and basis u."""
    src, tgt = w.source, w.target
    if src.parity != tgt.parity:
        return IntertwinerReport(False, 0, "parity mismatch")
    checked, worst = 0, 0.0
    for N in range(2, nmax + 1):
        if not src.admissible(N):
            continue
        for d in _letters(N):
            if not src.admissible(d.n_in) or not src.admissible(d.n_out):
                continue
            for st in src.basis(d.n_in, 1):
                u = src.unit(st)
                if w.point is None:
                    lhs = w.apply(d.n_out, src.act_diagram(d, u))
                    rhs = tgt.act_diagram(d, w.apply(d.n_in, u))
                else:
                    lhs = w.apply(d.n_out, _to_numeric(src.act_diagram(d, u), w.point))
                    rhs = _act_numeric(tgt, d, w.apply(d.n_in, _to_numeric(u, w.point)), w.point)
                ok, dev = _same(lhs, rhs, w.point, tol)
                worst = max(worst, dev)
                checked += 1
                if not ok:
                    kind = "c" if d.n_out < d.n_in else "cd"
                    return IntertwinerReport(False, checked, f"{kind}[{N}] {d!r} on {st!r}", worst)
    if bijective:
        for N in range(nmax + 1):
            if not src.admissible(N):
                continue
            M = _table_matrix(w, N)
            if M.shape[0] != M.shape[1] or np.linalg.matrix_rank(M) != M.shape[0]:
                return IntertwinerReport(False, checked, f"not bijective at size {N}", worst)
    return IntertwinerReport(True, checked, None, worst)


def _table_matrix(w: Witness, N: int) -> np.ndarray:
    pt = w.point or random_point(1)
    bs, bt = w.source.basis(N, 1), w.target.basis(N, 1)
    if isinstance(w.source, Wk):
        bt = sorted({t for st in bs for t in w.image(N, st)}, key=repr)
    index = {t: i for i, t in enumerate(bt)}
    M = np.zeros((len(bt), len(bs)), dtype=complex)
    for i, st in enumerate(bs):
        for t, k in w.image(N, st).items():
            if t not in index:
                return np.zeros((0, len(bs)))
            M[index[t], i] = _num(k, pt)
    return M


def sign_flipped(w: Witness) -> Witness:
    """Negative control: negate the image of the first basis state at every size."""
    def image(N, st):
        v = w.image(N, st)
        neg = Scalar.numeric(-1) if w.point is not None else _scalar_like(w.target, -1)
        return vec_scale(v, neg) if st == w.source.basis(N, 1)[0] else v
    return Witness(w.kind + "_flipped", w.source, w.target, image, w.point)


def vacuum_minus_control(nmax: int = 6, point=None) -> Dict[int, Tuple[complex, complex]]:
    """F acts as beta on V and as -beta on V^-; returns (value on V, value on V^-) per size."""
    point = point or random_point(0)
    fam = Vacuum()
    minus = TransformedFamily.of(fam, "minus")
    out = {}
    for N in range(2, nmax + 1, 2):
        st = fam.basis(N)[0]
        a = fam.act_diagram(dg.F(N), fam.unit(st)).get(st)
        b = minus.act_diagram(dg.F(N), fam.unit(st)).get(st)
        out[N] = (_num(a, point) if a else 0j, _num(b, point) if b else 0j)
    return out
