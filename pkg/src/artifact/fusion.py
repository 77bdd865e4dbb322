"""Fusion of two families: fused states, canonical reduction and relation harvesting.

A fused state is ``lam . (u x v)`` with ``lam`` in L(N, N_a + N_b).  Every
such state reduces to a combination of canonical states
``c_0^n . (u x v)`` stored as triples ``(n, u, v)``; the outer size is then
``N_a + N_b - 2n`` and ``0 <= n <= min(N_a, N_b)``.

Reduction converts ``lam`` to its canonical word and lets the letters act one
at a time, right to left, with the case tables below.  The canonical states
span the fused module but need not be independent, so equality of reduced
forms is one-sided; ``harvest_and_rank`` estimates the true dimension.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import diagram as dg
from .coeff import ONE, ZERO, Scalar, beta
from .diagram import AnnularDiagram
from .families import Family, FamilyError, Vector, vec_add, vec_scale
from .word import CD, C, Letter, Word, diagram_to_word, omega_word, relation_instances

Canon = Tuple[int, Hashable, Hashable]          # (n, u, v)
FusedKey = Tuple[AnnularDiagram, Hashable, Hashable]
CanonVector = Dict[Canon, Scalar]
FusedVector = Dict[FusedKey, Scalar]


class FusionError(ValueError):
    pass


class FusionBoundError(AssertionError):
    pass


# -- small vector helpers -------------------------------------------------------------------

def _add(acc: dict, key, coef: Scalar) -> None:
    vec_add(acc, key, coef)


def _tensor(n: int, us: Vector, vs: Vector, coef: Scalar = ONE) -> CanonVector:
    out: CanonVector = {}
    for u, a in us.items():
        for v, b in vs.items():
            _add(out, (n, u, v), coef * a * b)
    return out


def vec_combine(*pairs: Tuple[Scalar, dict]) -> dict:
    out: dict = {}
    for k, vec in pairs:
        for key, c in vec.items():
            _add(out, key, k * c)
    return out


def vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, c in b.items():
        _add(out, key, -c)
    return out


class Generator(NamedTuple):
    label: str          # a..e
    j: int
    u: Hashable
    v: Hashable
    expr: FusedVector


@dataclass(frozen=True)
class Fusion:
    """The pair (M_a, M_b) together with the canonical letter action."""

    Ma: Family
    Mb: Family

    # -- sizes ------------------------------------------------------------------------
    def sizes(self, u, v) -> Tuple[int, int]:
        return self.Ma.state_size(u), self.Mb.state_size(v)

    def outer_size(self, st: Canon) -> int:
        n, u, v = st
        Na, Nb = self.sizes(u, v)
        return Na + Nb - 2 * n

    def one(self) -> Scalar:
        return self.Ma.one() if self.Ma.numeric else self.Mb.one()

    def check_bound(self, st: Canon) -> None:
        n, u, v = st
        Na, Nb = self.sizes(u, v)
        if not 0 <= n <= min(Na, Nb):
            raise FusionBoundError(f"canonical state violates 0 <= n <= min(N_a, N_b): {st}")

    def canonical_states(self, N: int, cutoff: int, total: Optional[int] = None) -> List[Canon]:
        """All (n, u, v) of outer size N with N_a, N_b <= cutoff (and N_a + N_b <= total)."""
        out = []
        for Na in range(cutoff + 1):
            if not self.Ma.admissible(Na):
                continue
            for Nb in range(cutoff + 1):
                if not self.Mb.admissible(Nb) or (Na + Nb - N) % 2:
                    continue
                n = (Na + Nb - N) // 2
                if not 0 <= n <= min(Na, Nb) or (total is not None and Na + Nb > total):
                    continue
                for u in self.Ma.basis(Na):
                    for v in self.Mb.basis(Nb):
                        out.append((n, u, v))
        return out

    # -- the canonical action of single letters ----------------------------------------
    def _omega(self, fam: Family, N: int, st, power: int) -> Vector:
        return _fam_omega(fam, N, st, power)

    def letter_on_state(self, a: Letter, st: Canon) -> CanonVector:
        return _letter_on_state(self, a, st)

    def act_letter(self, a: Letter, vec: CanonVector) -> CanonVector:
        out: CanonVector = {}
        for st, k in vec.items():
            for st2, k2 in _letter_on_state(self, a, st).items():
                _add(out, st2, k * k2)
        return out

    def act_word(self, w: Sequence[Letter], vec: CanonVector) -> CanonVector:
        for a in reversed(w):
            vec = self.act_letter(a, vec)
            if not vec:
                break
        return vec

    def act_fused(self, lam, vec: CanonVector) -> CanonVector:
        """lam' . e for a reduced e; lam may be a diagram, a word or a weighted sum of diagrams."""
        if isinstance(lam, AnnularDiagram):
            self._check_sizes(lam.n_in, vec)
            return self.act_word(diagram_to_word(lam), vec)
        if isinstance(lam, tuple) and (not lam or isinstance(lam[0], Letter)):
            if lam:
                self._check_sizes(lam[-1].n_in, vec)
            return self.act_word(lam, vec)
        out: CanonVector = {}
        for d, k in lam.items():
            for st, c in self.act_fused(d, vec).items():
                _add(out, st, self._coerce(k) * c)
        return out

    def _coerce(self, k: Scalar) -> Scalar:
        for fam in (self.Ma, self.Mb):
            if fam.numeric:
                return fam.coerce(k)
        return k

    def _check_sizes(self, n_in: int, vec: CanonVector) -> None:
        for st in vec:
            if self.outer_size(st) != n_in:
                raise FusionError(f"diagram expects size {n_in}, state {st} has size {self.outer_size(st)}")

    # -- reduction -------------------------------------------------------------------
    def reduce(self, expr: FusedVector) -> CanonVector:
        out: CanonVector = {}
        for (lam, u, v), k in expr.items():
            Na, Nb = self.sizes(u, v)
            if lam.n_in != Na + Nb:
                raise FusionError(f"diagram inner size {lam.n_in} differs from N_a + N_b = {Na + Nb}")
            for st, c in _reduce_unit(self, lam, u, v).items():
                _add(out, st, self._coerce(k) * c)
        return out

    def reduce_word(self, w: Sequence[Letter], u, v) -> CanonVector:
        Na, Nb = self.sizes(u, v)
        if w and w[-1].n_in != Na + Nb:
            raise FusionError("word does not end at size N_a + N_b")
        return self.act_word(tuple(w), {(0, u, v): self.one()})

    def canonical_to_fused(self, vec: CanonVector) -> FusedVector:
        """Read (n, u, v) back as c_0^n . (u x v) with c_0^n a single diagram."""
        out: FusedVector = {}
        for (n, u, v), k in vec.items():
            Na, Nb = self.sizes(u, v)
            lam = dg.identity(Na + Nb)
            for m in range(n):
                size = Na + Nb - 2 * m
                lam, loops = dg.compose_loops(dg.c(size, 0), lam)
                k = k * beta() ** loops
            _add(out, (lam, u, v), k)
        return out


@lru_cache(maxsize=1 << 16)
def _reduce_unit(fz: Fusion, lam: AnnularDiagram, u, v) -> CanonVector:
    return fz.act_word(diagram_to_word(lam), {(0, u, v): fz.one()})


@lru_cache(maxsize=None)
def _fam_c(fam: Family, N: int, j: int, st) -> Vector:
    return fam.act_c(N, j, fam.unit(st))


@lru_cache(maxsize=None)
def _fam_cdag(fam: Family, N: int, j: int, st) -> Vector:
    return fam.act_cdag(N, j, fam.unit(st))


@lru_cache(maxsize=None)
def _fam_omega(fam: Family, N: int, st, power: int) -> Vector:
    return fam.act_word(omega_word(N, power), fam.unit(st))


@lru_cache(maxsize=None)
def _letter_on_state(fz: Fusion, a: Letter, st: Canon) -> CanonVector:
    n, u, v = st
    Ma, Mb = fz.Ma, fz.Mb
    Na, Nb = fz.sizes(u, v)
    N = Na + Nb - 2 * n
    lo = min(Na, Nb)
    j = a.j
    uu, vv = Ma.unit(u), Mb.unit(v)
    if a.kind == "cd":
        if a.size != N + 2:
            raise FusionError(f"{a} does not act at size {N}")
        if j == 0:
            out = _tensor(n + 1, _fam_cdag(Ma, Na + 2, n + 1, u), _fam_cdag(Mb, Nb + 2, Nb - n + 1, v))
        elif j <= Na - n:
            out = _tensor(n, _fam_cdag(Ma, Na + 2, j + n, u), vv)
        else:
            out = _tensor(n, uu, _fam_cdag(Mb, Nb + 2, j - Na + n, v))
    else:
        if a.size != N:
            raise FusionError(f"{a} does not act at size {N}")
        if j == 0:
            if n < lo:
                out = {(n + 1, u, v): fz.one()}
            elif n == Na:
                # c_0^{N_a+1}(u x v) = c_0^{N_a+2}(c_0^dag u x Omega v)
                out = _tensor(Na + 2, _fam_cdag(Ma, Na + 2, 0, u), fz._omega(Mb, Nb, v, 1))
            else:
                out = _tensor(Nb + 2, fz._omega(Ma, Na, u, -1), _fam_cdag(Mb, Nb + 2, 0, v))
        elif j <= Na - n - 1:
            out = _tensor(n, _fam_c(Ma, Na, j + n, u), vv)
        elif j == Na - n:
            out = _tensor(n + 1, fz._omega(Ma, Na, u, -1), fz._omega(Mb, Nb, v, 1))
        else:
            out = _tensor(n, uu, _fam_c(Mb, Nb, j - Na + n, v))
    for key in out:
        fz.check_bound(key)
    return out


# -- module level wrappers ------------------------------------------------------------------

def fused_state(lam: AnnularDiagram, u, v, coef: Scalar = ONE) -> FusedVector:
    return {(lam, u, v): coef}


def reduce(expr: FusedVector, Ma: Family, Mb: Family) -> CanonVector:
    return Fusion(Ma, Mb).reduce(expr)


def act_fused(lam, vec: CanonVector, Ma: Family, Mb: Family) -> CanonVector:
    return Fusion(Ma, Mb).act_fused(lam, vec)


def _id(Na: int, Nb: int) -> AnnularDiagram:
    return dg.identity(Na + Nb)


def relation_generators(Ma: Family, Mb: Family, Na: int, Nb: int) -> List[Generator]:
    """All X^alpha_j(u, v) for basis states u of M_a(N_a), v of M_b(N_b)."""
    if not (Ma.admissible(Na) and Mb.admissible(Nb)):
        raise FusionError(f"sizes ({Na}, {Nb}) not admissible")
    N = Na + Nb
    out: List[Generator] = []
    for u in Ma.basis(Na):
        for v in Mb.basis(Nb):
            uu, vv = Ma.unit(u), Mb.unit(v)
            for j in range(1, Na):
                e = {(dg.c(N, j), u, v): ONE}
                for u2, k in Ma.act_c(Na, j, uu).items():
                    _add(e, (_id(Na - 2, Nb), u2, v), -k)
                out.append(Generator("a", j, u, v, e))
            for j in range(1, Nb):
                e = {(dg.c(N, j + Na), u, v): ONE}
                for v2, k in Mb.act_c(Nb, j, vv).items():
                    _add(e, (_id(Na, Nb - 2), u, v2), -k)
                out.append(Generator("b", j, u, v, e))
            for j in range(1, Na + 2):
                e = {(dg.cdag(N + 2, j), u, v): ONE}
                for u2, k in Ma.act_cdag(Na + 2, j, uu).items():
                    _add(e, (_id(Na + 2, Nb), u2, v), -k)
                out.append(Generator("c", j, u, v, e))
            for j in range(1, Nb + 2):
                e = {(dg.cdag(N + 2, j + Na), u, v): ONE}
                for v2, k in Mb.act_cdag(Nb + 2, j, vv).items():
                    _add(e, (_id(Na, Nb + 2), u, v2), -k)
                out.append(Generator("d", j, u, v, e))
            if Na > 0:
                e = {(dg.omega(N), u, v): ONE}
                lam = dg.c(N + 2, Na)
                om = Ma.act_word(omega_word(Na), uu)
                cd = Mb.act_cdag(Nb + 2, 0, vv)
                for u2, k in om.items():
                    for v2, k2 in cd.items():
                        _add(e, (lam, u2, v2), -k * k2)
                out.append(Generator("e", 0, u, v, e))
    return out


# -- generic-rank harvest ------------------------------------------------------------------

PRIME = 998244353                      # 1 mod 4, so -1 has a square root
I_MOD = pow(3, (PRIME - 1) // 4, PRIME)
SAMPLE_VALUES = tuple(Fraction(a, b) for a, b in
                      [(2, 1), (3, 1), (1, 2), (1, 3), (3, 2), (2, 3), (5, 2), (2, 5),
                       (-2, 1), (-3, 1), (-1, 2), (-1, 3), (-3, 2), (-2, 3), (5, 3), (3, 5)])


def sample_point(seed: int) -> Dict[str, Fraction]:
    rng = random.Random(seed)
    return {name: rng.choice(SAMPLE_VALUES) for name in ("s", "x1", "x2", "u")}


def _point_mod(point: Dict[str, Fraction]) -> Dict[str, int]:
    return {k: v.numerator % PRIME * pow(v.denominator, -1, PRIME) % PRIME for k, v in point.items()}


class ModSpace:
    """Incremental row echelon form over GF(PRIME) for sparse vectors."""

    def __init__(self):
        self.rows: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Dict[int, int]) -> Dict[int, int]:
        vec = {k: c for k, c in vec.items() if c}
        while vec:
            piv = min(vec)
            row = self.rows.get(piv)
            if row is None:
                return vec
            f = vec[piv]
            for k, c in row.items():
                x = (vec.get(k, 0) - f * c) % PRIME
                if x:
                    vec[k] = x
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vec: Dict[int, int]) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec)
        inv = pow(vec[piv], -1, PRIME)
        self.rows[piv] = {k: c * inv % PRIME for k, c in vec.items()}
        return True


@dataclass
class HarvestReport:
    left: str
    right: str
    cutoff: int
    seed: int
    point: Dict[str, str]
    states: Dict[int, int]
    relations: Dict[int, int]
    rank: Dict[int, int]

    def dim_estimate(self, N: int) -> int:
        return self.states[N] - self.rank[N]


IN_BASE = 1 << 40   # in-cutoff coordinates sort after every out-of-cutoff one


class _Harvester:
    """Relation span per outer size, closed under the canonical letter action.

    Out-of-cutoff states get coordinates below ``IN_BASE`` so that echelon
    rows with an in-cutoff pivot span exactly the relations supported inside
    the cutoff.  Only those rows are pushed through further letters.
    """

    def __init__(self, fz: Fusion, cutoff: int, seed: int, outer: Optional[int] = None,
                 total: Optional[int] = None):
        if fz.Ma.numeric or fz.Mb.numeric:
            raise FusionError("harvest needs exact families")
        self.fz, self.cutoff, self.seed, self.total = fz, cutoff, seed, total
        self.point = sample_point(seed)
        self.vals = _point_mod(self.point)
        self.index: Dict[Canon, int] = {}
        self.state_at: Dict[int, Canon] = {}
        self.size_at: Dict[int, int] = {}
        self.states: Dict[int, List[Canon]] = {}
        top = 2 * cutoff if outer is None else min(outer, 2 * cutoff)
        for N in range(top + 1):
            sts = fz.canonical_states(N, cutoff, total)
            if sts:
                self.states[N] = sts
                for st in sts:
                    self._register(st, N, IN_BASE + len(self.index))
        if not self.states:
            raise FusionError(f"cutoff {cutoff} admits no sizes")
        self._n_out = 0
        self.spaces: Dict[int, ModSpace] = {}
        self.offered: Dict[int, int] = {N: 0 for N in self.states}
        self._cache: Dict[Tuple[Letter, int], Dict[int, int]] = {}
        self.queue: List[Dict[int, int]] = []

    def _register(self, st: Canon, N: int, idx: int) -> int:
        self.index[st] = idx
        self.state_at[idx] = st
        self.size_at[idx] = N
        return idx

    def _idx(self, st: Canon) -> int:
        idx = self.index.get(st)
        if idx is None:
            idx = self._register(st, self.fz.outer_size(st), self._n_out)
            self._n_out += 1
        return idx

    def to_mod(self, vec: CanonVector) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for st, k in vec.items():
            c = k.specialize_mod(self.vals, PRIME, I_MOD)
            if c:
                i = self._idx(st)
                out[i] = (out.get(i, 0) + c) % PRIME
        return {k: c for k, c in out.items() if c}

    def letter_mod(self, a: Letter, idx: int) -> Dict[int, int]:
        key = (a, idx)
        img = self._cache.get(key)
        if img is None:
            img = self._cache[key] = self.to_mod(self.fz.letter_on_state(a, self.state_at[idx]))
        return img

    def offer(self, vec: Dict[int, int]) -> None:
        if not vec:
            return
        N = self.size_at[next(iter(vec))]
        if N in self.offered:
            self.offered[N] += 1
        space = self.spaces.setdefault(N, ModSpace())
        red = space.reduce(vec)
        if not red:
            return
        space.add(red)
        if min(red) >= IN_BASE:
            self.queue.append(red)

    def rank(self, N: int) -> int:
        sp = self.spaces.get(N)
        return sum(1 for p in sp.rows if p >= IN_BASE) if sp else 0

    def close(self) -> None:
        while self.queue:
            vec = self.queue.pop()
            N = self.size_at[next(iter(vec))]
            letters = [C(N, j) for j in range(N)] if N >= 2 else []
            letters += [CD(N + 2, j) for j in range(N + 2)]
            for a in letters:
                if a.n_out not in self.states:
                    continue
                out: Dict[int, int] = {}
                for i, c in vec.items():
                    for i2, c2 in self.letter_mod(a, i).items():
                        out[i2] = (out.get(i2, 0) + c * c2) % PRIME
                self.offer({k: c for k, c in out.items() if c})

    def seed_generators(self) -> None:
        fz, cut = self.fz, self.cutoff
        reach = min(max(self.states), self.total if self.total is not None else 2 * cut)
        for Na in range(cut + 1):
            for Nb in range(cut + 1):
                if Na + Nb - 2 > reach:
                    continue    # every reduced term would leave the cutoff span
                if fz.Ma.admissible(Na) and fz.Mb.admissible(Nb):
                    for g in relation_generators(fz.Ma, fz.Mb, Na, Nb):
                        self.offer(self.to_mod(fz.reduce(g.expr)))

    def word_mod(self, w: Sequence[Letter], vec: Dict[int, int]) -> Dict[int, int]:
        for a in reversed(w):
            out: Dict[int, int] = {}
            for i, c in vec.items():
                for i2, c2 in self.letter_mod(a, i).items():
                    out[i2] = (out.get(i2, 0) + c * c2) % PRIME
            vec = {k: c for k, c in out.items() if c}
            if not vec:
                break
        return vec

    def seed_algebra(self) -> None:
        """Relations of the c-algebra applied to every in-cutoff canonical state."""
        top = max(self.states)
        b = beta().specialize_mod(self.vals, PRIME, I_MOD)
        for M in range(2, top + 3):
            for rel in relation_instances(M):
                n_in = rel.lhs[-1].n_in if rel.lhs else rel.rhs[-1].n_in
                if n_in not in self.states:
                    continue
                bk = pow(b, rel.rhs_beta, PRIME)
                for st in self.states[n_in]:
                    unit = {self.index[st]: 1}
                    out = dict(self.word_mod(rel.lhs, unit))
                    for i, c in self.word_mod(rel.rhs, unit).items():
                        out[i] = (out.get(i, 0) - bk * c) % PRIME
                    self.offer({k: c for k, c in out.items() if c})


def harvest(Ma: Family, Mb: Family, cutoff: int, seed: int = 0, algebra: bool = True,
            outer: Optional[int] = None, total: Optional[int] = None) -> HarvestReport:
    h = _Harvester(Fusion(Ma, Mb), cutoff, seed, outer, total)
    h.seed_generators()
    if algebra:
        h.seed_algebra()
    h.close()
    return HarvestReport(repr(Ma), repr(Mb), cutoff, seed,
                         {k: str(v) for k, v in h.point.items()},
                         {N: len(s) for N, s in h.states.items()},
                         dict(h.offered), {N: h.rank(N) for N in h.states})


def harvest_and_rank(Ma: Family, Mb: Family, N: int, cutoff: int, seed: int = 0,
                     total: Optional[int] = None, outer: Optional[int] = None) -> "RankReport":
    """Dimension estimate of (M_a x M_b)(N) and its stability when every bound grows by 2."""
    outer = N + 2 if outer is None else outer
    first = harvest(Ma, Mb, cutoff, seed, outer=outer, total=total)
    if N not in first.states:
        raise FusionError(f"cutoff {cutoff} admits no state of size {N}")
    grown = harvest(Ma, Mb, cutoff + 2, seed, outer=outer + 2,
                    total=None if total is None else total + 2)
    return RankReport(N=N, cutoff=cutoff, total=total, outer=outer, seed=seed,
                      states=first.states[N], relations=first.relations.get(N, 0),
                      rank=first.rank[N], dim_estimate=first.dim_estimate(N),
                      grown_estimate=grown.dim_estimate(N),
                      stable=first.dim_estimate(N) == grown.dim_estimate(N),
                      point=first.point)


@dataclass
class RankReport:
    N: int
    cutoff: int
    total: Optional[int]
    outer: int
    seed: int
    states: int
    relations: int
    rank: int
    dim_estimate: int
    grown_estimate: int
    stable: bool
    point: Dict[str, str]

    def to_json(self) -> dict:
        return dict(self.__dict__)


# -- the canonical span as a family ---------------------------------------------------------

class FusedFamily(Family):
    """Canonical pair states (n, u, v) with the letter action of the reduction tables.

    This is how triple products are reduced: (u x v x w) is read as ((u x v) x w).
    """

    def __init__(self, Ma: Family, Mb: Family):
        self.fz = Fusion(Ma, Mb)
        self.numeric = Ma.numeric or Mb.numeric

    def __repr__(self):
        return f"({self.fz.Ma!r} x {self.fz.Mb!r})"

    def __eq__(self, o):
        return isinstance(o, FusedFamily) and o.fz == self.fz

    def __hash__(self):
        return hash(("fused", self.fz))

    @property
    def parity(self):
        return (self.fz.Ma.parity + self.fz.Mb.parity) % 2

    def one(self):
        return self.fz.one()

    def coerce(self, k):
        return self.fz._coerce(k)

    def basis(self, N, bound=None):
        return self.fz.canonical_states(N, N if bound is None else bound)

    def dimension(self, N):
        raise FamilyError("fused dimensions are only estimated, see harvest_and_rank")

    def state_size(self, st):
        return self.fz.outer_size(st)

    def c_state(self, N, j, st):
        return self.fz.letter_on_state(C(N, j), st)

    def cdag_state(self, N, j, st):
        return self.fz.letter_on_state(CD(N, j), st)


# -- endomorphisms F ------------------------------------------------------------------------

def endo_F(fz: Fusion, which: str, barred: bool, vec: CanonVector) -> CanonVector:
    """F (or F-bar) inside the first factor (a), the second (b) or outside (ab)."""
    out: CanonVector = {}
    for (n, u, v), k in vec.items():
        Na, Nb = fz.sizes(u, v)
        if which == "a":
            img = _tensor(n, fz.Ma.act_diagram(dg.F(Na, barred), fz.Ma.unit(u)), fz.Mb.unit(v))
        elif which == "b":
            img = _tensor(n, fz.Ma.unit(u), fz.Mb.act_diagram(dg.F(Nb, barred), fz.Mb.unit(v)))
        elif which == "ab":
            img = fz.act_fused(dg.F(Na + Nb - 2 * n, barred), {(n, u, v): fz.one()})
        else:
            raise FusionError(f"unknown endomorphism {which!r}")
        for st, c in img.items():
            _add(out, st, k * c)
    return out


# -- maps between fused layers --------------------------------------------------------------

MAP_KINDS = ("swap", "swap_inv", "minus", "minus_inv", "reflect", "reflect_inv",
             "vacuum_phi", "vacuum_psi", "dual_phi", "dual_psi", "assoc_phi", "assoc_psi",
             "identity")


@dataclass
class FusionMap:
    """A linear map on fused states given term by term.

    ``target`` is a Fusion (images are reduced there), a Family (images are
    module vectors, compared exactly) or None (the free layer, no quotient).
    """

    kind: str
    source: object
    target: object
    term: Callable[..., dict]

    def apply(self, expr: dict) -> dict:
        out: dict = {}
        for key, k in expr.items():
            for key2, c in self.term(*key).items():
                _add(out, key2, k * c)
        return out

    def reduced_image(self, expr: dict) -> dict:
        img = self.apply(expr)
        if isinstance(self.target, Fusion):
            return self.target.reduce(img)
        return img


def _compose(d1: AnnularDiagram, d2: AnnularDiagram) -> Tuple[AnnularDiagram, Scalar]:
    return dg.compose(d1, d2)


def _omega_diagram(N: int, power: int) -> AnnularDiagram:
    return dg.identity(N) if power == 0 else dg.omega(N, power)


def swap_map(Ma: Family, Mb: Family) -> FusionMap:
    """lam (u x v) -> lam Omega^{N_b} (v x u)."""
    def term(lam, u, v):
        Nb = Mb.state_size(v)
        d, k = _compose(lam, _omega_diagram(lam.n_in, Nb))
        return {(d, v, u): k}
    return FusionMap("swap", Fusion(Ma, Mb), Fusion(Mb, Ma), term)


def swap_inverse(Ma: Family, Mb: Family) -> FusionMap:
    """lam (v x u) -> lam Omega^{-N_b} (u x v), from (M_b x M_a) back to (M_a x M_b)."""
    def term(lam, v, u):
        d, k = _compose(lam, _omega_diagram(lam.n_in, -Mb.state_size(v)))
        return {(d, u, v): k}
    return FusionMap("swap_inv", Fusion(Mb, Ma), Fusion(Ma, Mb), term)


def _sign(fam: Family, s: int) -> Scalar:
    return Scalar.numeric(s) if fam.numeric else Scalar.const(s)


def minus_map(Ma: Family, Mb: Family) -> FusionMap:
    """(M_a^- x M_b) -> (M_a x M_b)^-: lam (u x v) -> sigma(lam) lam (u x v)."""
    from .transform import TransformedFamily
    src = Fusion(TransformedFamily.of(Ma, "minus"), Mb)

    def term(lam, u, v):
        return {(lam, u, v): _sign(Ma, dg.sigma(lam))}
    return FusionMap("minus", src, Fusion(Ma, Mb), term)


def minus_inverse(Ma: Family, Mb: Family) -> FusionMap:
    from .transform import TransformedFamily

    def term(lam, u, v):
        return {(lam, u, v): _sign(Ma, dg.sigma(lam))}
    return FusionMap("minus_inv", Fusion(Ma, Mb), Fusion(TransformedFamily.of(Ma, "minus"), Mb), term)


def reflect_map(Ma: Family, Mb: Family) -> FusionMap:
    """(M_a^r x M_b^r) -> (M_b x M_a)^r: lam (u x v) -> R(lam) (v x u)."""
    from .transform import TransformedFamily
    src = Fusion(TransformedFamily.of(Ma, "reflect"), TransformedFamily.of(Mb, "reflect"))

    def term(lam, u, v):
        return {(dg.reflect(lam), v, u): ONE}
    return FusionMap("reflect", src, Fusion(Mb, Ma), term)


def reflect_inverse(Ma: Family, Mb: Family) -> FusionMap:
    from .transform import TransformedFamily
    tgt = Fusion(TransformedFamily.of(Ma, "reflect"), TransformedFamily.of(Mb, "reflect"))

    def term(lam, v, u):
        return {(dg.reflect(lam), u, v): ONE}
    return FusionMap("reflect_inv", Fusion(Mb, Ma), tgt, term)


def vacuum_embedding(Na: int, chords) -> AnnularDiagram:
    """id_{N_a} (x) lam_b, where lam_b v_0 is the vacuum state with the given chords."""
    Nb = 2 * len(chords)
    return AnnularDiagram(Na + Nb, Na, Na, 0, tuple(sorted(i + Na for i, _ in chords)), ())


def vacuum_phi(M: Family) -> FusionMap:
    """(M x V) -> M: lam (u x lam_b v_0) -> lam (id (x) lam_b) u."""
    from .families import Vacuum

    def term(lam, u, v):
        d, k = _compose(lam, vacuum_embedding(M.state_size(u), v))
        return vec_scale(M.act_diagram(d, M.unit(u)), M.coerce(k))
    return FusionMap("vacuum_phi", Fusion(M, Vacuum()), M, term)


def vacuum_psi(M: Family) -> FusionMap:
    """M -> (M x V): u -> u x v_0.  Source keys are 1-tuples (u,)."""
    from .families import Vacuum
    fz = Fusion(M, Vacuum())

    def term(u):
        return {(0, u, ()): fz.one()}
    return FusionMap("vacuum_psi", M, fz, term)


def check_vacuum_psi(M: Family, u) -> Dict[Letter, str]:
    """psi(a . u) against a . psi(u) for every letter a, compared in reduced form and through phi."""
    from .families import Vacuum
    fz = Fusion(M, Vacuum())
    phi = vacuum_phi(M)
    N = M.state_size(u)
    letters = [C(N, j) for j in range(N)] if N >= 2 else []
    letters += [CD(N + 2, j) for j in range(N + 2)]
    out = {}
    for a in letters:
        lhs = {(0, st, ()): c for st, c in M.act_letter(a, M.unit(u)).items()}
        rhs = fz.act_letter(a, {(0, u, ()): fz.one()})
        if vec_equal_exact(lhs, rhs):
            out[a] = "pass"
        else:
            through = vec_sub(phi.apply(fz.canonical_to_fused(lhs)), phi.apply(fz.canonical_to_fused(rhs)))
            out[a] = "pass" if not through else "fail"
    return out


def vec_equal_exact(a: dict, b: dict) -> bool:
    return not vec_sub(a, b)


# -- dual fusion ----------------------------------------------------------------------------

class DualGenerator(NamedTuple):
    label: str
    j: int
    u: Hashable
    v: Hashable
    expr: Dict[Tuple[Hashable, AnnularDiagram, Hashable], Scalar]   # (u, lam, v) -> coef


def _c_chain(lo: int, hi: int, top: int) -> Word:
    """c_lo c_{lo+1} ... c_hi with c_hi acting first at size ``top``."""
    word = []
    size = top
    for j in range(hi, lo - 1, -1):
        word.insert(0, C(size, j))
        size -= 2
    return tuple(word)


def dual_phi(Ma: Family, Mb: Family) -> FusionMap:
    """u^dag (lam x v) -> lam^dag c_{N_a-N_b+1} ... c_{N_a} (u x v^r), into (M_a x M_b^r)."""
    from .transform import TransformedFamily
    from .word import word_to_diagram
    tgt = Fusion(Ma, TransformedFamily.of(Mb, "reflect"))

    def term(u, lam, v):
        Na, Nb = Ma.state_size(u), Mb.state_size(v)
        chain = _c_chain(Na - Nb + 1, Na, Na + Nb)
        d0, k0 = word_to_diagram(chain) if chain else (dg.identity(Na), ONE)
        d, k = _compose(dg.adjoint(lam), d0)
        return {(d, u, v): k * k0}
    return FusionMap("dual_phi", ("dual", Ma, Mb), tgt, term)


def dual_psi(Ma: Family, Mb: Family) -> FusionMap:
    """lam (u x v^r) -> (c_{N_a+1} ... c_{N_a+N_b})^dag-image of u, then lam^dag and v."""
    from .transform import TransformedFamily
    src = Fusion(Ma, TransformedFamily.of(Mb, "reflect"))

    def term(lam, u, v):
        Na, Nb = Ma.state_size(u), Mb.state_size(v)
        word = tuple(CD(Na + 2 * k, Na + k) for k in range(Nb, 0, -1))
        out = {}
        for u2, c in Ma.act_word(word, Ma.unit(u)).items():
            _add(out, (u2, dg.adjoint(lam), v), c)
        return out
    return FusionMap("dual_psi", src, ("dual", Ma, Mb), term)


def dual_generators(Ma: Family, Mb: Family, Na: int, Nb: int) -> List[DualGenerator]:
    """The relations tying u^dag (lam x v) for u in M_a(N_a), v in M_b(N_b), N_a >= N_b."""
    if not (Ma.admissible(Na) and Mb.admissible(Nb)) or Na < Nb:
        raise FusionError(f"sizes ({Na}, {Nb}) not admissible for the dual product")
    D = Na - Nb
    out: List[DualGenerator] = []
    for u in Ma.basis(Na):
        for v in Mb.basis(Nb):
            uu, vv = Ma.unit(u), Mb.unit(v)

            def gen(label, j, left_u, left_lam, right):
                e = {}
                for u2, k in left_u.items():
                    _add(e, (u2, left_lam, v), k)
                for key, k in right.items():
                    _add(e, key, -k)
                out.append(DualGenerator(label, j, u, v, e))

            for j in range(1, D + 2):
                gen("a", j, Ma.act_cdag(Na + 2, j, uu), dg.identity(D + 2), {(u, dg.c(D + 2, j), v): ONE})
            for j in range(1, Nb):
                right = {(u, dg.identity(D + 2), v2): k for v2, k in Mb.act_c(Nb, j, vv).items()}
                gen("b", j, Ma.act_cdag(Na + 2, D + j + 2, uu), dg.identity(D + 2), right)
            for j in range(1, D):
                gen("c", j, Ma.act_c(Na, j, uu), dg.identity(D - 2), {(u, dg.cdag(D, j), v): ONE})
            if D >= 2:
                for j in range(1, Nb + 2):
                    right = {(u, dg.identity(D - 2), v2): k for v2, k in Mb.act_cdag(Nb + 2, j, vv).items()}
                    gen("d", j, Ma.act_c(Na, D + j - 2, uu), dg.identity(D - 2), right)
            if D > 0:
                right = {}
                for u2, k in Ma.act_cdag(Na + 2, D, uu).items():
                    for v2, k2 in Mb.act_cdag(Nb + 2, 0, vv).items():
                        _add(right, (u2, dg.omega(D), v2), k * k2)
                gen("e", 0, Ma.act_word(omega_word(Na, -1), uu), dg.identity(D), right)
    return out


# -- two-hole diagrams ---------------------------------------------------------------------

def two_hole_normal_form(expr: dict) -> CanonVector:
    """Reduce a combination of lam (lam_a x lam_b) through (L_{N_a} x L_{N_b}).

    ``expr`` maps (lam, lam_a, lam_b) to coefficients, every lam_a with inner
    size N_a and every lam_b with inner size N_b.  The result is keyed by
    (n, lam_a', lam_b'), read as c_0^n (lam_a' x lam_b').
    """
    from .families import Regular
    if not expr:
        return {}
    inner = {(la.n_in, lb.n_in) for _, la, lb in expr}
    if len(inner) != 1:
        raise FusionError(f"mixed hole sizes {sorted(inner)}")
    (Na, Nb), = inner
    for lam, la, lb in expr:
        if lam.n_in != la.n_out + lb.n_out:
            raise FusionError(f"{lam!r} does not take a pair of outer sizes ({la.n_out}, {lb.n_out})")
    return Fusion(Regular(Na), Regular(Nb)).reduce(expr)


# -- rho / r and triple products ------------------------------------------------------------

def rho_r(word: Sequence[Letter], n_first: int, n_second: int) -> Tuple[Word, int]:
    """rho(lam) and r(lam) for a word acting on the first factor.

    ``n_first`` is the size the rightmost letter acts on, ``n_second`` the size
    of the second factor before the r extra c_0^dag are applied to it.  The
    returned word acts on sizes n_first + n_second + 2r.
    """
    word = tuple(word)
    if word and word[-1].n_in != n_first:
        raise FusionError(f"word acts on size {word[-1].n_in}, not {n_first}")
    r = sum(1 for a in word if a.j == 0)
    m, nb = n_first, n_second + 2 * r
    out: List[Letter] = []
    for a in reversed(word):
        if a.n_in != m:
            raise FusionError("inconsistent sizes in word")
        if a.kind == "c" and a.j:
            piece = (C(m + nb, a.j),)
            m -= 2
        elif a.kind == "cd" and a.j:
            piece = (CD(m + 2 + nb, a.j),)
            m += 2
        elif a.kind == "c":
            piece = (C(m + nb - 2, 0), C(m + nb, m))
            m, nb = m - 2, nb - 2
        else:
            piece = omega_word(m + nb, -1)
            m, nb = m + 2, nb - 2
        out[:0] = piece
    return tuple(out), r


class Triple:
    """Reduction of triple products through the nesting (u x v x w) = ((u x v) x w)."""

    def __init__(self, Ma: Family, Mb: Family, Mc: Family):
        self.Ma, self.Mb, self.Mc = Ma, Mb, Mc
        self.P = FusedFamily(Ma, Mb)
        self.fz = Fusion(self.P, Mc)

    def sizes(self, u, v, w) -> Tuple[int, int, int]:
        return self.Ma.state_size(u), self.Mb.state_size(v), self.Mc.state_size(w)

    def start(self, us: Vector, vs: Vector, ws: Vector) -> CanonVector:
        out: CanonVector = {}
        for u, a in us.items():
            for v, b in vs.items():
                for w, c in ws.items():
                    _add(out, (0, (0, u, v), w), a * b * c)
        return out

    def reduce_word(self, word: Sequence[Letter], us: Vector, vs: Vector, ws: Vector) -> CanonVector:
        return self.fz.act_word(tuple(word), self.start(us, vs, ws))

    def reduce(self, expr: dict) -> CanonVector:
        """expr maps (lam, u, v, w) to coefficients; lam is a diagram or a word."""
        out: CanonVector = {}
        for (lam, u, v, w), k in expr.items():
            word = diagram_to_word(lam) if isinstance(lam, AnnularDiagram) else tuple(lam)
            unit = self.start(self.Ma.unit(u), self.Mb.unit(v), self.Mc.unit(w))
            for st, c in self.fz.act_word(word, unit).items():
                _add(out, st, self.fz._coerce(k) * c)
        return out


def triple_reduce(expr: dict, Ma: Family, Mb: Family, Mc: Family) -> CanonVector:
    return Triple(Ma, Mb, Mc).reduce(expr)


def _cdag0_power(fam: Family, w: Vector, r: int) -> Vector:
    for _ in range(r):
        if not w:
            break
        N = fam.state_size(next(iter(w)))
        w = fam.act_cdag(N + 2, 0, w)
    return w


def _words(n_in: int, max_len: int) -> List[Word]:
    """All words of length <= max_len whose rightmost letter acts on size n_in."""
    out: List[Word] = [()]
    frontier: List[Word] = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            top = w[0].n_out if w else n_in
            cands = [C(top, j) for j in range(top)] if top >= 2 else []
            cands += [CD(top + 2, j) for j in range(top + 2)]
            nxt.extend((a,) + w for a in cands)
        out.extend(nxt)
        frontier = nxt
    return out


class AssocInstance(NamedTuple):
    label: str
    word: Word
    j: int
    lhs: CanonVector
    rhs: CanonVector


def assoc_instances(Ma: Family, Mb: Family, Mc: Family, u, v, w, max_len: int = 2) -> Iterable[AssocInstance]:
    """Both sides of every phi(X1) = 0 and phi(X2) = 0 condition, triple-reduced.

    The letters X1 and X2 refer to the two families of associativity
    conditions: a generator of (M_a x M_b) under a word lam, and a generator
    of ((M_a x M_b) x M_c) whose first factor is lam (u x v).
    """
    T = Triple(Ma, Mb, Mc)
    Na, Nb, Nc = T.sizes(u, v, w)
    Nab = Na + Nb
    uu, vv, ww = Ma.unit(u), Mb.unit(v), Mc.unit(w)

    def side(word, us, vs, ws):
        if not (us and vs and ws):
            return {}
        n_first = Ma.state_size(next(iter(us))) + Mb.state_size(next(iter(vs)))
        rho, r = rho_r(word, n_first, Nc)
        return T.reduce_word(rho, us, vs, _cdag0_power(Mc, ws, r))

    # first set: lam X^alpha_j(u, v) inside the first factor
    for j in range(1, Na):
        for lam in _words(Nab - 2, max_len):
            yield AssocInstance("X1a", lam, j, side(lam + (C(Nab, j),), uu, vv, ww),
                                side(lam, Ma.act_c(Na, j, uu), vv, ww))
    for j in range(1, Nb):
        for lam in _words(Nab - 2, max_len):
            yield AssocInstance("X1b", lam, j, side(lam + (C(Nab, Na + j),), uu, vv, ww),
                                side(lam, uu, Mb.act_c(Nb, j, vv), ww))
    for j in range(1, Na + 2):
        for lam in _words(Nab + 2, max_len):
            yield AssocInstance("X1c", lam, j, side(lam + (CD(Nab + 2, j),), uu, vv, ww),
                                side(lam, Ma.act_cdag(Na + 2, j, uu), vv, ww))
    for j in range(1, Nb + 2):
        for lam in _words(Nab + 2, max_len):
            yield AssocInstance("X1d", lam, j, side(lam + (CD(Nab + 2, Na + j),), uu, vv, ww),
                                side(lam, uu, Mb.act_cdag(Nb + 2, j, vv), ww))
    if Na > 0:
        for lam in _words(Nab, max_len):
            yield AssocInstance("X1e", lam, 0, side(lam + omega_word(Nab), uu, vv, ww),
                                side(lam + (C(Nab + 2, Na),), Ma.act_word(omega_word(Na), uu),
                                     Mb.act_cdag(Nb + 2, 0, vv), ww))
    # second set: generators of ((M_a x M_b) x M_c) with first factor lam (u x v)
    for lam in _words(Nab, max_len):
        top = lam[0].n_out if lam else Nab
        rho, r = rho_r(lam, Nab, Nc)
        base = T.reduce_word(rho, uu, vv, _cdag0_power(Mc, ww, r))
        for j in range(1, top):
            yield AssocInstance("X2a", lam, j, T.fz.act_letter(C(top + Nc, j), base),
                                side((C(top, j),) + lam, uu, vv, ww))
        for j in range(1, Nc):
            yield AssocInstance("X2b", lam, j, T.fz.act_letter(C(top + Nc, top + j), base),
                                T.reduce_word(rho_r(lam, Nab, Nc - 2)[0], uu, vv,
                                              _cdag0_power(Mc, Mc.act_c(Nc, j, ww), r)))
        for j in range(1, top + 2):
            yield AssocInstance("X2c", lam, j, T.fz.act_letter(CD(top + Nc + 2, j), base),
                                side((CD(top + 2, j),) + lam, uu, vv, ww))
        for j in range(1, Nc + 2):
            yield AssocInstance("X2d", lam, j, T.fz.act_letter(CD(top + Nc + 2, top + j), base),
                                T.reduce_word(rho_r(lam, Nab, Nc + 2)[0], uu, vv,
                                              _cdag0_power(Mc, Mc.act_cdag(Nc + 2, j, ww), r)))
        if top > 0:
            lhs = T.fz.act_word(omega_word(top + Nc), base)
            rho2, r2 = rho_r(omega_word(top) + lam, Nab, Nc + 2)
            rhs = T.fz.act_word((C(top + Nc + 2, top),) + rho2,
                                T.start(uu, vv, _cdag0_power(Mc, ww, r2 + 1)))
            yield AssocInstance("X2e", lam, 0, lhs, rhs)



def assoc_psi(Ma: Family, Mb: Family, Mc: Family) -> FusionMap:
    """lam (u x v x w) -> lam ((u x v) x w)."""
    T = Triple(Ma, Mb, Mc)

    def term(lam, u, v, w):
        return {(lam, (0, u, v), w): T.fz.one()}
    return FusionMap("assoc_psi", ("triple", Ma, Mb, Mc), T.fz, term)


def assoc_phi(Ma: Family, Mb: Family, Mc: Family) -> FusionMap:
    """lam ((c_0^n (u x v)) x w) -> lam rho(c_0^n) (u x v x (c_0^dag)^r w), images as triple keys."""
    from .word import word_to_diagram
    T = Triple(Ma, Mb, Mc)

    def term(lam, p, w):
        n, u, v = p
        Nab = Ma.state_size(u) + Mb.state_size(v)
        inner = tuple(C(Nab - 2 * m, 0) for m in range(n - 1, -1, -1))
        rho, r = rho_r(inner, Nab, Mc.state_size(w))
        d0, k0 = word_to_diagram(rho) if rho else (dg.identity(lam.n_in), ONE)
        d, k = _compose(lam, d0)
        return {(d, u, v, w2): k * k0 * c for w2, c in _cdag0_power(Mc, Mc.unit(w), r).items()}
    return FusionMap("assoc_phi", T.fz, ("triple", Ma, Mb, Mc), term)


def witness_map(kind: str, *families: Family) -> FusionMap:
    """Look up a map by name; the families are the factors of its source."""
    table = {"swap": swap_map, "swap_inv": swap_inverse, "minus": minus_map,
             "minus_inv": minus_inverse, "reflect": reflect_map, "reflect_inv": reflect_inverse,
             "vacuum_phi": vacuum_phi, "vacuum_psi": vacuum_psi, "dual_phi": dual_phi,
             "dual_psi": dual_psi, "assoc_phi": assoc_phi, "assoc_psi": assoc_psi,
             "identity": identity_control}
    if kind not in table:
        raise FusionError(f"unsupported map kind {kind!r}")
    return table[kind](*families)


# -- verdicts -------------------------------------------------------------------------------

class RelationSpan:
    """Harvested relations of a fused product, usable as a membership oracle at a sample point."""

    def __init__(self, fz: Fusion, cutoff: int, seed: int = 0, total: Optional[int] = None,
                 outer: Optional[int] = None):
        self.h = _Harvester(fz, cutoff, seed, outer, total)
        self.h.seed_generators()
        self.h.seed_algebra()
        self.h.close()

    def contains(self, vec: CanonVector) -> Optional[bool]:
        """True/False for vectors supported inside the cutoff, None otherwise."""
        h = self.h
        if any(st not in h.index or h.index[st] < IN_BASE for st in vec):
            return None
        mod = h.to_mod(vec)
        if not mod:
            return True
        space = h.spaces.get(h.size_at[next(iter(mod))])
        return not (space.reduce(mod) if space else mod)


class Verdict(NamedTuple):
    status: str                 # "pass", "fail" or "inconclusive"
    residual: dict
    in_span: Optional[bool] = None


def check_annihilates(fmap: FusionMap, gen, span: Optional[RelationSpan] = None) -> Verdict:
    """Does the map send the relation generator to zero?

    "pass" means the image reduces to exactly 0.  With an exact target (a
    family, or the free layer) a nonzero image is a definite "fail".  With a
    fused target a nonzero canonical residue is "inconclusive", because the
    canonical reduction is not a normal form; ``span`` then adds a generic-point
    certificate of whether the residue lies in the harvested relations.
    """
    expr = gen.expr if hasattr(gen, "expr") else gen
    res = fmap.reduced_image(expr)
    if not res:
        return Verdict("pass", res, True)
    if not isinstance(fmap.target, Fusion):
        return Verdict("fail", res, False)
    return Verdict("inconclusive", res, span.contains(res) if span is not None else None)


def identity_control(Ma: Family, Mb: Family) -> FusionMap:
    """The identity into the free layer: it cannot kill any nonzero generator."""
    return FusionMap("identity", Fusion(Ma, Mb), None, lambda lam, u, v: {(lam, u, v): ONE})


def naive_swap(Ma: Family, Mb: Family) -> FusionMap:
    """lam (u x v) -> lam (v x u), the swap without its rotation."""
    return FusionMap("naive_swap", Fusion(Ma, Mb), Fusion(Mb, Ma), lambda lam, u, v: {(lam, v, u): ONE})


# -- compatibility of the reduction with composition ---------------------------------------

def words_from(n_in: int, max_len: int) -> List[Word]:
    """Every word of length <= max_len whose rightmost letter acts on size n_in."""
    return _words(n_in, max_len)


def _diagram_classes(n_in: int, max_len: int) -> Dict[AnnularDiagram, int]:
    """Distinct diagrams of the words from n_in, with how many words give each."""
    from .word import word_to_diagram
    out: Dict[AnnularDiagram, int] = {}
    for w in _words(n_in, max_len):
        if not w:
            d = dg.identity(n_in)
        else:
            d, _ = word_to_diagram(w)
        out[d] = out.get(d, 0) + 1
    return out


@dataclass
class CompatibilityReport:
    left: str
    right: str
    max_len: int
    max_size: int
    word_pairs: int          # (lam', lam, s) triples covered, counted with word multiplicity
    diagram_pairs: int       # distinct (lam', lam, s) up to the scalar carried by words
    reductions: int
    defects: int             # distinct pairs with reduce(lam' . reduce(lam . s)) != reduce(lam' lam . s)
    defect_word_pairs: int
    bound_violations: int
    examples: List[tuple]


def compatibility_suite(Ma: Family, Mb: Family, max_len: int = 3, max_size: int = 2,
                        keep: int = 5) -> CompatibilityReport:
    """Exhaustive check of reduce(lam' . reduce(lam . s)) = reduce((lam' lam) . s).

    Words differing only by a power of beta give the same check up to that
    scalar, so pairs are taken over the diagrams the words produce.
    """
    fz = Fusion(Ma, Mb)
    classes: Dict[int, Dict[AnnularDiagram, int]] = {}

    def cls(n):
        if n not in classes:
            classes[n] = _diagram_classes(n, max_len)
        return classes[n]

    word_pairs = pairs = reductions = defects = defect_words = violations = 0
    examples: List[tuple] = []
    for Na in range(max_size + 1):
        for Nb in range(max_size + 1):
            if not (Ma.admissible(Na) and Mb.admissible(Nb)):
                continue
            for u in Ma.basis(Na):
                for v in Mb.basis(Nb):
                    for d, mult in cls(Na + Nb).items():
                        try:
                            first = fz.reduce({(d, u, v): fz.one()})
                        except FusionBoundError:
                            violations += 1
                            continue
                        reductions += 1
                        for d2, mult2 in cls(d.n_out).items():
                            d12, k = dg.compose(d2, d)
                            try:
                                lhs = fz.act_fused(d2, first)
                                rhs = fz.reduce({(d12, u, v): fz._coerce(k)})
                            except FusionBoundError:
                                violations += 1
                                continue
                            reductions += 2
                            pairs += 1
                            word_pairs += mult * mult2
                            if vec_sub(lhs, rhs):
                                defects += 1
                                defect_words += mult * mult2
                                if len(examples) < keep:
                                    examples.append((d2, d, u, v, lhs, rhs))
    return CompatibilityReport(repr(Ma), repr(Mb), max_len, max_size, word_pairs, pairs,
                               reductions, defects, defect_words, violations, examples)
