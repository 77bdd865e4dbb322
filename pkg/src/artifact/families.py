"""Families of modules over the diagram spaces L(N', N).

Five concrete kinds are provided: link-state families ``Wk`` (unbounded
winding), ``Wkx`` (twisted), the vacuum ``Vacuum``, the XXZ spin chain and
the RSOS height models.  Every family exposes the action of single letters;
the action of diagrams and words is derived from it.

Vectors are plain dicts ``{state: Scalar}`` with zero entries dropped.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import diagram as dg
from .coeff import ONE, QI, S, U, X1, ZERO, Scalar, as_scalar, beta, evaluate
from .diagram import AnnularDiagram
from .word import Letter, diagram_to_word, word_sizes

Vector = Dict[Hashable, Scalar]


class FamilyError(ValueError):
    pass


def vec_add(acc: Vector, state, coef: Scalar) -> None:
    if coef.is_zero():
        return
    old = acc.get(state)
    new = coef if old is None else old + coef
    if new.is_zero():
        acc.pop(state, None)
    else:
        acc[state] = new


def vec_scale(v: Vector, k: Scalar) -> Vector:
    out: Vector = {}
    for st, c in v.items():
        vec_add(out, st, c * k)
    return out


def vec_sum(*vs: Vector) -> Vector:
    out: Vector = {}
    for v in vs:
        for st, c in v.items():
            vec_add(out, st, c)
    return out


def vec_equal(a: Vector, b: Vector) -> bool:
    return all((a.get(k, ZERO if not _numeric(a, b) else Scalar.numeric(0))
                - b.get(k, ZERO if not _numeric(a, b) else Scalar.numeric(0))).is_zero()
               for k in set(a) | set(b))


def _numeric(a: Vector, b: Vector) -> bool:
    for v in (a, b):
        for c in v.values():
            return c.is_numeric
    return False


def vec_max_dev(a: Vector, b: Vector) -> float:
    """Largest absolute coefficient difference (numeric vectors)."""
    dev = 0.0
    for k in set(a) | set(b):
        x = a[k].value if k in a else 0j
        y = b[k].value if k in b else 0j
        dev = max(dev, abs(x - y))
    return dev


@dataclass(frozen=True)
class ModuleVector:
    family: "Family"
    size: int
    coeffs: Tuple[Tuple[Hashable, Scalar], ...]

    @classmethod
    def of(cls, family, size, v: Vector) -> "ModuleVector":
        return cls(family, size, tuple(sorted(v.items(), key=lambda kv: repr(kv[0]))))

    def as_dict(self) -> Vector:
        return dict(self.coeffs)


class Family:
    """Base class: subclasses implement basis, act_c and act_cdag on single states."""

    numeric = False
    link_states = False

    @property
    def parity(self) -> int:
        raise NotImplementedError

    def admissible(self, N: int) -> bool:
        return N >= 0 and N % 2 == self.parity

    def beta(self) -> Scalar:
        return beta()

    def zero_scalar(self) -> Scalar:
        return Scalar.numeric(0) if self.numeric else ZERO

    def one(self) -> Scalar:
        return Scalar.numeric(1) if self.numeric else ONE

    def basis(self, N: int, bound: Optional[int] = None) -> list:
        raise NotImplementedError

    def dimension(self, N: int):
        raise NotImplementedError

    def state_size(self, st) -> int:
        raise NotImplementedError

    def c_state(self, N: int, j: int, st) -> Vector:
        raise NotImplementedError

    def cdag_state(self, N: int, j: int, st) -> Vector:
        raise NotImplementedError

    # -- derived actions ---------------------------------------------------
    def _check(self, N: int, j: int):
        if not self.admissible(N):
            raise FamilyError(f"size {N} not admissible for {self}")
        if N < 2 or not 0 <= j <= N - 1:
            raise FamilyError(f"index {j} out of range at size {N}")

    def act_c(self, N: int, j: int, v: Vector) -> Vector:
        """c_{N,j}: M(N) -> M(N-2)."""
        self._check(N, j)
        out: Vector = {}
        for st, k in v.items():
            for st2, k2 in self.c_state(N, j, st).items():
                vec_add(out, st2, k * k2)
        return out

    def act_cdag(self, N: int, j: int, v: Vector) -> Vector:
        """c^dag_{N,j}: M(N-2) -> M(N)."""
        self._check(N, j)
        out: Vector = {}
        for st, k in v.items():
            for st2, k2 in self.cdag_state(N, j, st).items():
                vec_add(out, st2, k * k2)
        return out

    def act_letter(self, a: Letter, v: Vector) -> Vector:
        if a.kind == "c":
            return self.act_c(a.size, a.j, v)
        return self.act_cdag(a.size, a.j, v)

    def act_word(self, w: Sequence[Letter], v: Vector) -> Vector:
        """The rightmost letter acts first."""
        for a in reversed(w):
            v = self.act_letter(a, v)
            if not v:
                break
        return v

    def act_diagram(self, lam, v: Vector) -> Vector:
        """Action of a diagram or a weighted sum of diagrams, via canonical words."""
        if isinstance(lam, AnnularDiagram):
            return self.act_word(diagram_to_word(lam), v)
        out: Vector = {}
        for d, k in lam.items():
            for st, c in self.act_word(diagram_to_word(d), v).items():
                vec_add(out, st, self.coerce(k) * c)
        return out

    def coerce(self, k: Scalar) -> Scalar:
        return k

    def unit(self, st) -> Vector:
        return {st: self.one()}


# -- link-state families -----------------------------------------------------------------------

class _LinkFamily(Family):
    link_states = True

    def __init__(self, k2: int):
        if k2 < 0:
            raise FamilyError("k must be nonnegative")
        self.k2 = k2

    @property
    def parity(self) -> int:
        return self.k2 % 2

    def admissible(self, N):
        return N >= self.k2 and N % 2 == self.parity

    def state_diagram(self, st) -> AnnularDiagram:
        raise NotImplementedError

    def from_diagram(self, d: AnnularDiagram, loops: int) -> Vector:
        raise NotImplementedError

    def _apply(self, g: AnnularDiagram, st) -> Vector:
        d, loops = dg.compose_loops(g, self.state_diagram(st))
        return self.from_diagram(d, loops)

    def c_state(self, N, j, st):
        return self._apply(dg.c(N, j), st)

    def cdag_state(self, N, j, st):
        return self._apply(dg.cdag(N, j), st)

    def act_diagram_direct(self, lam, v: Vector) -> Vector:
        """Act by composing with the state diagrams directly (no word factorization)."""
        items = [(lam, ONE)] if isinstance(lam, AnnularDiagram) else list(lam.items())
        out: Vector = {}
        for d, k in items:
            for st, c in v.items():
                for st2, c2 in self._apply(d, st).items():
                    vec_add(out, st2, k * c * c2)
        return out


class Wk(_LinkFamily):
    """Link states with 2k defects and free winding; states are (tuple, winding)."""

    def __repr__(self):
        return f"Wk(k={_khalf(self.k2)})"

    def __eq__(self, o):
        return type(o) is Wk and o.k2 == self.k2

    def __hash__(self):
        return hash(("Wk", self.k2))

    def state_diagram(self, st):
        tup, w = st
        return AnnularDiagram(len(tup) * 2 + self.k2, self.k2, self.k2, w, tup, ())

    def from_diagram(self, d, loops):
        if d.b < self.k2:
            return {}
        return {(d.out, d.l): beta() ** loops}

    def state_size(self, st):
        return 2 * len(st[0]) + self.k2

    def basis(self, N, bound=None):
        bound = 2 if bound is None else bound
        ls = range(0, bound + 1) if self.k2 == 0 else range(-bound, bound + 1)
        return [(t, l) for t in dg.tuples(N, self.k2) for l in ls]

    def dimension(self, N):
        return math.inf


class Wkx(_LinkFamily):
    """Standard modules with twist x; states are opener tuples."""

    def __init__(self, k2: int, twist: Scalar = X1, label: str = "x1"):
        super().__init__(k2)
        self.twist = twist
        self.label = label

    def __repr__(self):
        return f"Wkx(k={_khalf(self.k2)},x={self.label})"

    def __eq__(self, o):
        return type(o) is Wkx and (o.k2, o.twist) == (self.k2, self.twist)

    def __hash__(self):
        return hash(("Wkx", self.k2, self.twist))

    @property
    def gamma(self) -> Scalar:
        return self.twist + self.twist.inverse() if self.k2 == 0 else self.twist

    def state_diagram(self, st):
        return AnnularDiagram(2 * len(st) + self.k2, self.k2, self.k2, 0, st, ())

    def from_diagram(self, d, loops):
        if d.b < self.k2:
            return {}
        return {d.out: beta() ** loops * self.gamma ** d.l}

    def state_size(self, st):
        return 2 * len(st) + self.k2

    def basis(self, N, bound=None):
        return dg.tuples(N, self.k2)

    def dimension(self, N):
        return dg.basis_count(N, self.k2) if self.admissible(N) else 0


class Regular(_LinkFamily):
    """L_{N0}: states are the diagrams of L(N, N0) themselves, acted on by composition."""

    def __init__(self, n0: int):
        if n0 < 0:
            raise FamilyError("inner size must be nonnegative")
        super().__init__(n0 % 2)
        self.n0 = n0

    def __repr__(self):
        return f"Regular({self.n0})"

    def __eq__(self, o):
        return type(o) is Regular and o.n0 == self.n0

    def __hash__(self):
        return hash(("Regular", self.n0))

    def admissible(self, N):
        return N >= 0 and N % 2 == self.parity

    def state_diagram(self, st):
        return st

    def from_diagram(self, d, loops):
        return {d: beta() ** loops}

    def state_size(self, st):
        return st.n_out

    def basis(self, N, bound=None):
        """Diagrams of L(N, N0), windings cut at |l| <= bound (default 1)."""
        bound = 1 if bound is None else bound
        out = []
        for b in range(N % 2, min(N, self.n0) + 1, 2):
            out += dg.enumerate_basis(N, self.n0, b, range(-bound, bound + 1))
        return out

    def dimension(self, N):
        return math.inf


class Vacuum(_LinkFamily):
    """Non-crossing perfect matchings on a disc; every closed loop weighs beta."""

    def __init__(self):
        super().__init__(0)

    def __repr__(self):
        return "Vacuum"

    def __eq__(self, o):
        return type(o) is Vacuum

    def __hash__(self):
        return hash("Vacuum")

    def state_diagram(self, st):
        n = 2 * len(st)
        return AnnularDiagram(n, 0, 0, 0, tuple(sorted(i for i, _ in st)), ())

    @staticmethod
    def chords_of(n: int, tup) -> Tuple[Tuple[int, int], ...]:
        arches, _ = dg.complete_tuple(n, tup)
        return tuple(sorted((min(i, j), max(i, j)) for i, j in arches))

    def from_diagram(self, d, loops):
        return {self.chords_of(d.n_out, d.out): beta() ** (loops + d.l)}

    def state_size(self, st):
        return 2 * len(st)

    def basis(self, N, bound=None):
        if N % 2:
            return []
        return sorted({self.chords_of(N, t) for t in dg.tuples(N, 0)})

    def dimension(self, N):
        return math.comb(N, N // 2) // (N // 2 + 1) if N % 2 == 0 else 0


def _khalf(k2: int) -> str:
    return str(k2 // 2) if k2 % 2 == 0 else f"{k2}/2"


# -- XXZ spin chain ------------------------------------------------------------------------------

_I = Scalar({(0, 0, 0, 0): QI(0, 1)})
_C_ROW = {("+", "-"): _I * S, ("-", "+"): -_I * S.inverse()}


class XXZ(Family):
    """Spin chain on (C^2)^N with twist variable u; m2 = 2 S^z or None for all sectors."""

    def __init__(self, m2: Optional[int] = 0, twist: Scalar = U, label: str = "u"):
        self.m2 = m2
        self.twist = twist
        self.label = label

    def __repr__(self):
        m = "all" if self.m2 is None else _khalf(self.m2) if self.m2 >= 0 else "-" + _khalf(-self.m2)
        return f"XXZ(m={m},u={self.label})"

    def __eq__(self, o):
        return type(o) is XXZ and (o.m2, o.twist) == (self.m2, self.twist)

    def __hash__(self):
        return hash(("XXZ", self.m2, self.twist))

    @property
    def parity(self):
        return 0 if self.m2 is None else abs(self.m2) % 2

    def admissible(self, N):
        if self.m2 is None:
            return N >= 0
        return N >= abs(self.m2) and (N - self.m2) % 2 == 0

    def state_size(self, st):
        return len(st)

    def basis(self, N, bound=None):
        out = []
        for bits in product("+-", repeat=N):
            if self.m2 is None or bits.count("+") - bits.count("-") == self.m2:
                out.append("".join(bits))
        return out

    def dimension(self, N):
        if self.m2 is None:
            return 2 ** N
        if not self.admissible(N):
            return 0
        return math.comb(N, (N - self.m2) // 2)

    def _phase(self, spin: str, sign: int) -> Scalar:
        return self.twist ** (sign if spin == "+" else -sign)

    def c_state(self, N, j, st):
        if j == 0:
            # c_0 = c_1 Omega^-1
            a, b = st[-1], st[0]
            k = _C_ROW.get((a, b))
            if k is None:
                return {}
            return {st[1:-1]: k * self._phase(a, -1)}
        k = _C_ROW.get((st[j - 1], st[j]))
        if k is None:
            return {}
        return {st[:j - 1] + st[j + 1:]: k}

    def cdag_state(self, N, j, st):
        out = {}
        for (a, b), k in _C_ROW.items():
            if j == 0:
                # c^dag_0 = Omega c^dag_1
                out[b + st + a] = k * self._phase(a, 1)
            else:
                out[st[:j - 1] + a + b + st[j - 1:]] = k
        return out

    def omega_state(self, st) -> Vector:
        return {st[1:] + st[0]: self._phase(st[0], 1)} if st else {st: ONE}


# -- RSOS height models --------------------------------------------------------------------------

COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


def exponents(series: str, n: int) -> List[int]:
    if series == "A":
        return list(range(1, n + 1))
    if series == "D":
        return list(range(1, 2 * n - 2, 2)) + [n - 1]
    return {6: [1, 4, 5, 7, 8, 11], 7: [1, 5, 7, 9, 11, 13, 17],
            8: [1, 7, 11, 13, 17, 19, 23, 29]}[n]


def allowed_mu(series: str, n: int) -> List[int]:
    """Indices mu whose exponent is coprime to the Coxeter number."""
    ell = COXETER[series](n)
    return [i + 1 for i, m in enumerate(exponents(series, n)) if math.gcd(ell, m) == 1]


def dynkin_edges(series: str, n: int) -> List[Tuple[int, int]]:
    if series == "A":
        return [(a, a + 1) for a in range(1, n)]
    if series == "D":
        if n < 4:
            raise FamilyError("D_n needs n >= 4")
        return [(a, a + 1) for a in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    if series == "E":
        branch = {6: 3, 7: 3, 8: 5}[n]
        return [(a, a + 1) for a in range(1, n - 1)] + [(branch, n)]
    raise FamilyError(f"unknown series {series}")


def adjacency(series: str, n: int) -> np.ndarray:
    A = np.zeros((n, n), dtype=int)
    for a, b in dynkin_edges(series, n):
        A[a - 1, b - 1] = A[b - 1, a - 1] = 1
    return A


def flip_automorphism(series: str, n: int) -> Tuple[int, ...]:
    if series == "A":
        return tuple(n + 1 - a for a in range(1, n + 1))
    if series == "D":
        return tuple(range(1, n - 1)) + (n, n - 1)
    if series == "E" and n == 6:
        return (5, 4, 3, 2, 1, 6)
    raise FamilyError(f"no nontrivial automorphism for {series}{n}")


class RSOS(Family):
    """Height model on an ADE Dynkin diagram; numeric scalars.

    Square roots of eigenvector ratios are split as g(a')/g(a) with
    g(a) the principal square root of S_{a mu}, the eigenvector being fixed
    by S_{1 mu} > 0.
    """

    numeric = True

    def __init__(self, series: str, n: int, mu: int = 1, K: Optional[Sequence[int]] = None):
        self.series, self.n, self.mu = series, n, mu
        self.A = adjacency(series, n)
        self.K = tuple(K) if K is not None else tuple(range(1, n + 1))
        if sorted(self.K) != list(range(1, n + 1)):
            raise FamilyError("K is not a permutation of the nodes")
        P = np.zeros((n, n), dtype=int)
        for a, b in enumerate(self.K):
            P[a, b - 1] = 1
        if not (P @ self.A == self.A @ P).all():
            raise FamilyError("K is not a graph automorphism")
        self.Kmat = P
        self.Kinv = tuple(self.K.index(a) + 1 for a in range(1, n + 1))
        ell = COXETER[series](n)
        if not 1 <= mu <= n:
            raise FamilyError(f"mu must lie in 1..{n}")
        m = exponents(series, n)[mu - 1]
        if math.gcd(ell, m) != 1:
            raise FamilyError(f"exponent {m} is not coprime to {ell}")
        self.coxeter, self.exponent = ell, m
        self.beta_value = 2 * math.cos(math.pi * m / ell)
        self.S = self._eigenvector()
        if np.min(np.abs(self.S)) < 1e-9:
            raise FamilyError(f"eigenvector for mu={mu} has a vanishing entry")
        self.g = [cmath.sqrt(complex(x)) for x in self.S]
        self.nbrs = {a: [b for b in range(1, n + 1) if self.A[a - 1, b - 1]] for a in range(1, n + 1)}
        colour = {1: 1}
        frontier = [1]
        while frontier:
            a = frontier.pop()
            for b in self.nbrs[a]:
                if b not in colour:
                    colour[b] = -colour[a]
                    frontier.append(b)
        self.theta = colour
        self.kappa = 1 if all(self.theta[self.K[a - 1]] == self.theta[a] for a in self.theta) else -1

    def _eigenvector(self) -> np.ndarray:
        if self.series == "A":
            v = np.array([math.sin(math.pi * self.exponent * a / (self.n + 1))
                          for a in range(1, self.n + 1)])
        else:
            vals, vecs = np.linalg.eigh(self.A.astype(float))
            idx = [i for i, x in enumerate(vals) if abs(x - self.beta_value) < 1e-9]
            if len(idx) != 1:
                raise FamilyError("eigenvalue is degenerate; eigenvector not fixed")
            v = vecs[:, idx[0]]
        return v if v[0] > 0 else -v

    def __repr__(self):
        k = "id" if self.K == tuple(range(1, self.n + 1)) else "/".join(map(str, self.K))
        return f"RSOS({self.series}{self.n},mu={self.mu},K={k})"

    def __eq__(self, o):
        return type(o) is RSOS and (o.series, o.n, o.mu, o.K) == (self.series, self.n, self.mu, self.K)

    def __hash__(self):
        return hash(("RSOS", self.series, self.n, self.mu, self.K))

    @property
    def parity(self):
        return 0 if self.kappa == 1 else 1

    def beta(self):
        return Scalar.numeric(self.beta_value)

    @property
    def s_value(self) -> complex:
        """A square root of q with -q - 1/q = beta_mu."""
        return cmath.exp(0.5j * math.pi * (1 + self.exponent / self.coxeter))

    def coerce(self, k: Scalar) -> Scalar:
        if k.is_numeric:
            return k
        if k.variables() - {"s"}:
            raise FamilyError("RSOS scalars must only depend on s")
        return evaluate(k, {"s": self.s_value})

    def state_size(self, st):
        return len(st) - 1

    def basis(self, N, bound=None):
        paths = [[a] for a in range(1, self.n + 1)]
        for _ in range(N):
            paths = [p + [b] for p in paths for b in self.nbrs[p[-1]]]
        return [tuple(p) for p in paths if p[-1] == self.K[p[0] - 1]]

    def dimension(self, N):
        return int(round(np.trace(self.Kmat @ np.linalg.matrix_power(self.A, N))))

    def _r(self, a: int, b: int) -> Scalar:
        return Scalar.numeric(self.g[a - 1] / self.g[b - 1])

    def c_state(self, N, j, st):
        a = st
        if j == 0:
            if a[N - 1] != self.K[a[1] - 1]:
                return {}
            return {a[1:N]: self._r(a[0], a[1])}
        if a[j - 1] != a[j + 1]:
            return {}
        return {a[:j] + a[j + 2:]: self._r(a[j], a[j + 1])}

    def cdag_state(self, N, j, st):
        a = st
        out = {}
        if j == 0:
            for b in self.nbrs[a[0]]:
                out[(b,) + a + (self.K[b - 1],)] = self._r(b, a[0])
            return out
        for b in self.nbrs[a[j - 1]]:
            out[a[:j] + (b, a[j - 1]) + a[j:]] = self._r(b, a[j - 1])
        return out


# -- descriptors ---------------------------------------------------------------------------------

def _parse_k(text: str) -> int:
    from fractions import Fraction
    k = Fraction(text)
    if (2 * k).denominator != 1 or k < 0:
        raise FamilyError(f"k must be a nonnegative multiple of 1/2, got {text}")
    return int(2 * k)


def _parse_twist(text: str, default: str) -> Tuple[Scalar, str]:
    import re
    text = text.strip() or default
    m = re.fullmatch(r"(-?)(x1|x2|u)(?:\^(-?\d+))?", text)
    if not m:
        raise FamilyError(f"bad twist {text!r}")
    val = Scalar.var(m.group(2), int(m.group(3) or 1))
    if m.group(1):
        val = -val
    return val, text


def parse_family(spec: str) -> Family:
    """``Wkx:k=1,x=x1``, ``Wk:k=0``, ``V``, ``XXZ:m=0``, ``RSOS:A3,mu=1,K=id``."""
    kind, _, rest = spec.partition(":")
    opts: Dict[str, str] = {}
    pos: List[str] = []
    for part in filter(None, (p.strip() for p in rest.split(","))):
        if "=" in part:
            key, val = part.split("=", 1)
            opts[key.strip()] = val.strip()
        else:
            pos.append(part)
    kind = kind.strip()
    if kind == "Wkx":
        tw, label = _parse_twist(opts.get("x", "x1"), "x1")
        return Wkx(_parse_k(opts.get("k", "0")), tw, label)
    if kind == "Wk":
        return Wk(_parse_k(opts.get("k", "0")))
    if kind in ("V", "Vacuum"):
        return Vacuum()
    if kind == "XXZ":
        m = opts.get("m", "0")
        tw, label = _parse_twist(opts.get("u", "u"), "u")
        return XXZ(None if m == "all" else int(_signed_k2(m)), tw, label)
    if kind == "RSOS":
        if not pos:
            raise FamilyError("RSOS needs an algebra label such as A3")
        alg = pos[0]
        series, n = alg[0], int(alg[1:])
        mu = int(opts.get("mu", "1"))
        kspec = opts.get("K", "id")
        if kspec == "id":
            K = None
        elif kspec == "flip":
            K = flip_automorphism(series, n)
        else:
            K = tuple(int(x) for x in kspec.split("/"))
        return RSOS(series, n, mu, K)
    raise FamilyError(f"unknown family kind {kind!r}")


def _signed_k2(text: str) -> int:
    from fractions import Fraction
    m = Fraction(text)
    if (2 * m).denominator != 1:
        raise FamilyError("m must be a multiple of 1/2")
    return int(2 * m)


def family_spec(fam: Family) -> str:
    if isinstance(fam, Wkx):
        return f"Wkx:k={_khalf(fam.k2)},x={fam.label}"
    if isinstance(fam, Wk):
        return f"Wk:k={_khalf(fam.k2)}"
    if isinstance(fam, Vacuum):
        return "V"
    if isinstance(fam, XXZ):
        m = "all" if fam.m2 is None else (_khalf(fam.m2) if fam.m2 >= 0 else "-" + _khalf(-fam.m2))
        return f"XXZ:m={m},u={fam.label}"
    if isinstance(fam, RSOS):
        k = "id" if fam.K == tuple(range(1, fam.n + 1)) else "/".join(map(str, fam.K))
        return f"RSOS:{fam.series}{fam.n},mu={fam.mu},K={k}"
    raise FamilyError(f"no descriptor for {fam!r}")


# -- module-level operations ---------------------------------------------------------------------

def basis(fam: Family, N: int, bound: Optional[int] = None) -> list:
    if not fam.admissible(N):
        raise FamilyError(f"size {N} not admissible for {fam}")
    return fam.basis(N, bound)


def dimension(fam: Family, N: int):
    return fam.dimension(N)


def act_c(fam: Family, N: int, j: int, v: Vector) -> Vector:
    return fam.act_c(N, j, v)


def act_cdag(fam: Family, N: int, j: int, v: Vector) -> Vector:
    return fam.act_cdag(N, j, v)


def act_diagram(fam: Family, lam, v: Vector) -> Vector:
    return fam.act_diagram(lam, v)


def check_relations_on_family(fam: Family, nmax: int, tol: float = 1e-9) -> List[str]:
    """Check every c-algebra relation with letter sizes <= nmax on all basis states."""
    from .word import relation_instances
    failures = []
    for N in range(0, nmax + 1):
        for r in relation_instances(N):
            letters = r.lhs + r.rhs
            if max(a.size for a in letters) > nmax:
                continue
            n_in = r.lhs[-1].n_in
            if not fam.admissible(n_in):
                continue
            for st in fam.basis(n_in, 1):
                u = fam.unit(st)
                lhs = fam.act_word(r.lhs, u)
                rhs = vec_scale(fam.act_word(r.rhs, u), fam.beta() ** r.rhs_beta)
                ok = vec_max_dev(lhs, rhs) < tol if fam.numeric else vec_equal(lhs, rhs)
                if not ok:
                    failures.append(f"{r.label}: {' '.join(map(str, r.lhs))} on {st}")
    return failures
