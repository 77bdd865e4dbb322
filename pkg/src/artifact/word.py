"""Words in the generators c_j, c^dag_j and their canonical normal form.

The normal form of a word in L(N, N') is ``(w_out)^dag (c_1 c_0^dag)^l w_in``
with ``w = (c_0)^s c_{j_1} ... c_{j_n}`` and ``j`` strictly increasing.  The
normalizer folds letters left to right, rewriting the tail with the
commutation rules of the c-algebra, so it never looks at diagrams.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from . import diagram as dg
from .coeff import ONE, Scalar, beta
from .diagram import AnnularDiagram


class Letter(NamedTuple):
    kind: str  # "c" or "cd"
    size: int
    j: int

    @property
    def n_out(self) -> int:
        return self.size - 2 if self.kind == "c" else self.size

    @property
    def n_in(self) -> int:
        return self.size if self.kind == "c" else self.size - 2

    def diagram(self) -> AnnularDiagram:
        return dg.c(self.size, self.j) if self.kind == "c" else dg.cdag(self.size, self.j)

    def adjoint(self) -> "Letter":
        return Letter("cd" if self.kind == "c" else "c", self.size, self.j)

    def __str__(self):
        return f"{self.kind}[{self.size},{self.j}]"


def C(size: int, j: int) -> Letter:
    return Letter("c", size, j)


def CD(size: int, j: int) -> Letter:
    return Letter("cd", size, j)


Word = Tuple[Letter, ...]


class WordSizeError(ValueError):
    pass


def check_word(w: Sequence[Letter]) -> None:
    for a in w:
        if a.kind not in ("c", "cd") or a.size < 2 or not 0 <= a.j <= a.size - 1:
            raise WordSizeError(f"illegal letter {a}")
    for a, b in zip(w, w[1:]):
        if a.n_in != b.n_out:
            raise WordSizeError(f"letters {a} and {b} have incompatible sizes")


def word_sizes(w: Sequence[Letter], n: Optional[int] = None) -> Tuple[int, int]:
    if not w:
        if n is None:
            raise WordSizeError("empty word needs an explicit size")
        return n, n
    check_word(w)
    if n is not None and w[0].n_out != n:
        raise WordSizeError(f"word starts at size {w[0].n_out}, not {n}")
    return w[0].n_out, w[-1].n_in


def word_adjoint(w: Sequence[Letter]) -> Word:
    return tuple(a.adjoint() for a in reversed(w))


def parse_word(text: str) -> Word:
    """Parse ``c[6,1] cd[6,0]``; left to right is left factor first."""
    out = []
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        mm = re.fullmatch(r"(c|cd)\[(\d+),(\d+)\]", tok)
        if not mm:
            raise ValueError(f"cannot parse letter {tok!r} at position {m.start()}")
        out.append(Letter(mm.group(1), int(mm.group(2)), int(mm.group(3))))
    w = tuple(out)
    check_word(w)
    return w


def format_word(w: Sequence[Letter]) -> str:
    return " ".join(str(a) for a in w)


def word_to_diagram(w: Sequence[Letter], n: Optional[int] = None) -> Tuple[AnnularDiagram, Scalar]:
    """Multiply the letters as diagrams."""
    n_out, _ = word_sizes(w, n)
    d = dg.identity(n_out)
    loops = 0
    for a in w:
        d, k = dg.compose_loops(d, a.diagram())
        loops += k
    return d, beta() ** loops


def omega_word(n: int, power: int = 1) -> Word:
    """Omega_n^power written as (c_1 c_0^dag)^power or (c_0 c_1^dag)^-power."""
    unit = (C(n + 2, 1), CD(n + 2, 0)) if power >= 0 else (C(n + 2, 0), CD(n + 2, 1))
    return unit * abs(power)


# -- S-words: (c_0)^s c_{j_1} ... c_{j_n} ---------------------------------------------

@dataclass(frozen=True)
class SWord:
    s: int
    js: Tuple[int, ...]
    size: int  # inner size N

    @property
    def low(self) -> int:
        """Outer size 2k."""
        return self.size - 2 * (self.s + len(self.js))

    def letters(self) -> Word:
        out = [C(self.low + 2 * t, 0) for t in range(1, self.s + 1)]
        base = self.low + 2 * self.s
        out += [C(base + 2 * m, j) for m, j in enumerate(self.js, start=1)]
        return tuple(out)

    def opener_tuple(self) -> Tuple[int, ...]:
        """Arch openers of the corresponding half-diagram."""
        pos = list(range(1, self.size + 1))
        openers = []
        for j in reversed(self.js):
            openers.append(pos[j - 1])
            del pos[j - 1:j + 1]
        for _ in range(self.s):
            openers.append(pos[-1])
            pos = pos[1:-1]
        return tuple(sorted(openers))

    @classmethod
    def from_tuple(cls, size: int, tup: Tuple[int, ...]) -> "SWord":
        arches, _ = dg.complete_tuple(size, tup)
        js = tuple(sorted(i for i, j in arches if i < j))
        return cls(len(arches) - len(js), js, size)

    def valid(self) -> bool:
        n = len(self.js)
        N = self.size
        return (self.low >= 0 and all(a < b for a, b in zip(self.js, self.js[1:]))
                and all(1 <= j <= N - 2 * n + 2 * m - 1 for m, j in enumerate(self.js, start=1)))


def empty_sword(size: int) -> SWord:
    return SWord(0, (), size)


def append_c(w: SWord, j: int) -> SWord:
    """w c_j for a letter of size w.size + 2, sorted insertion."""
    N = w.size + 2
    if not 0 <= j <= N - 1:
        raise WordSizeError(f"c[{N},{j}] out of range")
    if j == 0:
        return SWord(w.s + 1, tuple(x + 1 for x in w.js), N)
    head = [x for x in w.js if x < j]
    tail = [x + 2 for x in w.js if x >= j]
    return SWord(w.s, tuple(head + [j] + tail), N)


def normalize_c_only(letters: Sequence[Letter], n_out: int) -> SWord:
    w = empty_sword(n_out)
    for a in letters:
        if a.kind != "c" or a.size != w.size + 2:
            raise WordSizeError(f"unexpected letter {a}")
        w = append_c(w, a.j)
    return w


class Tail(NamedTuple):
    """Outcome of w c^dag_j: form tag, scalar, optional leading index, S-word."""
    form: str  # "i", "ii", "iii", "iv"
    beta_pow: int
    jprime: Optional[int]
    rest: SWord


def _c0_power_cdag(s: int, k2: int, j: int) -> Tail:
    """(c_0)^s c^dag_j with (c_0)^s in L(2k, 2k+2s), s >= 1."""
    low = k2
    if 1 <= j <= s - 1:
        w = SWord(s - 2, (), low + 2 * (s - 2))
        return Tail("i", 0, None, append_c(w, 2 * s + k2 - j - 2))
    if j == s:
        return Tail("iv", 0, None, SWord(s - 1, (), low + 2 * (s - 1)))
    if s + 1 <= j <= s + k2 - 1:
        return Tail("ii", 0, j - s, SWord(s, (), low - 2 + 2 * s))
    if j == s + k2:
        return Tail("iii", 0, None, SWord(s - 1, (), low + 2 * (s - 1)))
    if s + k2 + 1 <= j <= 2 * s + k2 - 1:
        w = SWord(s - 2, (), low + 2 * (s - 2))
        return Tail("i", 0, None, append_c(w, 2 * s + k2 - j))
    raise AssertionError("c_0 power case table exhausted")


def _extend(t: Tail, j: int) -> Tail:
    return Tail(t.form, t.beta_pow, t.jprime, append_c(t.rest, j))


def append_cdag(w: SWord, j: int) -> Tail:
    """w c^dag_j for the letter c^dag_{w.size, j}."""
    M = w.size
    if not 0 <= j <= M - 1:
        raise WordSizeError(f"cd[{M},{j}] out of range")
    if not w.js:
        if w.s == 0:
            return Tail("ii", 0, j, SWord(0, (), M - 2))
        if j == 0:
            return Tail("i", 1, None, SWord(w.s - 1, (), M - 2))
        return _c0_power_cdag(w.s, w.low, j)
    a = w.js[-1]
    prefix = SWord(w.s, w.js[:-1], M - 2)
    if j == 0:
        if a == M - 1:
            # c_{M-1} c^dag_0 = c_0 c^dag_1
            return append_cdag(append_c(prefix, 0), 1)
        if a == 1:
            # c_1 c^dag_0 = c_0 c^dag_{M-1}
            return append_cdag(append_c(prefix, 0), M - 1)
        return _extend(append_cdag(prefix, 0), a - 1)
    if a <= j - 2:
        return _extend(append_cdag(prefix, j - 2), a)
    if a == j:
        return Tail("i", 1, None, prefix)
    if abs(a - j) == 1:
        return Tail("i", 0, None, prefix)
    return _extend(append_cdag(prefix, j), a - 2)


def _omega_past_cdag(n: int, l: int, j: int) -> Tuple[int, int]:
    """Rewrite Omega_n^l c^dag_{n,j} as c^dag_{n,j'} Omega_{n-2}^{l'}."""
    lp = 0
    while l > 0:
        if j >= 2:
            j, lp = j - 1, lp + 1
        elif j == 1:
            j = 0
        else:
            j = n - 1
        l -= 1
    while l < 0:
        if 1 <= j <= n - 2:
            j, lp = j + 1, lp - 1
        elif j == 0:
            j = 1
        else:
            j = 0
        l += 1
    return j, lp


# -- canonical states ------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalWordState:
    k2: int  # bridge count 2k
    l: int
    out: SWord
    inn: SWord
    beta_pow: int = 0

    @property
    def s_out(self):
        return self.out.s

    @property
    def s_in(self):
        return self.inn.s

    @property
    def j_out(self):
        return self.out.js

    @property
    def j_in(self):
        return self.inn.js

    @property
    def scalar(self) -> Scalar:
        return beta() ** self.beta_pow

    def to_diagram(self) -> AnnularDiagram:
        """The basis bijection, computed from opener positions only."""
        return AnnularDiagram(self.out.size, self.inn.size, self.k2, self.l,
                              self.out.opener_tuple(), self.inn.opener_tuple())

    def letters(self) -> Word:
        return word_adjoint(self.out.letters()) + omega_word(self.k2, self.l) + self.inn.letters()


def initial_state(n: int) -> CanonicalWordState:
    return CanonicalWordState(n, 0, empty_sword(n), empty_sword(n))


def push_letter(st: CanonicalWordState, a: Letter) -> CanonicalWordState:
    if a.n_out != st.inn.size:
        raise WordSizeError(f"letter {a} does not fit after size {st.inn.size}")
    if a.kind == "c":
        return CanonicalWordState(st.k2, st.l, st.out, append_c(st.inn, a.j), st.beta_pow)
    t = append_cdag(st.inn, a.j)
    bp = st.beta_pow + t.beta_pow
    if t.form == "i":
        return CanonicalWordState(st.k2, st.l, st.out, t.rest, bp)
    if t.form == "iii":
        return CanonicalWordState(st.k2, st.l + 1, st.out, t.rest, bp)
    if t.form == "iv":
        return CanonicalWordState(st.k2, st.l - 1 if st.k2 else st.l + 1, st.out, t.rest, bp)
    # form ii: c^dag_{j'} moves through the winding and joins the outer word
    jj, lp = _omega_past_cdag(st.k2, st.l, t.jprime)
    out_letters = (C(st.k2, jj),) + st.out.letters()
    new_out = normalize_c_only(out_letters, st.k2 - 2)
    return CanonicalWordState(st.k2 - 2, lp, new_out, t.rest, bp)


def normalize(w: Sequence[Letter], n: Optional[int] = None) -> CanonicalWordState:
    n_out, _ = word_sizes(w, n)
    st = initial_state(n_out)
    for a in w:
        st = push_letter(st, a)
    return st


def state_from_diagram(d: AnnularDiagram) -> CanonicalWordState:
    return CanonicalWordState(d.b, d.l, SWord.from_tuple(d.n_out, d.out),
                              SWord.from_tuple(d.n_in, d.inn))


@lru_cache(maxsize=1 << 16)
def diagram_to_word(d: AnnularDiagram) -> Word:
    return state_from_diagram(d).letters()


def words_equivalent(w1: Sequence[Letter], w2: Sequence[Letter],
                     n: Optional[int] = None) -> Tuple[bool, Optional[Tuple[Scalar, Scalar]]]:
    """Compare normal forms.

    When they agree, the ratio w1/w2 is returned as a (numerator, denominator)
    pair of beta powers, since beta is not invertible among Laurent polynomials.
    """
    if word_sizes(w1, n) != word_sizes(w2, n):
        raise WordSizeError("words map between different sizes")
    a, b = normalize(w1, n), normalize(w2, n)
    if (a.k2, a.l, a.out, a.inn) != (b.k2, b.l, b.out, b.inn):
        return False, None
    d = a.beta_pow - b.beta_pow
    return True, (beta() ** max(d, 0), beta() ** max(-d, 0))


# -- the defining relations --------------------------------------------------------------------

class Relation(NamedTuple):
    label: str
    lhs: Word
    rhs: Word
    rhs_beta: int  # rhs is beta^rhs_beta times the word
    size: int      # outer size (needed when a side is the empty word)


def relation_instances(N: int) -> Iterator[Relation]:
    """Every instance of the c-algebra relations whose label size is N."""
    if N >= 2:
        for j in range(1, N):
            for k in range(1, N + 2):
                lhs = (C(N, j), C(N + 2, k))
                if j <= k - 2:
                    yield Relation("a", lhs, (C(N, k - 2), C(N + 2, j)), 0, N - 2)
                elif j >= k:
                    yield Relation("a", lhs, (C(N, k), C(N + 2, j + 2)), 0, N - 2)
        for j in range(1, N + 2):
            for k in range(1, N):
                lhs = (CD(N + 2, j), CD(N, k))
                if j <= k:
                    yield Relation("b", lhs, (CD(N + 2, k + 2), CD(N, j)), 0, N + 2)
                elif j >= k + 2:
                    yield Relation("b", lhs, (CD(N + 2, k), CD(N, j - 2)), 0, N + 2)
        for j in range(1, N):
            for k in range(1, N):
                lhs = (CD(N, j), C(N, k))
                if j <= k - 1:
                    yield Relation("c", lhs, (C(N + 2, k + 2), CD(N + 2, j)), 0, N)
                elif j == k:
                    yield Relation("c", lhs, (C(N + 2, j), CD(N + 2, j + 2)), 0, N)
                    yield Relation("c", lhs, (C(N + 2, j + 2), CD(N + 2, j)), 0, N)
                else:
                    yield Relation("c", lhs, (C(N + 2, k), CD(N + 2, j + 2)), 0, N)
        for j in range(1, N):
            for k in range(1, N):
                lhs = (C(N, j), CD(N, k))
                if j <= k - 2:
                    yield Relation("d", lhs, (CD(N - 2, k - 2), C(N - 2, j)), 0, N - 2)
                elif abs(j - k) == 1:
                    yield Relation("d", lhs, (), 0, N - 2)
                elif j == k:
                    yield Relation("d", lhs, (), 1, N - 2)
                else:
                    yield Relation("d", lhs, (CD(N - 2, k), C(N - 2, j - 2)), 0, N - 2)
        for j in range(2, N + 1):
            yield Relation("e", (C(N, 0), C(N + 2, j)), (C(N, j - 1), C(N + 2, 0)), 0, N - 2)
        for j in range(1, N):
            yield Relation("f", (CD(N + 2, 0), CD(N, j)), (CD(N + 2, j + 1), CD(N, 0)), 0, N + 2)
            yield Relation("g", (CD(N, 0), C(N, j)), (C(N + 2, j + 1), CD(N + 2, 0)), 0, N)
        for j in range(0, N):
            lhs = (C(N, 0), CD(N, j))
            if j == 0:
                yield Relation("h", lhs, (), 1, N - 2)
            elif j == 1 and N - 1 != 1:
                yield Relation("h", lhs, (C(N, N - 1), CD(N, 0)), 0, N - 2)
            elif 2 <= j <= N - 2:
                yield Relation("h", lhs, (CD(N - 2, j - 1), C(N - 2, 0)), 0, N - 2)
            elif j == N - 1:
                yield Relation("h", lhs, (C(N, 1), CD(N, 0)), 0, N - 2)
        if N >= 3:
            # at N = 2 both products equal f^2, not the identity
            yield Relation("i", (C(N, 1), CD(N, 0), C(N, 0), CD(N, 1)), (), 0, N - 2)
            yield Relation("i", (C(N, 0), CD(N, 1), C(N, 1), CD(N, 0)), (), 0, N - 2)


def check_relation_diagrammatic(r: Relation) -> bool:
    if any(a.size < 2 or a.j > a.size - 1 for a in r.lhs + r.rhs):
        raise WordSizeError(f"relation {r.label} instantiated out of range")
    dl, kl = word_to_diagram(r.lhs, r.size)
    dr, kr = word_to_diagram(r.rhs, r.size)
    return dl == dr and kl == kr * beta() ** r.rhs_beta
