"""Annular connectivity diagrams L(N, N') in canonical form, and their calculus.

A diagram is stored by its canonical invariant: bridge count ``b``, winding
``l``, and the tuples of arch openers on the outer and inner boundaries.
Composition goes through an explicit strand form where every strand records
its signed number of counter-clockwise crossings of the seam (the radial line
between node N and node 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from .coeff import ONE, Scalar, ZERO, beta

OUTER, INNER = "outer", "inner"


@dataclass(frozen=True, order=True)
class AnnularDiagram:
    n_out: int
    n_in: int
    b: int
    l: int
    out: Tuple[int, ...] = ()
    inn: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "out", tuple(self.out))
        object.__setattr__(self, "inn", tuple(self.inn))
        validate(self)

    def to_json(self) -> dict:
        return {"n_out": self.n_out, "n_in": self.n_in, "b": self.b, "l": self.l,
                "out": list(self.out), "in": list(self.inn)}

    @classmethod
    def from_json(cls, obj: dict) -> "AnnularDiagram":
        try:
            return cls(int(obj["n_out"]), int(obj["n_in"]), int(obj["b"]), int(obj["l"]),
                       tuple(int(i) for i in obj["out"]), tuple(int(i) for i in obj["in"]))
        except KeyError as exc:
            raise ValueError(f"diagram JSON missing key {exc}") from None

    @property
    def k(self):
        return self.b // 2 if self.b % 2 == 0 else self.b / 2

    def __matmul__(self, other: "AnnularDiagram"):
        return compose(self, other)

    def __repr__(self):
        return (f"D({self.n_out},{self.n_in}|b={self.b},l={self.l},"
                f"out={list(self.out)},in={list(self.inn)})")


class InvalidDiagram(ValueError):
    pass


def validate(d: AnnularDiagram) -> None:
    N, M, b = d.n_out, d.n_in, d.b
    if min(N, M, b) < 0:
        raise InvalidDiagram("negative size")
    if (N - b) % 2 or (M - b) % 2:
        raise InvalidDiagram("parity mismatch between sizes and bridge count")
    if b > min(N, M):
        raise InvalidDiagram("more bridges than boundary nodes")
    if b == 0 and d.l < 0:
        raise InvalidDiagram("negative loop count")
    for tup, n in ((d.out, N), (d.inn, M)):
        if len(tup) != (n - b) // 2:
            raise InvalidDiagram(f"tuple {tup} has wrong length for {n} nodes and {b} bridges")
        if any(not 1 <= i <= n for i in tup) or any(x >= y for x, y in zip(tup, tup[1:])):
            raise InvalidDiagram(f"tuple {tup} not strictly increasing within 1..{n}")


# -- half-diagram completion ---------------------------------------------------

@lru_cache(maxsize=None)
def complete_tuple(n: int, openers: Tuple[int, ...]):
    """Pair each opener with its partner by cyclic bracket matching.

    Returns (arches, bridges) where arches are (opener, partner) pairs (partner
    below opener means the arch crosses the seam) and bridges is the sorted
    list of unmatched positions.
    """
    opset = set(openers)
    stack: List[int] = []
    unmatched: List[int] = []
    arches = []
    for i in range(1, n + 1):
        if i in opset:
            stack.append(i)
        elif stack:
            arches.append((stack.pop(), i))
        else:
            unmatched.append(i)
    # wrap around: leftover openers close on the first unmatched closers
    pos = 0
    while stack:
        arches.append((stack.pop(), unmatched[pos]))
        pos += 1
    return tuple(sorted(arches)), tuple(unmatched[pos:])


# -- explicit strand form -------------------------------------------------------

Endpoint = Tuple[str, int]


@dataclass
class ExplicitForm:
    n_out: int
    n_in: int
    strands: List[Tuple[Endpoint, Endpoint, int]] = field(default_factory=list)
    loops: List[int] = field(default_factory=list)


def canonical_to_explicit(d: AnnularDiagram) -> ExplicitForm:
    strands = []
    for side, n, tup in ((OUTER, d.n_out, d.out), (INNER, d.n_in, d.inn)):
        arches, _ = complete_tuple(n, tup)
        for i, j in arches:
            strands.append(((side, i), (side, j), 0 if i < j else 1))
    _, ob = complete_tuple(d.n_out, d.out)
    _, ib = complete_tuple(d.n_in, d.inn)
    loops = []
    if d.b:
        for m, o in enumerate(ob):
            q, r = divmod(m + d.l, d.b)
            strands.append(((OUTER, o), (INNER, ib[r]), q))
    else:
        loops = [1] * d.l
    return ExplicitForm(d.n_out, d.n_in, strands, loops)


def _opener(p: int, q: int, cross: int) -> int:
    if cross == 0:
        return min(p, q)
    if cross == -1:
        p, q = q, p
    elif cross != 1:
        raise InvalidDiagram("arch crosses the seam more than once")
    if not p > q:
        raise InvalidDiagram("seam-crossing arch with inconsistent orientation")
    return p


def explicit_to_canonical(e: ExplicitForm) -> Tuple[AnnularDiagram, Scalar]:
    out_op, in_op = [], []
    b = 0
    wind = 0
    seen = set()
    for (sa, ia), (sb, ib_), cross in e.strands:
        for ep in ((sa, ia), (sb, ib_)):
            if ep in seen:
                raise InvalidDiagram(f"endpoint {ep} used twice")
            seen.add(ep)
        if sa == sb:
            (out_op if sa == OUTER else in_op).append(_opener(ia, ib_, cross))
        else:
            b += 1
            wind += cross if sa == OUTER else -cross
    contractible = 0
    for total in e.loops:
        if total == 0:
            contractible += 1
        elif abs(total) == 1:
            if b:
                raise InvalidDiagram("non-contractible loop alongside bridges")
            wind += 1
        else:
            raise InvalidDiagram("closed loop crosses the seam more than once in total")
    d = AnnularDiagram(e.n_out, e.n_in, b, wind, tuple(sorted(out_op)), tuple(sorted(in_op)))
    return d, beta() ** contractible


@lru_cache(maxsize=None)
def _wiring(d: AnnularDiagram):
    """Partner and crossing arrays; outer node i -> i-1, inner node j -> N+j-1."""
    N = d.n_out
    size = N + d.n_in
    partner = [0] * size
    cross = [0] * size
    ex = canonical_to_explicit(d)
    for (sa, ia), (sb, ib), c in ex.strands:
        x = ia - 1 if sa == OUTER else N + ia - 1
        y = ib - 1 if sb == OUTER else N + ib - 1
        partner[x], partner[y] = y, x
        cross[x], cross[y] = c, -c
    return tuple(partner), tuple(cross)


@lru_cache(maxsize=1 << 18)
@lru_cache(maxsize=1 << 18)
def _compose_raw(d1: AnnularDiagram, d2: AnnularDiagram):
    N, M, P = d1.n_out, d1.n_in, d2.n_in
    p1, c1 = _wiring(d1)
    p2, c2 = _wiring(d2)
    visited = [False] * M
    strands = []

    def run(in_d1: bool, x: int):
        # walk from node x of the current diagram to a free endpoint
        total = 0
        while True:
            if in_d1:
                y = p1[x]
                total += c1[x]
                if y < N:
                    return (OUTER, y + 1), total
                k = y - N
                visited[k] = True
                in_d1, x = False, k
            else:
                y = p2[x]
                total += c2[x]
                if y >= M:
                    return (INNER, y - M + 1), total
                visited[y] = True
                in_d1, x = True, N + y

    done = set()
    for i in range(N):
        if (OUTER, i + 1) in done:
            continue
        end, tot = run(True, i)
        done.add(end)
        strands.append(((OUTER, i + 1), end, tot))
    for j in range(P):
        if (INNER, j + 1) in done:
            continue
        end, tot = run(False, M + j)
        done.add(end)
        strands.append(((INNER, j + 1), end, tot))

    loops = []
    if d1.b == 0:
        loops += [1] * d1.l
    if d2.b == 0:
        loops += [1] * d2.l
    for k in range(M):
        if visited[k]:
            continue
        total = 0
        x = k  # outer node k of d2
        while True:
            visited[x] = True
            y = p2[x]
            total += c2[x]
            # y is an outer node of d2 (free walks consumed all bridges)
            visited[y] = True
            z = p1[N + y]
            total += c1[N + y]
            x = z - N
            if x == k:
                break
        loops.append(total)
    d, fac = explicit_to_canonical(ExplicitForm(N, P, strands, loops))
    nb = sum(1 for t in loops if t == 0)
    return d, nb


def compose(d1: AnnularDiagram, d2: AnnularDiagram) -> Tuple[AnnularDiagram, Scalar]:
    """Product d1 d2 (d2 drawn inside d1); returns (diagram, beta^loops)."""
    if d1.n_in != d2.n_out:
        raise ValueError(f"cannot compose L({d1.n_out},{d1.n_in}) with L({d2.n_out},{d2.n_in})")
    d, nb = _compose_raw(d1, d2)
    return d, beta() ** nb


def compose_loops(d1: AnnularDiagram, d2: AnnularDiagram) -> Tuple[AnnularDiagram, int]:
    """Like :func:`compose` but returns the number of contractible loops."""
    if d1.n_in != d2.n_out:
        raise ValueError(f"cannot compose L({d1.n_out},{d1.n_in}) with L({d2.n_out},{d2.n_in})")
    return _compose_raw(d1, d2)


# -- generators -------------------------------------------------------------------

def identity(n: int) -> AnnularDiagram:
    return AnnularDiagram(n, n, n, 0)


def _check_index(n: int, j: int):
    if n < 2 or not 0 <= j <= n - 1:
        raise ValueError(f"index j={j} out of range for size {n}")


def c(n: int, j: int) -> AnnularDiagram:
    """c_{n,j} in L(n-2, n): inner arch on nodes j, j+1 (n, 1 when j = 0)."""
    _check_index(n, j)
    return AnnularDiagram(n - 2, n, n - 2, 0, (), (j if j else n,))


def cdag(n: int, j: int) -> AnnularDiagram:
    _check_index(n, j)
    return AnnularDiagram(n, n - 2, n - 2, 0, (j if j else n,), ())


def e(n: int, j: int) -> AnnularDiagram:
    _check_index(n, j)
    t = (j if j else n,)
    return AnnularDiagram(n, n, n - 2, 0, t, t)


def omega(n: int, power: int = 1) -> AnnularDiagram:
    if n == 0:
        raise ValueError("omega needs n > 0")
    return AnnularDiagram(n, n, n, power)


def omega_inv(n: int) -> AnnularDiagram:
    return omega(n, -1)


def f(power: int = 1) -> AnnularDiagram:
    return AnnularDiagram(0, 0, 0, power)


# -- involutions and signs ----------------------------------------------------------

def adjoint(d: AnnularDiagram) -> AnnularDiagram:
    return AnnularDiagram(d.n_in, d.n_out, d.b, -d.l if d.b else d.l, d.inn, d.out)


def _reflect_tuple(n: int, tup) -> Tuple[int, ...]:
    arches, _ = complete_tuple(n, tup)
    return tuple(sorted(n + 1 - j for _, j in arches))


def reflect(d: AnnularDiagram) -> AnnularDiagram:
    """Mirror image: node j -> N+1-j on both boundaries."""
    return AnnularDiagram(d.n_out, d.n_in, d.b, -d.l if d.b else d.l,
                          _reflect_tuple(d.n_out, d.out), _reflect_tuple(d.n_in, d.inn))


def sigma(d: AnnularDiagram) -> int:
    crossings = d.l
    for n, tup in ((d.n_out, d.out), (d.n_in, d.inn)):
        crossings += sum(1 for i, j in complete_tuple(n, tup)[0] if j < i)
    return -1 if crossings % 2 else 1


# -- bases ----------------------------------------------------------------------------

def tuples(n: int, b: int) -> List[Tuple[int, ...]]:
    """The set I_{b/2}(n) of opener tuples."""
    if b > n or (n - b) % 2:
        return []
    return list(combinations(range(1, n + 1), (n - b) // 2))


def enumerate_basis(n_out: int, n_in: int, b: int, l_range: Iterable[int]) -> List[AnnularDiagram]:
    if b > min(n_out, n_in) or (n_out - b) % 2 or (n_in - b) % 2:
        raise ValueError("bridge count incompatible with sizes")
    ls = [l for l in l_range if b or l >= 0]
    return [AnnularDiagram(n_out, n_in, b, l, o, i)
            for o in tuples(n_out, b) for i in tuples(n_in, b) for l in ls]


def basis_count(n: int, b: int) -> int:
    return math.comb(n, (n - b) // 2) if b <= n and (n - b) % 2 == 0 else 0


# -- linear combinations -------------------------------------------------------------

Combo = Dict[AnnularDiagram, Scalar]


def combo_add(acc: Combo, d: AnnularDiagram, coef: Scalar) -> None:
    if coef.is_zero():
        return
    v = acc.get(d)
    v = coef if v is None else v + coef
    if v.is_zero():
        acc.pop(d, None)
    else:
        acc[d] = v


def combo(items: Iterable[Tuple[AnnularDiagram, Scalar]]) -> Combo:
    acc: Combo = {}
    for d, cf in items:
        combo_add(acc, d, cf)
    return dict(sorted(acc.items()))


def as_combo(x) -> Combo:
    if isinstance(x, AnnularDiagram):
        return {x: ONE}
    return x


def combo_compose(a, b) -> Combo:
    a, b = as_combo(a), as_combo(b)
    acc: Combo = {}
    for d1, k1 in a.items():
        for d2, k2 in b.items():
            d, nb = compose_loops(d1, d2)
            combo_add(acc, d, k1 * k2 * beta() ** nb)
    return dict(sorted(acc.items()))


def combo_equal(a, b) -> bool:
    a, b = as_combo(a), as_combo(b)
    keys = set(a) | set(b)
    return all((a.get(k, ZERO) - b.get(k, ZERO)).is_zero() for k in keys)


def combo_scale(a, k: Scalar) -> Combo:
    return combo((d, k * v) for d, v in as_combo(a).items())


def braid(n: int, j: int, barred: bool = False) -> Combo:
    """b_j = s id + s^-1 e_j, or its inverse s^-1 id + s e_j."""
    from .coeff import S
    sp, sm = (S.inverse(), S) if barred else (S, S.inverse())
    return combo([(identity(n), sp), (e(n, j), sm)])


def F(n: int, barred: bool = False) -> Combo:
    """Braid transfer matrix F_n = c_{n+2,1} b_2 ... b_{n+1} c^dag_{n+2,0}."""
    acc: Combo = {c(n + 2, 1): ONE}
    for j in range(2, n + 2):
        acc = combo_compose(acc, braid(n + 2, j, barred))
    return combo_compose(acc, cdag(n + 2, 0))


def Fbar(n: int) -> Combo:
    return F(n, barred=True)


# -- SVG rendering ---------------------------------------------------------------------

def render_svg(d: AnnularDiagram, size: int = 320) -> str:
    """Nodes on two circles, straight bridges, quadratic arches, dashed seam."""
    cx = cy = size / 2
    R, r = size * 0.42, size * 0.18
    if d.n_out == 0 and d.n_in == 0:
        r = size * 0.12

    def pos(radius, n, i):
        # node i sits at angle -90deg + 360*(i-1/2)/n, counter-clockwise
        ang = math.radians(-90 + 360 * (i - 0.5) / n)
        return cx + radius * math.cos(ang), cy - radius * math.sin(ang)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<circle cx="{cx}" cy="{cy}" r="{R}" fill="#eef4ff" stroke="black"/>',
             f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="white" stroke="black"/>',
             f'<line x1="{cx}" y1="{cy + r}" x2="{cx}" y2="{cy + R}" stroke="black" '
             f'stroke-dasharray="4 3"/>']
    ex = canonical_to_explicit(d)
    for (sa, ia), (sb, ib), cross in ex.strands:
        na = d.n_out if sa == OUTER else d.n_in
        nb = d.n_out if sb == OUTER else d.n_in
        x1, y1 = pos(R if sa == OUTER else r, na, ia)
        x2, y2 = pos(R if sb == OUTER else r, nb, ib)
        if sa == sb:
            rad = R * 0.7 if sa == OUTER else r * 1.6
            mx, my = (x1 + x2) / 2 - cx, (y1 + y2) / 2 - cy
            norm = math.hypot(mx, my) or 1.0
            if cross:
                mx, my = -mx, -my
            qx, qy = cx + rad * mx / norm, cy + rad * my / norm
            parts.append(f'<path d="M{x1:.2f},{y1:.2f} Q{qx:.2f},{qy:.2f} {x2:.2f},{y2:.2f}" '
                         f'fill="none" stroke="blue" stroke-width="2"/>')
        else:
            cls = ' class="seam-crossing"' if cross else ""
            parts.append(f'<line{cls} x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                         f'stroke="blue" stroke-width="2"/>')
    for k in range(len(ex.loops)):
        rr = r + (R - r) * (k + 1) / (len(ex.loops) + 1)
        parts.append(f'<circle class="loop" cx="{cx}" cy="{cy}" r="{rr:.2f}" fill="none" '
                     f'stroke="blue" stroke-width="2"/>')
    for radius, n in ((R, d.n_out), (r, d.n_in)):
        for i in range(1, n + 1):
            x, y = pos(radius, n, i)
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts)
