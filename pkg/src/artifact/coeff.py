"""Exact Laurent polynomials in s, x1, x2, u and a complex numeric mode.

``s`` stands for q^(1/2), ``x1``/``x2`` are twist parameters and ``u`` is the
XXZ phase e^(i phi).  Coefficients live in Q(i): rationals, plus the Gaussian
unit needed by the spin-chain representation.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from typing import Mapping, Union

VARS = ("s", "x1", "x2", "u")
_ZERO_EXP = (0, 0, 0, 0)
NUMERIC_RTOL = 1e-12


class QI:
    """Gaussian rational re + im*i with im != 0 (real values collapse to Fraction)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def make(re, im):
        if im == 0:
            return _norm_rat(Fraction(re))
        return QI(re, im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, QI):
            return QI.make(self.re + other.re, self.im + other.im)
        return QI(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QI):
            return QI.make(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)
        if other == 0:
            return 0
        return QI(self.re * other, self.im * other)

    __rmul__ = __mul__

    def inverse(self):
        d = self.re * self.re + self.im * self.im
        return QI(self.re / d, -self.im / d)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


Coef = Union[int, Fraction, QI]


def _norm_rat(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _norm_coef(c):
    if isinstance(c, QI):
        return QI.make(c.re, c.im)
    if isinstance(c, Fraction):
        return _norm_rat(c)
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient {c!r}")


def _coef_inverse(c):
    if isinstance(c, QI):
        return c.inverse()
    return _norm_rat(Fraction(1) / Fraction(c))


class MixedModeError(TypeError):
    pass


class Scalar:
    """Immutable ring element; either exact (dict payload) or numeric (complex)."""

    __slots__ = ("_terms", "_num", "_hash")

    def __init__(self, terms: Mapping | None = None, *, numeric: complex | None = None):
        if numeric is not None:
            self._terms = None
            self._num = complex(numeric)
        else:
            clean = {}
            for e, c in (terms or {}).items():
                c = _norm_coef(c)
                if c != 0:
                    clean[tuple(e)] = c
            self._terms = clean
            self._num = None
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._num = None
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "Scalar":
        if isinstance(c, complex):
            return cls(numeric=c)
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Scalar":
        e = [0, 0, 0, 0]
        e[VARS.index(name)] = power
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, coef=1, s=0, x1=0, x2=0, u=0) -> "Scalar":
        return cls({(s, x1, x2, u): coef})

    @classmethod
    def numeric(cls, z) -> "Scalar":
        return cls(numeric=z)

    # -- introspection ----------------------------------------------------
    @property
    def is_numeric(self) -> bool:
        return self._terms is None

    @property
    def terms(self) -> dict:
        if self._terms is None:
            raise MixedModeError("numeric scalar has no exact terms")
        return dict(self._terms)

    @property
    def value(self) -> complex:
        if self._terms is not None:
            raise MixedModeError("exact scalar; use evaluate()")
        return self._num

    def is_zero(self) -> bool:
        if self._terms is None:
            return abs(self._num) <= NUMERIC_RTOL
        return not self._terms

    def __bool__(self):
        return not self.is_zero()

    def is_monomial(self) -> bool:
        return self._terms is not None and len(self._terms) == 1

    def variables(self) -> set:
        out = set()
        for e in self._terms or {}:
            out.update(VARS[i] for i, k in enumerate(e) if k)
        return out

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.is_numeric != self.is_numeric:
                raise MixedModeError("exact and numeric scalars cannot mix")
            return other
        if isinstance(other, (int, Fraction, QI)):
            if self.is_numeric:
                return Scalar(numeric=complex(other))
            return Scalar.const(other)
        if isinstance(other, (float, complex)):
            if not self.is_numeric:
                raise MixedModeError("float operand in exact arithmetic")
            return Scalar(numeric=other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._terms is None:
            return Scalar(numeric=self._num + o._num)
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for e, c in o._terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = _norm_coef(v)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        if self._terms is None:
            return Scalar(numeric=-self._num)
        return Scalar._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._terms is None:
            return Scalar(numeric=self._num * o._num)
        a, b = self._terms, o._terms
        if not a or not b:
            return Scalar._raw({})
        if len(a) == 1 and len(b) == 1:
            (ea, ca), = a.items()
            (eb, cb), = b.items()
            c = _norm_coef(ca * cb)
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
            return Scalar._raw({e: c} if c != 0 else {})
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                out[e] = out.get(e, 0) + ca * cb
        return Scalar._raw({e: _norm_coef(c) for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse; exact mode only supports monomials."""
        if self._terms is None:
            return Scalar(numeric=1 / self._num)
        if len(self._terms) != 1:
            raise ZeroDivisionError("only monomials are invertible in the Laurent ring")
        (e, c), = self._terms.items()
        return Scalar._raw({tuple(-k for k in e): _coef_inverse(c)})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(numeric=1) if self._terms is None else ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = self._coerce(other)
            except MixedModeError:
                return False
            if other is NotImplemented:
                return NotImplemented
        if self.is_numeric != other.is_numeric:
            raise MixedModeError("exact and numeric scalars cannot be compared")
        if self._terms is None:
            a, b = self._num, other._num
            return abs(a - b) <= NUMERIC_RTOL * max(1.0, abs(a), abs(b))
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self._terms is None:
                self._hash = hash(("num", round(self._num.real, 9), round(self._num.imag, 9)))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if self._terms is None:
            return f"Scalar.numeric({self._num!r})"
        return f"Scalar({to_text(self)!r})"

    __str__ = lambda self: to_text(self) if self._terms is not None else repr(self._num)

    # -- substitution ------------------------------------------------------
    def substitute(self, name: str, value: "Scalar") -> "Scalar":
        """Replace one variable by a monomial scalar (e.g. x1 -> -x1)."""
        if self._terms is None:
            return self
        idx = VARS.index(name)
        out = ZERO
        for e, c in self._terms.items():
            rest = list(e)
            k = rest[idx]
            rest[idx] = 0
            out = out + Scalar._raw({tuple(rest): c}) * (value ** k)
        return out

    def specialize_mod(self, values: Mapping[str, int], p: int, i_mod: int | None = None) -> int:
        """Reduce modulo prime p with each variable mapped to a residue."""
        if self._terms is None:
            raise MixedModeError("numeric scalar")
        total = 0
        for e, c in self._terms.items():
            if isinstance(c, QI):
                if i_mod is None:
                    raise ValueError("Gaussian coefficient needs a square root of -1 mod p")
                cr = _rat_mod(c.re, p) + _rat_mod(c.im, p) * i_mod
            else:
                cr = _rat_mod(c, p)
            term = cr
            for name, k in zip(VARS, e):
                if k:
                    term = term * pow(values[name], k, p)
            total = (total + term) % p
        return total


def _rat_mod(c, p):
    c = Fraction(c)
    return c.numerator % p * pow(c.denominator % p, -1, p) % p


ZERO = Scalar._raw({})
ONE = Scalar._raw({_ZERO_EXP: 1})
S = Scalar.var("s")
X1 = Scalar.var("x1")
X2 = Scalar.var("x2")
U = Scalar.var("u")
I = Scalar._raw({_ZERO_EXP: QI(0, 1)})


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (float, complex)):
        return Scalar(numeric=x)
    return Scalar.const(x)


def beta() -> Scalar:
    """Loop weight -q - q^-1 written in s = q^(1/2)."""
    return Scalar._raw({(2, 0, 0, 0): -1, (-2, 0, 0, 0): -1})


def q_power(k) -> Scalar:
    """q^k for integer or half-integer k (so s^(2k))."""
    two_k = Fraction(k) * 2
    if two_k.denominator != 1:
        raise ValueError("k must be a multiple of 1/2")
    return Scalar.var("s", int(two_k))


def evaluate(p: Scalar, assignment: Mapping[str, object]) -> Scalar:
    """Numeric value of an exact scalar under a substitution of every variable."""
    if p.is_numeric:
        raise MixedModeError("evaluate expects an exact scalar")
    vals = {}
    for name in p.variables():
        if name not in assignment:
            raise KeyError(f"missing value for variable {name}")
        z = complex(assignment[name])
        if z == 0:
            raise ZeroDivisionError(f"variable {name} assigned zero")
        vals[name] = z
    total = 0j
    for e, c in p._terms.items():
        term = complex(c)
        for name, k in zip(VARS, e):
            if k:
                term *= vals[name] ** k
        total += term
    return Scalar(numeric=total)


# -- text form ---------------------------------------------------------------

def _coef_text(c) -> str:
    if isinstance(c, QI):
        return f"({c.re}{'+' if c.im >= 0 else '-'}{abs(c.im)}i)"
    return str(c)


def to_text(p: Scalar) -> str:
    """Render as ``c * s^a * x1^b * x2^c * u^d`` monomials joined by `` + ``."""
    if p.is_numeric:
        raise MixedModeError("numeric scalars have no exact text form")
    if not p._terms:
        return "0"
    parts = []
    for e in sorted(p._terms, reverse=True):
        bits = [_coef_text(p._terms[e])]
        bits += [f"{n}^{k}" for n, k in zip(VARS, e) if k]
        parts.append(" * ".join(bits))
    return " + ".join(parts)


_COEF_RE = re.compile(r"^\((-?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)i\)$|^(-?\d+(?:/\d+)?)$")
_FACTOR_RE = re.compile(r"^(s|x1|x2|u)\^(-?\d+)$")


def parse(text: str) -> Scalar:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if text == "0":
        return ZERO
    total: dict = {}
    for mono in text.split(" + "):
        factors = [f.strip() for f in mono.split("*")]
        m = _COEF_RE.match(factors[0])
        if not m:
            raise ValueError(f"bad coefficient {factors[0]!r}")
        if m.group(4) is not None:
            coef = _norm_rat(Fraction(m.group(4)))
        else:
            im = Fraction(m.group(3)) * (1 if m.group(2) == "+" else -1)
            coef = QI.make(Fraction(m.group(1)), im)
        e = [0, 0, 0, 0]
        for f in factors[1:]:
            fm = _FACTOR_RE.match(f)
            if not fm:
                raise ValueError(f"bad factor {f!r}")
            e[VARS.index(fm.group(1))] += int(fm.group(2))
        e = tuple(e)
        total[e] = total.get(e, 0) + coef
    return Scalar(total)


def numeric_close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def principal_sqrt(z: complex) -> complex:
    return cmath.sqrt(z)
