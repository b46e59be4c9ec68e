"""Exact scalars: rationals, the field Q(sqrt q), valuations, Chebyshev
sequences and truncated power-series division.

Rationals are :class:`fractions.Fraction` at the API boundary; the
Q(sqrt q) arithmetic runs on gmpy2 ``mpq`` internally.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

from .errors import UsageError

RationalLike = Union[int, Fraction]

_MPQ = type(mpq())
_ZERO, _ONE = mpq(0), mpq(1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(r: RationalLike, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero rational ``r``."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    v = 0
    num, den = abs(r.numerator), r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def format_rational(r: RationalLike) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"``, optionally signed."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _mpq(r) -> mpq:
    if isinstance(r, (int, _MPQ)):
        return mpq(r)
    if isinstance(r, Rational):
        return mpq(r.numerator, r.denominator)
    raise TypeError(f"expected a rational, got {r!r}")


class QuadExtScalar:
    """The element ``x + y*sqrt(q)`` of Q(sqrt q) for a prime ``q``.

    Components are held as gmpy2 ``mpq``; ``x`` and ``y`` are exposed as
    :class:`~fractions.Fraction`.  Instances are immutable.
    """

    __slots__ = ("q", "_x", "_y")

    def __init__(self, q: int, x: RationalLike = 0, y: RationalLike = 0):
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_x", _mpq(x))
        object.__setattr__(self, "_y", _mpq(y))

    @classmethod
    def _raw(cls, q, x, y) -> "QuadExtScalar":
        # skips validation; x and y must already be mpq
        obj = _new(cls)
        _SET_Q(obj, q)
        _SET_X(obj, x)
        _SET_Y(obj, y)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadExtScalar is immutable")

    def __reduce__(self):
        return (QuadExtScalar, (self.q, self.x, self.y))

    @property
    def x(self) -> Fraction:
        return Fraction(int(self._x.numerator), int(self._x.denominator))

    @property
    def y(self) -> Fraction:
        return Fraction(int(self._y.numerator), int(self._y.denominator))

    def __repr__(self):
        return f"QuadExtScalar(q={self.q}, x={self.x!r}, y={self.y!r})"

    @classmethod
    def sqrt(cls, q: int) -> "QuadExtScalar":
        return cls(q, 0, 1)

    @classmethod
    def rational(cls, q: int, r: RationalLike) -> "QuadExtScalar":
        return cls(q, r, 0)

    def _coerce(self, other):
        if isinstance(other, QuadExtScalar):
            if other.q != self.q:
                raise UsageError(f"radicand mismatch: sqrt({self.q}) vs sqrt({other.q})")
            return other
        if isinstance(other, Rational):
            return QuadExtScalar._raw(self.q, _mpq(other), _ZERO)
        return NotImplemented

    def __add__(self, other):
        o = other if type(other) is QuadExtScalar and other.q == self.q else self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExtScalar._raw(self.q, self._x + o._x, self._y + o._y)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar._raw(self.q, -self._x, -self._y)

    def __sub__(self, other):
        o = other if type(other) is QuadExtScalar and other.q == self.q else self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExtScalar._raw(self.q, self._x - o._x, self._y - o._y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, QuadExtScalar):
            if other.q != self.q:
                raise UsageError(f"radicand mismatch: sqrt({self.q}) vs sqrt({other.q})")
            x1, y1, x2, y2 = self._x, self._y, other._x, other._y
            return QuadExtScalar._raw(self.q, x1 * x2 + self.q * y1 * y2, x1 * y2 + y1 * x2)
        if isinstance(other, Rational):
            r = _mpq(other)
            return QuadExtScalar._raw(self.q, self._x * r, self._y * r)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        n = self._x * self._x - self.q * self._y * self._y
        return Fraction(int(n.numerator), int(n.denominator))

    def conjugate(self) -> "QuadExtScalar":
        return QuadExtScalar._raw(self.q, self._x, -self._y)

    def inverse(self) -> "QuadExtScalar":
        n = self._x * self._x - self.q * self._y * self._y
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt q)")
        return QuadExtScalar._raw(self.q, self._x / n, -self._y / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = QuadExtScalar._raw(self.q, _ONE, _ZERO)
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExtScalar):
            return self.q == other.q and self._x == other._x and self._y == other._y
        if isinstance(other, Rational):
            return self._y == 0 and self._x == _mpq(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self._x, self._y))

    def __bool__(self):
        return bool(self._x) or bool(self._y)

    def is_rational(self) -> bool:
        return self._y == 0

    def to_float(self) -> float:
        return float(self._x) + float(self._y) * self.q ** 0.5


    def __str__(self):
        if self.y == 0:
            return _rat_str(self.x)
        rad = f"sqrt({self.q})"
        ypart = rad if self.y == 1 else f"{_rat_str(self.y)}*{rad}"
        if self.y == -1:
            ypart = "-" + rad
        if self.x == 0:
            return ypart
        sep = "" if ypart.startswith("-") else "+"
        return f"{_rat_str(self.x)}{sep}{ypart}"

    def to_json(self) -> dict:
        return {"q": self.q, "x": format_rational(self.x), "y": format_rational(self.y)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadExtScalar":
        return cls(int(obj["q"]), parse_rational(obj["x"]), parse_rational(obj["y"]))


_new = object.__new__
_SET_Q = QuadExtScalar.q.__set__
_SET_X = QuadExtScalar._x.__set__
_SET_Y = QuadExtScalar._y.__set__


def _rat_str(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


_R = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^(?:({_R})(?:([+-])(?:({_R})\*)?sqrt\((\d+)\))?|(?:({_R})\*)?sqrt\((\d+)\))$")


def parse_scalar(text: str, q: int) -> QuadExtScalar:
    """Parse ``R``, ``R+R*sqrt(q)`` or ``R*sqrt(q)`` into Q(sqrt q).

    ``R`` is an optionally signed integer or ``num/den``.  Whitespace is
    ignored.  The radicand, if present, must equal ``q``.
    """
    s = "".join(text.split())
    m = _SCALAR_RE.match(s)
    if not m:
        raise ValueError(f"malformed scalar literal {text!r}")
    if m.group(1) is not None:
        x = parse_rational(m.group(1))
        if m.group(4) is None:
            return QuadExtScalar(q, x, 0)
        sign = -1 if m.group(2) == "-" else 1
        y = parse_rational(m.group(3)) if m.group(3) else Fraction(1)
        rad = int(m.group(4))
        y = sign * y
    else:
        x = Fraction(0)
        y = parse_rational(m.group(5)) if m.group(5) else Fraction(1)
        rad = int(m.group(6))
    if rad != q:
        raise UsageError(f"literal uses sqrt({rad}) but q = {q}")
    return QuadExtScalar(q, x, y)


def field_ops(lhs: QuadExtScalar, rhs: QuadExtScalar, op: str) -> QuadExtScalar:
    if lhs.q != rhs.q:
        raise UsageError(f"radicand mismatch: {lhs.q} vs {rhs.q}")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise UsageError(f"unknown field operation {op!r}")


def chebyshev_u(A, m: int):
    """U_m(A) from U_{-1}=0, U_0=1, U_{k+1} = A*U_k - U_{k-1}.

    With ``A = a + 1/a`` this is ``(a^(m+1) - a^-(m+1)) / (a - 1/a)``,
    and ``m + 1`` when ``A = 2``.
    """
    if m < -1:
        raise ValueError("chebyshev_u needs m >= -1")
    if m == -1:
        return A * 0
    prev, cur = A * 0, A * 0 + 1
    for _ in range(m):
        prev, cur = cur, A * cur - prev
    return cur


def series_div(numer: Sequence, denom: Sequence, order: int) -> list:
    """First ``order + 1`` Taylor coefficients of ``numer(x) / denom(x)``.

    Both polynomials are coefficient lists, lowest degree first.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if not denom or denom[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    d0 = Fraction(denom[0]) if isinstance(denom[0], int) else denom[0]
    zero = d0 * 0
    out = []
    for m in range(order + 1):
        acc = numer[m] if m < len(numer) else zero
        for i in range(1, min(m, len(denom) - 1) + 1):
            acc = acc - denom[i] * out[m - i]
        out.append(acc / d0)
    return out


def poly_mul_truncated(a: Sequence, b: Sequence, order: int) -> list:
    zero = (a[0] if a else b[0]) * 0
    out = [zero] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] = out[i + j] + ai * bj
    return out


def as_fractions(values: Iterable[RationalLike]) -> list[Fraction]:
    return [Fraction(v) for v in values]
