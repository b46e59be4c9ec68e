"""Positive definite binary quadratic forms ``[a, b/2; b/2, c]``.

Reduction, class enumeration and counting, discriminant splitting,
Kronecker symbols, the p-adic double-coset invariants (l, m) and the
archimedean decomposition used to evaluate the real Bessel function.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .errors import DomainError
from .scalars import factorize, is_prime, valuation

Matrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True, order=True)
class QForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def scale(self, n: int) -> "QForm":
        return QForm(n * self.a, n * self.b, n * self.c)

    def transform(self, T: Sequence[Sequence[int]]) -> "QForm":
        """The form of ``T^t S T``."""
        (p, r), (s, t) = T
        a, b, c = self.a, self.b, self.c
        return QForm(
            a * p * p + b * p * s + c * s * s,
            2 * a * p * r + b * (p * t + r * s) + 2 * c * s * t,
            a * r * r + b * r * t + c * t * t,
        )

    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        h = Fraction(self.b, 2)
        return ((Fraction(self.a), h), (h, Fraction(self.c)))

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}

    @classmethod
    def from_json(cls, obj: dict) -> "QForm":
        return cls(int(obj["a"]), int(obj["b"]), int(obj["c"]))


def disc_content(S: QForm) -> tuple[int, int]:
    return S.disc, S.content


def _matmul(X: Matrix, Y: Matrix) -> Matrix:
    return (
        (X[0][0] * Y[0][0] + X[0][1] * Y[1][0], X[0][0] * Y[0][1] + X[0][1] * Y[1][1]),
        (X[1][0] * Y[0][0] + X[1][1] * Y[1][0], X[1][0] * Y[0][1] + X[1][1] * Y[1][1]),
    )


_SWAP: Matrix = ((0, -1), (1, 0))


def reduce(S: QForm) -> tuple[QForm, Matrix]:
    """Gauss-reduce ``S``; returns ``(R, T)`` with ``T^t S T = R``, T in SL2(Z)."""
    if not S.is_positive_definite():
        raise DomainError(f"{S} is not positive definite")
    a, b, c = S.a, S.b, S.c
    T: Matrix = ((1, 0), (0, 1))

    def normalize(a, b, c, T):
        k = (a - b) // (2 * a)
        if k:
            T = _matmul(T, ((1, k), (0, 1)))
            b, c = b + 2 * k * a, a * k * k + b * k + c
        return a, b, c, T

    a, b, c, T = normalize(a, b, c, T)
    while a > c or (a == c and b < 0):
        a, b, c = c, -b, a
        T = _matmul(T, _SWAP)
        a, b, c, T = normalize(a, b, c, T)
    return QForm(a, b, c), T


def is_discriminant(D: int) -> bool:
    return D % 4 in (0, 1)


def is_fundamental(d: int) -> bool:
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


@dataclass(frozen=True)
class DiscFactorization:
    d: int
    N1: int


def fundamental_split(D: int) -> DiscFactorization:
    """Write a negative discriminant as ``N1^2 * d`` with ``d`` fundamental."""
    if D >= 0 or not is_discriminant(D):
        raise DomainError(f"{D} is not a negative discriminant")
    core, g = -1, 1
    for p, e in factorize(D).items():
        g *= p ** (e // 2)
        if e % 2:
            core *= p
    if core % 4 == 1:
        return DiscFactorization(core, g)
    # core = 2, 3 mod 4, so D = 4*core*(g/2)^2
    return DiscFactorization(4 * core, g // 2)


def kronecker(d: int, p: int) -> int:
    """Kronecker symbol (d/p) for a discriminant d and a prime p."""
    if d % p == 0:
        return 0
    if p == 2:
        return 1 if d % 8 in (1, 7) else -1
    r = pow(d % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def primitive_reduced_forms(D: int) -> list[QForm]:
    return list(_primitive_reduced_forms(D))


@lru_cache(maxsize=4096)
def _primitive_reduced_forms(D: int) -> tuple[QForm, ...]:
    if D >= 0 or not is_discriminant(D):
        raise DomainError(f"{D} is not a negative discriminant")
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(a, -a - 1, -1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            S = QForm(a, b, c)
            if S.is_reduced() and S.content == 1:
                out.append(S)
    return tuple(out)


def enumerate_classes(D: int, L: int = 1) -> list[QForm]:
    """Reduced representatives of H(D; L): content L, discriminant D*L^2."""
    return [S.scale(L) for S in primitive_reduced_forms(D)]


def _unit_index(d: int) -> int:
    return {-3: 3, -4: 2}.get(d, 1)


def class_count_formula(d: int, M: int, L: int = 1) -> int:
    """|H(d M^2; L)| from h(d) and the conductor-M correction factor.

    The unit index u(d) divides only for M > 1; for M = 1 the count is h(d).
    """
    if not is_fundamental(d) or d >= 0:
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    if M < 1 or L < 1:
        raise ValueError("M and L must be positive")
    h = Fraction(len(primitive_reduced_forms(d)))
    if M == 1:
        return int(h)
    val = h * M / _unit_index(d)
    for p in factorize(M):
        val *= 1 - Fraction(kronecker(d, p), p)
    if val.denominator != 1:
        raise ArithmeticError(f"class count formula gave non-integer {val}")
    return int(val)


def principal_form(D: int) -> QForm:
    """The reduced principal form of discriminant D < 0 (content 1)."""
    if D >= 0 or not is_discriminant(D):
        raise DomainError(f"{D} is not a negative discriminant")
    return QForm(1, D % 2, (D % 2 - D) // 4)


def s_d(d: int) -> QForm:
    if d >= 0 or not is_fundamental(d):
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    if d % 4 == 0:
        return QForm(-d // 4, 0, 1)
    return QForm((1 - d) // 4, 1, 1)


@dataclass(frozen=True)
class CosetInvariants:
    p: int
    l: int
    m: int


def coset_invariants(S: QForm, p: int) -> CosetInvariants:
    """(l, m) = (v_p(L), v_p(N1/L)) with L the content of S."""
    if not S.is_positive_definite():
        raise DomainError(f"{S} is not positive definite")
    split = fundamental_split(S.disc)
    L = S.content
    return CosetInvariants(p, valuation(L, p), valuation(Fraction(split.N1, L), p))


def a_matrix(S: QForm) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """The rational matrix A with ``a * A^t S A = S_d``."""
    split = fundamental_split(S.disc)
    a, b, N1 = S.a, S.b, split.N1
    top_left = Fraction(-b, 2 * N1 * a)
    if split.d % 4 == 1:
        top_left += Fraction(1, 2 * a)
    return ((top_left, Fraction(1, a)), (Fraction(1, N1), Fraction(0)))


def _rat_det(h) -> Fraction:
    return Fraction(h[0][0]) * h[1][1] - Fraction(h[0][1]) * h[1][0]


def _rat_inverse(h):
    det = _rat_det(h)
    if det == 0:
        raise DomainError("matrix is singular")
    return ((h[1][1] / det, -Fraction(h[0][1]) / det), (-Fraction(h[1][0]) / det, h[0][0] / det))


def standard_at(Sp: QForm, p: int) -> bool:
    """Standard assumptions at p: c a p-unit and disc fundamental at p."""
    if Sp.c % p == 0:
        return False
    return fundamental_split(Sp.disc).N1 % p != 0


def _congruence(h, Sp: QForm):
    # det(h)^-1 h^t S' h
    (w, x), (y, z) = (tuple(Fraction(e) for e in row) for row in h)
    Sm = Sp.matrix()
    det = _rat_det(h)
    hS = ((w * Sm[0][0] + y * Sm[1][0], w * Sm[0][1] + y * Sm[1][1]),
          (x * Sm[0][0] + z * Sm[1][0], x * Sm[0][1] + z * Sm[1][1]))
    return (
        ((hS[0][0] * w + hS[0][1] * y) / det, (hS[0][0] * x + hS[0][1] * z) / det),
        ((hS[1][0] * w + hS[1][1] * y) / det, (hS[1][0] * x + hS[1][1] * z) / det),
    )


def gl2_coset_level(h, Sprime: QForm, p: int) -> int:
    """Level m of ``h`` in the T(Q_p) diag(p^m, 1) GL2(Z_p) decomposition."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if _rat_det(h) == 0:
        raise DomainError("h is singular")
    if not standard_at(Sprime, p):
        raise DomainError(f"{Sprime} violates the standard assumptions at p={p}")
    C = _congruence(h, Sprime)
    m = 0
    for entry in (C[0][0], C[1][1]):
        if entry != 0:
            m = max(m, -valuation(entry, p))
    return m


def gsp4_coset(h, v, Sprime: QForm, p: int) -> tuple[int, int]:
    """(l, m) of diag(h, v h^-t) in R(Q_p) h(l, m) GSp4(Z_p)."""
    v = Fraction(v)
    if v == 0:
        raise DomainError("similitude v must be nonzero")
    m = gl2_coset_level(h, Sprime, p)
    l = valuation(_rat_det(h) / v, p) - m
    return l, m


def coset_invariants_via_matrix(S: QForm, p: int) -> tuple[int, int]:
    """(l, m) computed from the explicit element diag(A^-1, a A^t)."""
    split = fundamental_split(S.disc)
    Ainv = _rat_inverse(a_matrix(S))
    return gsp4_coset(Ainv, S.a, s_d(split.d), p)


@dataclass(frozen=True)
class ArchDecomposition:
    u: float
    x: float
    y: float
    lam: float
    zeta: float

    def to_json(self) -> dict:
        return {"u": self.u, "x": self.x, "y": self.y, "lambda": self.lam, "zeta": self.zeta}


def arch_decompose(S: QForm) -> ArchDecomposition:
    if not S.is_positive_definite():
        raise DomainError(f"{S} is not positive definite")
    split = fundamental_split(S.disc)
    u = math.sqrt(S.a * math.sqrt(-split.d) * split.N1 / 2)
    x = (S.b / 2) / u
    y = S.a / u
    if x == 0:
        zeta = max(y, 1 / y)
    else:
        t = 1 + x * x * y * y + y ** 4
        zeta = math.sqrt((t + math.sqrt(t * t - 4 * y ** 4)) / (2 * y * y))
    return ArchDecomposition(u, x, y, u * u / S.a, zeta)


def bessel_arch(S: QForm, k: int) -> float:
    """det(S)^(k/2) exp(-2 pi Tr S)."""
    if not S.is_positive_definite():
        raise DomainError(f"{S} is not positive definite")
    det = -S.disc / 4
    return det ** (k / 2) * math.exp(-2 * math.pi * (S.a + S.c))


def bessel_arch_from_decomposition(S: QForm, k: int) -> float:
    """lambda^k exp(-2 pi lambda (zeta^2 + zeta^-2))."""
    dec = arch_decompose(S)
    z2 = dec.zeta * dec.zeta
    return dec.lam ** k * math.exp(-2 * math.pi * dec.lam * (z2 + 1 / z2))
