"""Unramified special Bessel function values B(h(l, m)) for spherical
representations of GSp(4) over a p-adic field with residue field of
size ``q``.

Satake data enters only through the traces ``A = a + 1/a`` and
``B = b + 1/b`` of the two Satake parameter pairs, so all values stay in
Q(sqrt q).  B(h(0, m)) is available for every parameter set (via the
generating function's x-part); B(h(l, m)) with ``l > 0`` only for the
Saito-Kurokawa type, where one Satake parameter is ``q^(1/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import DomainError, UsageError
from .scalars import QuadExtScalar, chebyshev_u, is_prime


class BesselKind(str, Enum):
    SK_TYPE = "SKType"
    EXCEPTIONAL = "Exceptional"
    GENERIC = "Generic"


@dataclass(frozen=True)
class SphericalParams:
    q: int
    A: QuadExtScalar
    B: QuadExtScalar
    delta: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"q = {self.q} is not prime")
        if self.delta not in (-1, 0, 1):
            raise ValueError(f"delta must be -1, 0 or 1, got {self.delta}")
        for name in ("A", "B"):
            v = getattr(self, name)
            if not isinstance(v, QuadExtScalar):
                v = QuadExtScalar(self.q, Fraction(v), 0)
                object.__setattr__(self, name, v)
            elif v.q != self.q:
                raise UsageError(f"{name} lives in Q(sqrt {v.q}), expected sqrt {self.q}")

    def half(self) -> QuadExtScalar:
        """q^(-1/2)."""
        return QuadExtScalar(self.q, 0, Fraction(1, self.q))

    def sk_trace(self) -> QuadExtScalar:
        """q^(1/2) + q^(-1/2), the trace of the pair q^(+-1/2)."""
        return QuadExtScalar(self.q, 0, 1 + Fraction(1, self.q))

    def to_json(self) -> dict:
        return {"q": self.q, "A": self.A.to_json(), "B": self.B.to_json(), "delta": self.delta}


@dataclass(frozen=True)
class BesselClassification:
    kind: BesselKind
    which: Optional[str] = None  # "A", "B" or "both" for SKType

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "which": self.which}


def classify(params: SphericalParams) -> BesselClassification:
    s = params.sk_trace()
    a_sk, b_sk = params.A == s, params.B == s
    if a_sk or b_sk:
        which = "both" if a_sk and b_sk else ("A" if a_sk else "B")
        return BesselClassification(BesselKind.SK_TYPE, which)
    zero = QuadExtScalar(params.q)
    if params.delta == -1 and {params.A, params.B} == {zero, -s}:
        return BesselClassification(BesselKind.EXCEPTIONAL)
    return BesselClassification(BesselKind.GENERIC)


def poly_p(params: SphericalParams) -> list[QuadExtScalar]:
    """Coefficients P_0..P_4 of the denominator P(x)."""
    q, A, B = params.q, params.A, params.B
    one = QuadExtScalar(q, 1)
    qq = Fraction(1, q)
    return [
        one,
        -(qq ** 2) * A * B,
        qq ** 4 * (A * A + B * B - 2),
        -(qq ** 6) * A * B,
        one * qq ** 8,
    ]


def poly_h_x0(params: SphericalParams) -> list[QuadExtScalar]:
    """Coefficients H_0..H_3 of H(x, 0)."""
    q, A, B, dl = params.q, params.A, params.B, params.delta
    if q - dl < 1:
        raise DomainError("q - delta must be positive")
    sq = QuadExtScalar.sqrt(q)
    one = QuadExtScalar(q, 1)
    h1 = (one * (q + 1 + dl * (dl + 1)) - sq * (dl + 1) * (A + B) + dl * A * B) / (q ** 2 * (q - dl))
    h2 = (one * (q * (dl + 1) + dl * dl * (q + 1)) - sq * dl * (dl + 1) * (A + B) + dl * q * A * B) / (
        q ** 5 * (q - dl)
    )
    h3 = one * Fraction(-dl, q ** 7)
    return [one, h1, h2, h3]


def b0_sequence(params: SphericalParams, n: int) -> list[QuadExtScalar]:
    """[B(h(0, 0)), ..., B(h(0, n))] from the four-term recurrence."""
    P = poly_p(params)
    H = poly_h_x0(params)
    zero = QuadExtScalar(params.q)
    out: list[QuadExtScalar] = []
    for m in range(n + 1):
        acc = H[m] if m < 4 else zero
        for i in range(1, 5):
            if m - i >= 0:
                acc = acc - out[m - i] * P[i]
        out.append(acc)  # P_0 = 1
    return out


def b0(params: SphericalParams, m: int) -> QuadExtScalar:
    """B(h(0, m)), normalized by B(1) = 1."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return b0_sequence(params, m)[m]


def closed_form_trace(params: SphericalParams) -> QuadExtScalar:
    """Trace A' of the Satake pair that is not q^(+-1/2)."""
    cls = classify(params)
    if cls.kind is BesselKind.EXCEPTIONAL:
        return QuadExtScalar(params.q)
    if cls.kind is BesselKind.GENERIC:
        raise DomainError("closed form is only asserted for SK-type or exceptional parameters")
    if cls.which == "A":
        return params.B
    return params.A  # which in ("B", "both")


def _bracket(params: SphericalParams, a_trace: QuadExtScalar, j: int) -> QuadExtScalar:
    # U_j(A') - delta q^(-1/2) U_{j-1}(A')
    if j < 0:
        return QuadExtScalar(params.q)
    return chebyshev_u(a_trace, j) - params.delta * params.half() * chebyshev_u(a_trace, j - 1)


def b0_closed_sk(params: SphericalParams, m: int) -> QuadExtScalar:
    if m < 0:
        raise ValueError("m must be >= 0")
    a_trace = closed_form_trace(params)
    scale = QuadExtScalar(params.q, 0, 1) ** (-3 * m)  # q^(-3m/2)
    return scale * _bracket(params, a_trace, m)


def _require_sk(params: SphericalParams) -> None:
    if classify(params).kind is not BesselKind.SK_TYPE:
        raise DomainError(
            "B(h(l,m)) for l > 0 needs one Satake parameter equal to q^(1/2); "
            "not computable for these parameters"
        )


def blm_sk(params: SphericalParams, l: int, m: int) -> QuadExtScalar:
    """B(h(l, m)) = sum_{i<=l} q^-i B(h(0, l+m-i)) for SK-type parameters."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if l < 0:
        return QuadExtScalar(params.q)
    _require_sk(params)
    seq = b0_sequence(params, l + m)
    total = QuadExtScalar(params.q)
    for i in range(l + 1):
        total = total + seq[l + m - i] * Fraction(1, params.q ** i)
    return total


def siegel_series_value(params: SphericalParams, l: int, m: int) -> QuadExtScalar:
    """q^(3m/2) B(h(l, m-l)) as a sum of Chebyshev brackets, m >= l >= 0."""
    if l < 0 or m < l:
        raise UsageError(f"need m >= l >= 0, got l={l}, m={m}")
    _require_sk(params)
    a_trace = closed_form_trace(params)
    zero = QuadExtScalar(params.q)
    U = [zero, zero + 1]  # U[j + 1] = U_j(A')
    for _ in range(m):
        U.append(a_trace * U[-1] - U[-2])
    shift = params.half() * params.delta
    sq = QuadExtScalar.sqrt(params.q)
    total, power = zero, zero + 1
    for i in range(l + 1):
        j = m - i
        total = total + power * (U[j + 1] - shift * U[j])
        power = power * sq
    return total


def obstruction(params: SphericalParams) -> QuadExtScalar:
    """y^2-coefficient of F(0, y); vanishes iff a Satake parameter is q^(+-1/2)."""
    q = params.q
    base = QuadExtScalar(q, 1 + Fraction(1, q))
    h = params.half()
    return (base - h * params.A) * (base - h * params.B) / (q - params.delta)
