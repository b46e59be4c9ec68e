"""Saito-Kurokawa Fourier coefficients, Maass-relation checks and the
class-averaged detector.

A lift is specified by its weight ``k``, the Hecke eigenvalues ``c(p)`` of
the underlying elliptic eigenform of weight ``2k - 2`` and, for each
fundamental discriminant ``d``, the base value ``a(d; 1)``.  The base values
are inputs: they are coefficients of a half-integral weight form and are
not derivable from the Hecke data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .bessel import SphericalParams, blm_sk
from .errors import ConfigurationError, DomainError, IncompleteTableError, TableFormatError, UsageError
from .quadforms import (
    QForm,
    enumerate_classes,
    fundamental_split,
    is_discriminant,
    is_fundamental,
    kronecker,
    reduce,
)
from .scalars import QuadExtScalar, factorize, format_rational, parse_rational, valuation


@dataclass(frozen=True)
class EllipticHecke:
    k: int
    eigenvalues: Mapping[int, int]

    def __post_init__(self):
        if self.k < 4 or self.k % 2:
            raise ValueError(f"weight k must be even and >= 4, got {self.k}")

    def c(self, p: int) -> int:
        try:
            return self.eigenvalues[p]
        except KeyError:
            raise ConfigurationError(f"no Hecke eigenvalue for p={p}") from None


@dataclass(frozen=True)
class SKLiftSpec:
    hecke: EllipticHecke
    base: Mapping[int, Fraction]

    @property
    def k(self) -> int:
        return self.hecke.k

    def base_value(self, d: int) -> Fraction:
        try:
            return Fraction(self.base[d])
        except KeyError:
            raise ConfigurationError(f"no base value for d={d}") from None


def hecke_power(h: EllipticHecke, p: int, mu: int) -> int:
    """c(p^mu) via c(p^(j+1)) = c(p) c(p^j) - p^(2k-3) c(p^(j-1))."""
    if mu < 0:
        return 0
    if mu == 0:
        return 1
    cp = h.c(p)
    w = p ** (2 * h.k - 3)
    prev, cur = 1, cp
    for _ in range(mu - 1):
        prev, cur = cur, cp * cur - w * prev
    return cur


def _local_factor(h: EllipticHecke, p: int, a_p: int, b_p: int, delta: int) -> int:
    k = h.k
    return sum(
        p ** (i * (k - 1)) * (hecke_power(h, p, a_p - i) - delta * p ** (k - 2) * hecke_power(h, p, a_p - i - 1))
        for i in range(b_p + 1)
    )


def sk_coefficient_from_invariants(lift: SKLiftSpec, D: int, L: int) -> Fraction:
    """a(D; L) for a class of content L and discriminant D L^2."""
    split = fundamental_split(D * L * L)
    value = lift.base_value(split.d)
    for p, a_p in factorize(split.N1).items():
        value *= _local_factor(lift.hecke, p, a_p, valuation(L, p), kronecker(split.d, p))
    return value


def sk_coefficient(lift: SKLiftSpec, S: QForm) -> Fraction:
    if not S.is_positive_definite():
        raise DomainError(f"{S} is not positive definite")
    L = S.content
    return sk_coefficient_from_invariants(lift, S.disc // (L * L), L)


def sk_coefficient_dks(lift: SKLiftSpec, T: QForm, n: int) -> Fraction:
    """a(nT) for a primitive T of fundamental discriminant."""
    if n < 1:
        raise UsageError("n must be positive")
    if T.content != 1 or not is_fundamental(T.disc) or not T.is_positive_definite():
        raise DomainError(f"{T} is not primitive with fundamental discriminant")
    d, k, h = T.disc, lift.k, lift.hecke
    value = lift.base_value(d)
    for p, nu in factorize(n).items() if n > 1 else ():
        delta = kronecker(d, p)
        value *= sum(
            p ** ((nu - i) * (k - 1)) * (hecke_power(h, p, i) - delta * p ** (k - 2) * hecke_power(h, p, i - 1))
            for i in range(nu + 1)
        )
    return value


def sk_local_params(lift: SKLiftSpec, p: int, d: int) -> SphericalParams:
    """Local data at p: A = c(p) p^(-(2k-3)/2), B = p^(1/2) + p^(-1/2).

    p^(-(2k-3)/2) = sqrt(p) / p^(k-1), so A always lies in Q(sqrt p).
    """
    A = QuadExtScalar(p, 0, Fraction(lift.hecke.c(p), p ** (lift.k - 1)))
    B = QuadExtScalar(p, 0, 1 + Fraction(1, p))
    return SphericalParams(p, A, B, kronecker(d, p))


def sk_coefficient_bessel(lift: SKLiftSpec, d: int, L: int, M: int, p: int) -> Fraction:
    """a(d M^2; L) = (LM)^k a(d; 1) B_p(h(l, m)) for L, M powers of p."""
    if not is_fundamental(d) or d >= 0:
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    l, m = _p_exponent(L, p), _p_exponent(M, p)
    base = lift.base_value(d)
    if l == 0 and m == 0:
        return base
    value = blm_sk(sk_local_params(lift, p, d), l, m) * ((L * M) ** lift.k * base)
    if not value.is_rational():
        raise ArithmeticError(f"irrational coefficient {value}; sqrt({p}) parts failed to cancel")
    return value.x


def _p_exponent(n: int, p: int) -> int:
    if n < 1:
        raise UsageError(f"{n} is not a positive power of {p}")
    e = valuation(n, p)
    if p ** e != n:
        raise UsageError(f"{n} is not a power of {p}")
    return e


@dataclass
class CoefficientTable:
    """Coefficients keyed by reduced positive definite forms."""

    k: int
    entries: dict[QForm, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for S in self.entries:
            _check_key(S)

    def __setitem__(self, S: QForm, value) -> None:
        _check_key(S)
        self.entries[S] = Fraction(value)

    def __getitem__(self, S: QForm) -> Fraction:
        return self.entries[S]

    def __contains__(self, S) -> bool:
        return S in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def copy(self) -> "CoefficientTable":
        return CoefficientTable(self.k, dict(self.entries))

    def value(self, S: QForm) -> Fraction:
        """Coefficient at any form; non-reduced forms are reduced first."""
        R = S if S.is_reduced() else reduce(S)[0]
        try:
            return self.entries[R]
        except KeyError:
            raise IncompleteTableError(f"table has no entry for class {R}") from None

    def sorted_items(self) -> list[tuple[QForm, Fraction]]:
        return sorted(self.entries.items(), key=lambda kv: (kv[0].disc, kv[0].a, kv[0].b, kv[0].c))

    def to_json(self) -> dict:
        return {
            "weight": self.k,
            "entries": [{**S.to_json(), "value": format_rational(v)} for S, v in self.sorted_items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, obj) -> "CoefficientTable":
        if not isinstance(obj, dict) or "weight" not in obj or "entries" not in obj:
            raise TableFormatError('table must be an object with "weight" and "entries"')
        k = obj["weight"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise TableFormatError(f"weight must be an integer, got {k!r}")
        if not isinstance(obj["entries"], list):
            raise TableFormatError('"entries" must be a list')
        table = cls(k)
        for i, e in enumerate(obj["entries"]):
            try:
                S = QForm(*(_int_field(e, key) for key in ("a", "b", "c")))
                value = parse_rational(e["value"])
            except (KeyError, TypeError, ValueError) as exc:
                raise TableFormatError(f"entry {i}: {exc}") from None
            if not S.is_positive_definite() or not S.is_reduced():
                raise TableFormatError(f"entry {i}: {S} is not a reduced positive definite form")
            if S in table.entries:
                raise TableFormatError(f"entry {i}: duplicate class {S}")
            table.entries[S] = value
        return table

    @classmethod
    def loads(cls, text: str) -> "CoefficientTable":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TableFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_json(obj)


def _int_field(entry, key) -> int:
    v = entry[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValueError(f"{key} must be an integer, got {v!r}")
    return v


def _check_key(S: QForm) -> None:
    if not S.is_positive_definite() or not S.is_reduced():
        raise ValueError(f"{S} is not a reduced positive definite form")


def generate_table(lift: SKLiftSpec, disc_bound: int, discs: Optional[Iterable[int]] = None) -> CoefficientTable:
    """SK coefficients on every reduced class with |disc| <= disc_bound.

    Only classes whose fundamental discriminant has a base value are
    included; the base map defines the support of the table.
    """
    if disc_bound < 1:
        raise ValueError("disc_bound must be positive")
    table = CoefficientTable(lift.k)
    wanted = sorted(lift.base) if discs is None else sorted(discs)
    for d in wanted:
        if d >= 0 or not is_fundamental(d):
            raise ConfigurationError(f"base key {d} is not a negative fundamental discriminant")
        N = 1
        while -d * N * N <= disc_bound:
            for L in _divisors(N):
                D = d * (N // L) ** 2
                value = sk_coefficient_from_invariants(lift, D, L)
                for S in enumerate_classes(D, L):
                    table.entries[S] = value
            N += 1
    return table


def _divisors(n: int) -> list[int]:
    return [r for r in range(1, n + 1) if n % r == 0]


@dataclass
class MaassRow:
    form: QForm
    lhs: Fraction
    rhs: Optional[Fraction]
    status: str  # "pass", "fail", "incomplete"

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "lhs": format_rational(self.lhs),
            "rhs": None if self.rhs is None else format_rational(self.rhs),
            "status": self.status,
        }


@dataclass
class MaassReport:
    rows: list[MaassRow]
    class_function_failures: list[dict]

    @property
    def failed(self) -> list[MaassRow]:
        return [r for r in self.rows if r.status == "fail"]

    @property
    def incomplete(self) -> list[MaassRow]:
        return [r for r in self.rows if r.status == "incomplete"]

    @property
    def ok(self) -> bool:
        return not self.failed and not self.incomplete and not self.class_function_failures

    def to_json(self) -> dict:
        return {
            "checked": len(self.rows),
            "passed": sum(r.status == "pass" for r in self.rows),
            "failed": [r.to_json() for r in self.failed],
            "incomplete": [r.to_json() for r in self.incomplete],
            "class_function_failures": self.class_function_failures,
            "ok": self.ok,
        }


def maass_check(table: CoefficientTable) -> MaassReport:
    """Check a(D; L) = sum_{r | L} r^(k-1) a(D (L/r)^2; 1) on every entry,
    and that entries sharing (disc, content) share one value."""
    k = table.k
    rows = []
    for S, lhs in table.sorted_items():
        L = S.content
        D = S.disc // (L * L)
        rhs = Fraction(0)
        status = "pass"
        for r in _divisors(L):
            rep = QForm(S.a * S.c // (r * r), S.b // r, 1)
            rep = reduce(rep)[0]
            if rep not in table.entries:
                status = "incomplete"
                break
            rhs += Fraction(r) ** (k - 1) * table.entries[rep]
        if status == "incomplete":
            rows.append(MaassRow(S, lhs, None, status))
            continue
        rows.append(MaassRow(S, lhs, rhs, "pass" if lhs == rhs else "fail"))
    seen: dict[tuple[int, int], tuple[QForm, Fraction]] = {}
    mismatches = []
    for S, v in table.sorted_items():
        key = (S.disc, S.content)
        if key in seen and seen[key][1] != v:
            first, fv = seen[key]
            mismatches.append(
                {"disc": key[0], "content": key[1], "forms": [first.to_json(), S.to_json()],
                 "values": [format_rational(fv), format_rational(v)]}
            )
        seen.setdefault(key, (S, v))
    return MaassReport(rows, mismatches)


def average_coeff(table: CoefficientTable, D: int, L: int) -> Fraction:
    """Mean of the coefficients over the classes of H(D; L)."""
    if D >= 0 or not is_discriminant(D):
        raise DomainError(f"{D} is not a negative discriminant")
    classes = enumerate_classes(D, L)
    missing = [S for S in classes if S not in table.entries]
    if missing:
        raise IncompleteTableError(f"H({D};{L}) classes missing from table: {missing}")
    return sum((table.entries[S] for S in classes), Fraction(0)) / len(classes)


class Verdict(str, Enum):
    CONSISTENT = "SpezialscharConsistent"
    FAILS = "Fails"
    BASE_VANISHES = "BaseVanishes"


@dataclass
class DetectorResult:
    verdict: Verdict
    d: int
    p: int
    base: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def defect(self) -> Fraction:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "d": self.d,
            "p": self.p,
            "a~(d;1)": format_rational(self.base),
            "a~(d;p)": format_rational(self.lhs),
            "a~(dp^2;1) + p^(k-1) a~(d;1)": format_rational(self.rhs),
            "defect": format_rational(self.defect),
        }


def _averaged_relation(table: CoefficientTable, d: int, p: int) -> tuple[Fraction, Fraction, Fraction]:
    base = average_coeff(table, d, 1)
    lhs = average_coeff(table, d, p)
    rhs = average_coeff(table, d * p * p, 1) + Fraction(p) ** (table.k - 1) * base
    return base, lhs, rhs


def detect_sk(table: CoefficientTable, d: int, p: int) -> DetectorResult:
    """Single averaged Maass relation at (d, p)."""
    if d >= 0 or not is_fundamental(d):
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    base, lhs, rhs = _averaged_relation(table, d, p)
    if base == 0:
        verdict = Verdict.BASE_VANISHES
    elif lhs == rhs:
        verdict = Verdict.CONSISTENT
    else:
        verdict = Verdict.FAILS
    return DetectorResult(verdict, d, p, base, lhs, rhs)


def detect_asymptotic(table: CoefficientTable, d: int, primes: Iterable[int]) -> list[dict]:
    """p^(1-k) (a~(d;p) - a~(dp^2;1) - p^(k-1) a~(d;1)) for each prime.

    Entries are ``{"p": p, "value": Fraction}`` or ``{"p": p, "incomplete": msg}``.
    """
    if d >= 0 or not is_fundamental(d):
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    out = []
    for p in primes:
        try:
            _, lhs, rhs = _averaged_relation(table, d, p)
        except IncompleteTableError as exc:
            out.append({"p": p, "incomplete": str(exc)})
            continue
        out.append({"p": p, "value": Fraction(p) ** (1 - table.k) * (lhs - rhs)})
    return out
