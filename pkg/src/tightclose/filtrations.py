"""Ideal filtrations and their Hilbert functions.

A filtration {I_n} is evaluated ideal by ideal (I_n = R for n <= 0); lengths
come from :func:`tightclose.quotient.length_of_quotient`. Hilbert
coefficients are written in the binomial basis

    P(n) = e_0 C(n+d-1, d) - e_1 C(n+d-2, d-1) + ... + (-1)^d e_d
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .idealops import Ideal, interreduce
from .quotient import QuotientRing, length_of_quotient, maximal_power
from .tightclosure import DiagonalRing, tight_closure_power_diagonal


class NotMPrimaryError(ValueError):
    pass


class NotYetStableError(ValueError):
    """The sampled values do not yet follow one integer polynomial."""


def binom(a: int, b: int) -> int:
    """C(a, b) as the polynomial a(a-1)...(a-b+1)/b!; zero for b < 0."""
    if b < 0:
        return 0
    num = 1
    for i in range(b):
        num *= a - i
    return num // math.factorial(b)


@dataclass(eq=False)
class Filtration:
    R: QuotientRing
    base: Ideal
    kind: str
    diagonal: DiagonalRing | None = None
    ideals: list = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in ("adic", "m_power", "tight_diagonal", "explicit"):
            raise ValueError(f"unknown filtration kind {self.kind!r}")
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def adic(cls, R: QuotientRing, I: Ideal) -> Filtration:
        return cls(R, I, "adic")

    @classmethod
    def m_power(cls, R: QuotientRing, base: Ideal) -> Filtration:
        """I_n = m^n, the tight and integral closure filtration of an lsop ideal."""
        return cls(R, base, "m_power")

    @classmethod
    def tight_diagonal(cls, D: DiagonalRing) -> Filtration:
        return cls(D.R, D.I, "tight_diagonal", diagonal=D)

    @classmethod
    def explicit(cls, R: QuotientRing, base: Ideal, ideals: Sequence[Ideal]) -> Filtration:
        """I_1..I_k as given; beyond k, I_n = I^(n-k) * I_k."""
        if not ideals:
            raise ValueError("explicit filtration needs at least one ideal")
        return cls(R, base, "explicit", ideals=list(ideals))

    @property
    def dim(self) -> int:
        return self.R.dim

    def __getitem__(self, n: int) -> Ideal:
        return filtration_ideal(self, n)

    def _compute(self, n: int) -> Ideal:
        R = self.R
        if self.kind == "adic":
            return R.pow(self.base, n)
        if self.kind == "m_power":
            return interreduce(R.lift(maximal_power(R.ambient, n)))
        if self.kind == "tight_diagonal":
            return tight_closure_power_diagonal(self.diagonal, n)
        k = len(self.ideals)
        if n <= k:
            return interreduce(R.lift(self.ideals[n - 1]))
        return R.mul(R.pow(self.base, n - k), self.ideals[k - 1])


def filtration_ideal(F: Filtration, n: int) -> Ideal:
    if n <= 0:
        return Ideal.unit(F.R.ambient)
    with F._lock:
        hit = F._cache.get(n)
    if hit is None:
        hit = F._compute(n)
        with F._lock:
            F._cache.setdefault(n, hit)
    return hit


def _finite_length(R: QuotientRing, J: Ideal) -> int:
    value = length_of_quotient(R, J)
    if value == math.inf:
        raise NotMPrimaryError("quotient has infinite length; filtration is not m-primary")
    return value


def hilbert_values(F: Filtration, ns: Sequence[int]) -> list[int]:
    """ℓ(R/I_n) for each n."""
    return [_finite_length(F.R, filtration_ideal(F, n)) for n in ns]


@dataclass(frozen=True)
class HilbertCoefficients:
    d: int
    e: tuple
    stable_from: int | None = None

    def __call__(self, n: int) -> int:
        return hilbert_polynomial_value(self.e, self.d, n)


def hilbert_polynomial_value(e: Sequence[int], d: int, n: int) -> int:
    return sum((-1) ** i * e[i] * binom(n + d - 1 - i, d - i) for i in range(d + 1))


def _solve_exact(A: list[list[int]], b: list[int]) -> list[Fraction]:
    """Solve a square integer system: Bareiss elimination, exact back-substitution."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    break
            else:
                raise ZeroDivisionError("singular system")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    if M[n - 1][n - 1] == 0:
        raise ZeroDivisionError("singular system")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n]) - sum(M[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / M[i][i]
    return x


def fit_hilbert_coefficients(values: Sequence[int], offsets: Sequence[int], d: int) -> HilbertCoefficients:
    """Integer Hilbert coefficients from samples ``values[i] = H(offsets[i])``.

    A (d+1)-sample window slides forward until its solution is integral and
    reproduces every later sample; at least two later samples are required.
    """
    if len(values) != len(offsets):
        raise ValueError("values and offsets differ in length")
    width = d + 1
    if len(values) < width + 2:
        raise NotYetStableError(f"need at least {width + 2} samples, got {len(values)}")

    def row(n):
        return [(-1) ** i * binom(n + d - 1 - i, d - i) for i in range(width)]

    for s in range(len(values) - width - 1):
        idx = range(s, s + width)
        try:
            sol = _solve_exact([row(offsets[i]) for i in idx], [values[i] for i in idx])
        except ZeroDivisionError:
            continue
        if any(x.denominator != 1 for x in sol):
            continue
        e = tuple(int(x) for x in sol)
        if all(hilbert_polynomial_value(e, d, offsets[i]) == values[i] for i in range(s + width, len(values))):
            start = s
            while start > 0 and hilbert_polynomial_value(e, d, offsets[start - 1]) == values[start - 1]:
                start -= 1
            return HilbertCoefficients(d, e, offsets[start])
    raise NotYetStableError("no stable polynomial window; extend the sample range")


@dataclass(frozen=True)
class HiPResult:
    holds: bool
    n: int
    p_cond: int

    def __str__(self):
        return f"HoldsUpTo({self.n})" if self.holds else f"FailsAt({self.n})"


def hi_p_check(F: Filtration, p_cond: int, n_max: int) -> HiPResult:
    """Check I_(n+1) ∩ I^(n-p) = I_(p+1) I^(n-p) for p <= n <= n_max."""
    R, I = F.R, F.base
    rhs_base = filtration_ideal(F, p_cond + 1)
    for n in range(p_cond, n_max + 1):
        Ip = R.pow(I, n - p_cond)
        rhs = R.mul(rhs_base, Ip)
        if n == p_cond:
            lhs = filtration_ideal(F, n + 1)
        else:
            lhs = R.intersect(filtration_ideal(F, n + 1), Ip)
        if not R.equals(lhs, rhs):
            return HiPResult(False, n, p_cond)
    return HiPResult(True, n_max, p_cond)


def filtration_reduction_number(F: Filtration, n_max: int) -> int:
    """Smallest r with I*I_n = I_(n+1) for all r <= n <= n_max."""
    R, I = F.R, F.base
    stable = [R.equals(R.mul(I, filtration_ideal(F, n)), filtration_ideal(F, n + 1))
              for n in range(n_max + 1)]
    r = n_max + 1
    while r > 0 and stable[r - 1]:
        r -= 1
    if r > n_max:
        raise RuntimeError(f"filtration does not stabilise by n_max={n_max}")
    return r


def correction_lengths(F: Filtration, r: int) -> list[int]:
    """ℓ(I_(k+1) / I I_k) for k = 0..r-1."""
    R, I = F.R, F.base
    out = []
    for k in range(r):
        Ik = filtration_ideal(F, k)
        out.append(_finite_length(R, R.mul(I, Ik)) - _finite_length(R, filtration_ideal(F, k + 1)))
    return out


def hsp_coefficients(F: Filtration, r: int, d: int | None = None) -> HilbertCoefficients:
    """Hilbert coefficients from correction lengths, valid under HI_p for p <= r-2."""
    d = F.dim if d is None else d
    e0 = _finite_length(F.R, F.base)
    corr = correction_lengths(F, r)
    e = [e0] + [sum(binom(k, i - 1) * corr[k] for k in range(i - 1, r)) for i in range(1, d + 1)]
    return HilbertCoefficients(d, tuple(e), None)


def binomial_expand(d: int, k: int, n: int) -> tuple[int, int]:
    """Both sides of C(n+d-k-1, d-1) = sum_j (-1)^(j-1) C(k, j-1) C(n+d-j, d-j)."""
    if d < 1 or k < 1:
        raise ValueError("d and k must be >= 1")
    lhs = binom(n + d - k - 1, d - 1)
    rhs = sum((-1) ** (j - 1) * binom(k, j - 1) * binom(n + d - j, d - j) for j in range(1, k + 2))
    return lhs, rhs


def huckaba_marley_bound(F: Filtration, coeffs: HilbertCoefficients | None = None, n_max: int = 8) -> bool:
    """e_1 >= e_0 - ℓ(R/I_1)."""
    if coeffs is None:
        ns = list(range(1, n_max + 1))
        coeffs = fit_hilbert_coefficients(hilbert_values(F, ns), ns, F.dim)
    return coeffs.e[1] >= coeffs.e[0] - _finite_length(F.R, filtration_ideal(F, 1))


def length_table(F: Filtration, ns: Sequence[int], coeffs: HilbertCoefficients) -> list[dict]:
    rows = []
    for n, v in zip(ns, hilbert_values(F, ns)):
        pred = coeffs(n)
        rows.append({"n": n, "length": v, "predicted": pred, "residual": v - pred})
    return rows
