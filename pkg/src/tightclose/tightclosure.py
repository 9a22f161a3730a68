"""Tight closure in diagonal hypersurfaces F_p[x,y,z]/(x^N + y^N + z^N).

Membership uses the test element c = z^(N-1): x lies in J* iff
c * x^q lies in J^[q] for every q = p^e. A failure at one e is a proof of
non-membership; passing every tested e is only evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement

from .idealops import Ideal, bracket_power, contains_poly, interreduce
from .polyring import MAX_EXPONENT, Polynomial
from .quotient import QuotientRing, maximal_power, standard_monomials

# q = p^e with e above this cap makes Groebner bases too large for a desk run.
E_MAX_CAP = 3


@dataclass(eq=False)
class DiagonalRing:
    N: int
    p: int

    def __post_init__(self):
        if self.N % self.p == 0:
            raise ValueError(f"p={self.p} divides N={self.N}; the ring is not reduced as intended")

    @cached_property
    def R(self) -> QuotientRing:
        return QuotientRing.diagonal_hypersurface(self.N, self.p)

    @property
    def S(self):
        return self.R.ambient

    @cached_property
    def I(self) -> Ideal:
        return self.R.ideal("y", "z")

    @cached_property
    def m(self) -> Ideal:
        return self.R.maximal_ideal()

    @cached_property
    def test_element(self) -> Polynomial:
        return self.S.var("z") ** (self.N - 1)

    def monomial(self, a: int, b: int, c: int) -> Polynomial:
        return self.S.monomial((a, b, c))


@dataclass(frozen=True)
class MembershipVerdict:
    """``member`` False: NotMember(e) is a proof; True: MemberUpTo(e) is evidence."""

    member: bool
    e: int
    tested: tuple = ()

    def __str__(self):
        return f"MemberUpTo({self.e})" if self.member else f"NotMember({self.e})"


def tight_membership(D: DiagonalRing, f: Polynomial, J: Ideal, e_range=(1, 2)) -> MembershipVerdict:
    """Test c*f^q in J^[q] + (modulus) for q = p^e, e in ``e_range`` (inclusive)."""
    e_min, e_max = e_range
    if e_min < 1 or e_max < e_min:
        raise ValueError(f"bad e range {e_range}")
    if e_max > E_MAX_CAP:
        raise ValueError(f"e_max={e_max} exceeds the cap {E_MAX_CAP}; use a smaller e_max")
    tested = []
    first_fail = None
    for e in range(e_min, e_max + 1):
        q = D.p**e
        if max(f.degree(), max((g.degree() for g in J.gens), default=0)) * q + D.N > MAX_EXPONENT:
            raise OverflowError(f"exponents overflow at e={e}; use a smaller e_max")
        target = D.test_element * f.frobenius(q)
        ok = contains_poly(D.R.lift(bracket_power(J, q)), target)
        tested.append((e, ok))
        if not ok and first_fail is None:
            first_fail = e
    if first_fail is not None:
        return MembershipVerdict(False, first_fail, tuple(tested))
    return MembershipVerdict(True, e_max, tuple(tested))


def tight_closure_power_diagonal(D: DiagonalRing, k: int) -> Ideal:
    """(I^k)* in closed form: m^(k+1) + I^k for N >= 3, I^k for N = 2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    Ik = D.R.pow(D.I, k)
    if D.N == 2:
        return Ik
    return interreduce(D.R.lift(maximal_power(D.S, k + 1) + Ik))


@dataclass
class ClosedFormReport:
    N: int
    p: int
    k: int
    e_max: int
    records: list = field(default_factory=list)

    @property
    def disagreements(self) -> list:
        return [r for r in self.records if not r["agree"]]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _monomials_up_to(total: int):
    for deg in range(total + 1):
        for combo in combinations_with_replacement(range(3), deg):
            e = [0, 0, 0]
            for i in combo:
                e[i] += 1
            yield tuple(e)


def verify_closed_form(D: DiagonalRing, k: int, e_max: int = 2) -> ClosedFormReport:
    """Probe every monomial of degree <= k+1 against the closed form of (I^k)*."""
    closed = tight_closure_power_diagonal(D, k)
    Ik = D.R.pow(D.I, k)
    report = ClosedFormReport(D.N, D.p, k, e_max)
    for a, b, c in sorted(set(_monomials_up_to(k + 1))):
        mono = D.monomial(a, b, c)
        expected = contains_poly(closed, mono)
        verdict = tight_membership(D, mono, Ik, (1, e_max))
        report.records.append({
            "monomial": str(mono),
            "verdict": str(verdict),
            "expected": "member" if expected else "non-member",
            "agree": verdict.member == expected,
        })
    return report


def tight_reduction_number(D: DiagonalRing, k_max: int) -> int:
    """Smallest r with I*(I^k)* = (I^(k+1))* for r <= k <= k_max."""
    if k_max < D.N - 1:
        raise ValueError(f"k_max={k_max} < N-1={D.N - 1}: window too small")
    closures = [D.R.lift(Ideal.unit(D.S))]
    closures += [tight_closure_power_diagonal(D, k) for k in range(1, k_max + 2)]
    stable = [D.R.equals(D.R.mul(D.I, closures[k]), closures[k + 1]) for k in range(k_max + 1)]
    r = k_max + 1
    while r > 0 and stable[r - 1]:
        r -= 1
    if r > k_max:
        raise RuntimeError("tight filtration did not stabilise within k_max")
    return r


@dataclass(frozen=True)
class FRationality:
    f_rational: bool
    witness: str | None
    e1_star: int
    consistent: bool

    def __str__(self):
        if self.f_rational:
            return f"FRational(e1*={self.e1_star})"
        return f"NotFRational({self.witness} in I*, e1*={self.e1_star})"


def f_rationality_probe(D: DiagonalRing, e_max: int = 2) -> FRationality:
    """Is I = (y, z) tightly closed? Cross-checked against e1* of the tight filtration.

    Every standard monomial of R/I of positive degree (x, x^2, ..., x^(N-1)) is
    probed; a MemberUpTo verdict marks a witness of I != I*.
    """
    from .filtrations import Filtration, fit_hilbert_coefficients, hilbert_values

    witness = None
    for mono in standard_monomials(D.R, D.I):
        if sum(mono) == 0:
            continue
        f = D.S.monomial(mono)
        if tight_membership(D, f, D.I, (1, e_max)).member:
            witness = str(f)
            break
    F = Filtration.tight_diagonal(D)
    ns = list(range(1, 8))
    coeffs = fit_hilbert_coefficients(hilbert_values(F, ns), ns, 2)
    e1 = coeffs.e[1]
    return FRationality(witness is None, witness, e1, (witness is None) == (e1 == 0))
