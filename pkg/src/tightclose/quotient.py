"""Quotient rings k[X]/M, lengths of quotients and graded dimensions.

Lengths are counts of standard monomials, so they agree with the local
lengths for homogeneous m-primary ideals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from itertools import product as cartesian

from . import _kernels
from .idealops import (
    Ideal,
    ideal_contains,
    ideal_equals,
    intersect,
    interreduce,
    product,
    with_modulus,
)
from .polyring import GREVLEX, PolyRing, Polynomial, divides

INFINITE = math.inf


@dataclass(eq=False)
class QuotientRing:
    """``ambient / modulus``. ``kind`` is "free", "diagonal" or "stanley_reisner"."""

    ambient: PolyRing
    modulus: Ideal
    kind: str = "free"
    dim: int | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus.ring != self.ambient:
            raise ValueError("modulus lives in a different ring")
        if self.dim is None and self.kind == "free":
            self.dim = self.ambient.nvars

    @classmethod
    def free(cls, ambient: PolyRing) -> QuotientRing:
        return cls(ambient, Ideal(ambient), "free", ambient.nvars)

    @classmethod
    def diagonal_hypersurface(cls, N: int, p: int, names="x y z") -> QuotientRing:
        """F_p[x,y,z]/(x^N + y^N + z^N); requires p not dividing N."""
        if N < 2:
            raise ValueError("N must be at least 2")
        if N % p == 0:
            raise ValueError(f"p={p} divides N={N}")
        S = PolyRing.make(p, names)
        f = sum((v ** N for v in S.gens()), S.zero())
        return cls(S, Ideal(S, [f]), "diagonal", 2, {"N": N})

    @property
    def p(self) -> int:
        return self.ambient.p

    def ideal(self, *gens) -> Ideal:
        S = self.ambient
        return Ideal(S, [S(g) if isinstance(g, str) else g for g in gens])

    def maximal_ideal(self) -> Ideal:
        return Ideal.maximal(self.ambient)

    def lift(self, I: Ideal) -> Ideal:
        return with_modulus(I, self.modulus)

    # ideal arithmetic in R: ambient op on representatives, then lift
    def mul(self, I: Ideal, J: Ideal) -> Ideal:
        return interreduce(self.lift(product(I, J)))

    def pow(self, I: Ideal, n: int) -> Ideal:
        out = Ideal.unit(self.ambient)
        for _ in range(n):
            out = self.mul(out, I)
        return out

    def add(self, I: Ideal, J: Ideal) -> Ideal:
        return interreduce(self.lift(I + J))

    def intersect(self, I: Ideal, J: Ideal) -> Ideal:
        return intersect(interreduce(self.lift(I)), interreduce(self.lift(J)))

    def equals(self, I: Ideal, J: Ideal) -> bool:
        return ideal_equals(self.lift(I), self.lift(J))

    def contains(self, I: Ideal, J: Ideal) -> bool:
        """True iff J ⊆ I in R."""
        return ideal_contains(self.lift(I), J)

    def length(self, J: Ideal) -> int | float:
        return length_of_quotient(self, J)


def _standard_bounds(leads, nvars):
    bounds = []
    for j in range(nvars):
        pure = [m[j] for m in leads if sum(m) == m[j] and m[j] > 0]
        if not pure:
            return None
        bounds.append(min(pure))
    return bounds


def length_of_quotient(R: QuotientRing, J: Ideal) -> int | float:
    """dim_k R/J, or ``INFINITE`` when J + modulus is not m-primary."""
    lifted = R.lift(J) if J.ring == R.ambient else None
    if lifted is None:
        raise ValueError("ideal lives outside the ambient ring")
    G = lifted.gb(GREVLEX)
    if not G:
        return INFINITE
    leads = [g.leading_monomial(GREVLEX) for g in G]
    n = R.ambient.nvars
    if any(sum(m) == 0 for m in leads):
        return 0
    bounds = _standard_bounds(leads, n)
    if bounds is None:
        return INFINITE
    return _kernels.count_standard_box(_kernels.as_lead_array(leads, n), bounds)


def graded_dim(R: QuotientRing, n: int) -> int:
    """Dimension of the degree-n piece of R (modulus must be homogeneous)."""
    if any(not g.is_homogeneous() for g in R.modulus.gens):
        raise ValueError("graded_dim needs a homogeneous modulus")
    if n < 0:
        return 0
    G = R.modulus.gb(GREVLEX)
    leads = [g.leading_monomial(GREVLEX) for g in G]
    nv = R.ambient.nvars
    return _kernels.count_standard_degree(_kernels.as_lead_array(leads, nv), nv, n)


def standard_monomials(R: QuotientRing, J: Ideal) -> list[tuple]:
    """Explicit standard monomials of R/J (finite case only); small inputs."""
    G = R.lift(J).gb(GREVLEX)
    leads = [g.leading_monomial(GREVLEX) for g in G]
    bounds = _standard_bounds(leads, R.ambient.nvars)
    if bounds is None:
        raise ValueError("quotient has infinite length")
    out = [m for m in cartesian(*(range(b) for b in bounds))
           if not any(divides(g, m) for g in leads)]
    return sorted(out, key=GREVLEX.key)


def monomials_of_degree(ring: PolyRing, k: int) -> list[Polynomial]:
    out = []
    for combo in combinations_with_replacement(range(ring.nvars), k):
        e = [0] * ring.nvars
        for i in combo:
            e[i] += 1
        out.append(ring.monomial(e))
    return out


def maximal_power(ring: PolyRing, k: int) -> Ideal:
    """m^k generated directly by its monomials."""
    if k <= 0:
        return Ideal.unit(ring)
    return Ideal(ring, monomials_of_degree(ring, k))


__all__ = [
    "INFINITE",
    "QuotientRing",
    "graded_dim",
    "length_of_quotient",
    "maximal_power",
    "monomials_of_degree",
    "standard_monomials",
]
