"""Ideals in F_p[x_1..x_n]: arithmetic, Frobenius powers, intersection, membership.

Quotient-ring work is done on lifted ideals: pass ``modulus`` and it is
adjoined before any Groebner computation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from .polyring import (
    GREVLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    RingMismatchError,
    block_order,
    buchberger,
    normal_form,
)


class Ideal:
    """Ideal given by generators; reduced Groebner bases are cached per order."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        seen = set()
        out = []
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g.is_zero():
                continue
            key = frozenset(g.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(g)
        self.gens: list[Polynomial] = out
        self._gb: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolyRing) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: PolyRing) -> Ideal:
        return cls(ring, ring.gens())

    def gb(self, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
        with self._lock:
            cached = self._gb.get(order)
        if cached is None:
            cached = buchberger(self.gens, order)
            with self._lock:
                self._gb.setdefault(order, cached)
        return cached

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        G = self.gb()
        return len(G) == 1 and G[0] == self.ring.one()

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def to_text(self) -> list[str]:
        return [str(g) for g in self.gens]

    # operator sugar
    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return product(self, other)

    def __pow__(self, n: int) -> Ideal:
        return power(self, n)


def _same_ring(*ideals: Ideal) -> PolyRing:
    ring = ideals[0].ring
    for J in ideals[1:]:
        if J.ring != ring:
            raise RingMismatchError("ideals live in different rings")
    return ring


def with_modulus(I: Ideal, modulus: Ideal | None) -> Ideal:
    if modulus is None or modulus.is_zero():
        return I
    return ideal_sum(I, modulus)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, list(I.gens) + list(J.gens))


def product(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, [f * g for f in I.gens for g in J.gens])


def power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative ideal power")
    result = Ideal.unit(I.ring)
    for _ in range(n):
        result = product(result, I)
    return result


def interreduce(I: Ideal, order: MonomialOrder = GREVLEX) -> Ideal:
    """The same ideal generated by its reduced Groebner basis."""
    return Ideal(I.ring, I.gb(order))


def bracket_power(I: Ideal, q: int) -> Ideal:
    """Frobenius power: the ideal generated by q-th powers of the generators."""
    p = I.ring.p
    e, r = 0, q
    while r > 1 and r % p == 0:
        r //= p
        e += 1
    if q < 1 or r != 1:
        raise ValueError(f"q={q} is not a power of the characteristic {p}")
    return Ideal(I.ring, [g.frobenius(q) for g in I.gens])


def contains_poly(I: Ideal, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
    if f.ring != I.ring:
        raise RingMismatchError("polynomial from a different ring")
    if f.is_zero():
        return True
    G = I.gb(order)
    if not G:
        return False
    return normal_form(f, G, order).is_zero()


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I."""
    _same_ring(I, J)
    return all(contains_poly(I, g) for g in J.gens)


def ideal_equals(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    # reduced GBs are canonical, so equal bases settle it immediately
    if [g.terms for g in I.gb()] == [g.terms for g in J.gb()]:
        return True
    return ideal_contains(I, J) and ideal_contains(J, I)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    ring = _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    big = ring.extend([_fresh_name(ring)])
    t = big.var(0)
    one_minus_t = big.one() - t
    gens = [t * ring.embed(g, big) for g in I.gb()]
    gens += [one_minus_t * ring.embed(g, big) for g in J.gb()]
    G = buchberger(gens, block_order(1))
    out = []
    for g in G:
        if all(m[0] == 0 for m in g.terms):
            out.append(Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}))
    return Ideal(ring, out)


def _fresh_name(ring: PolyRing) -> str:
    name = "_t"
    while name in ring.variables:
        name += "_"
    return name


@dataclass(frozen=True)
class ReductionResult:
    """``holds`` with the smallest witnessing ``n``, or failure up to ``n``."""

    holds: bool
    n: int

    def __str__(self):
        return f"YesAt({self.n})" if self.holds else f"NoUpTo({self.n})"


def is_reduction(J: Ideal, I: Ideal, n_max: int, modulus: Ideal | None = None) -> ReductionResult:
    """Smallest n <= n_max with J*I^n = I^(n+1) (modulo ``modulus``)."""
    _same_ring(J, I)
    if not ideal_contains(with_modulus(I, modulus), J):
        raise ValueError("J is not contained in I")
    In = Ideal.unit(I.ring)
    for n in range(n_max + 1):
        lhs = with_modulus(product(J, In), modulus)
        In1 = interreduce(with_modulus(product(In, I), modulus))
        if ideal_equals(lhs, In1):
            return ReductionResult(True, n)
        In = In1
    return ReductionResult(False, n_max)


def ideal_from_text(ring: PolyRing, gens: Sequence[str]) -> Ideal:
    return Ideal(ring, [ring(s) for s in gens])
