"""Sparse multivariate polynomials over F_p, monomial orders and Buchberger.

Monomials are exponent tuples. A polynomial is a dict ``{exponents: coeff}``
with coefficients kept in ``[0, p)`` and no zero entries.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

Monomial = tuple

# q = p^e is capped so exponent tuples stay desk-sized.
MAX_EXPONENT = 2**31 - 1


class RingMismatchError(ValueError):
    pass


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


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class MonomialOrder:
    """Term order on exponent tuples.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``; a block order
    eliminates the first ``split`` variables and uses grevlex in each block.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    def key(self, m: Monomial) -> tuple:
        """Integer tuple whose natural ordering is this term order."""
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return tuple(m)
        k = self.split
        return _grevlex_key(m[:k]) + _grevlex_key(m[k:])

    def neg_key(self, m: Monomial) -> tuple:
        return tuple(-v for v in self.key(m))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


def _grevlex_key(m) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


def compare(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"monomials of different length: {a} vs {b}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def minimalize(monos: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators of the monomial ideal generated by ``monos``."""
    out: list[Monomial] = []
    for m in sorted(set(monos), key=sum):
        if not any(divides(g, m) for g in out):
            out.append(m)
    return sorted(out, key=GREVLEX.key, reverse=True)


@dataclass(frozen=True)
class PolyRing:
    field: PrimeField
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")

    @classmethod
    def make(cls, p: int, variables: Sequence[str] | str) -> PolyRing:
        if isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        return cls(PrimeField(p), tuple(variables))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: int) -> Polynomial:
        return self.monomial((0,) * self.nvars, c)

    def monomial(self, exps: Sequence[int], c: int = 1) -> Polynomial:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        c %= self.p
        return Polynomial(self, {exps: c} if c else {})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int | str) -> Polynomial:
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def extend(self, new_vars: Sequence[str]) -> PolyRing:
        """Ring with ``new_vars`` prepended (they come first in every order)."""
        return PolyRing(self.field, tuple(new_vars) + self.variables)

    def embed(self, f: Polynomial, target: PolyRing) -> Polynomial:
        """Map ``f`` into ``target``, which must end with this ring's variables."""
        shift = target.nvars - self.nvars
        if target.variables[shift:] != self.variables or target.p != self.p:
            raise RingMismatchError("target does not extend this ring")
        pad = (0,) * shift
        return Polynomial(target, {pad + m: c for m, c in f.terms.items()})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def __call__(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: Polynomial):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ring.const(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: int = 1) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(m, mono): (v * c) % p for m, v in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if self.is_monomial():
            (m, c), = self.terms.items()
            e = tuple(x * n for x in m)
            if any(x > MAX_EXPONENT for x in e):
                raise OverflowError("exponent overflow")
            return Polynomial(self.ring, {e: pow(c, n, self.ring.p)})
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, q: int) -> Polynomial:
        """``f^q`` for ``q`` a power of p: raise each term separately."""
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            e = tuple(x * q for x in m)
            if any(x > MAX_EXPONENT for x in e):
                raise OverflowError("exponent overflow in Frobenius power")
            out[e] = pow(c, q, p)
        return Polynomial(self.ring, out)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


# -- text syntax --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``3*X^2*Y + Z^5 - 1`` style text (``**`` and parentheses allowed)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        num, name, op = mt.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if name not in ring.variables:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = mt.end()
    if not tokens:
        raise ValueError("empty polynomial text")
    parser = _Parser(tokens, ring)
    f = parser.expr()
    if parser.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return f


class _Parser:
    def __init__(self, tokens, ring):
        self.t = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        f = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            f = f * self.power()
        return f

    def power(self):
        f = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a natural number")
            f = f**val
        return f

    def atom(self):
        kind, val = self.take()
        if kind is None:
            raise ValueError("unexpected end of input")
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return f
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.variables
    parts = []
    for m, c in f.sorted_terms(order):
        # symmetric representative reads better: -y^3 instead of 6*y^3 in F_7
        neg = c > p // 2
        a = p - c if neg else c
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(a)] + factors)
        parts.append(("-", body) if neg else ("+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


# -- division and Groebner bases ------------------------------------------


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of the zero polynomial")
    f._check(g)
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    field = f.ring.field
    a = f.mul_term(mono_div(lcm, lf), field.inv(f.terms[lf]))
    b = g.mul_term(mono_div(lcm, lg), field.inv(g.terms[lg]))
    return a - b


def _reducers(G: Sequence[Polynomial], order: MonomialOrder):
    out = []
    for g in G:
        if g.is_zero():
            raise ValueError("zero polynomial in divisor list")
        lm = g.leading_monomial(order)
        inv = g.ring.field.inv(g.terms[lm])
        tail = [(m, c) for m, c in g.terms.items() if m != lm]
        out.append((lm, inv, tail))
    return out


def _reduce(f: Polynomial, reducers, order: MonomialOrder) -> Polynomial:
    ring = f.ring
    p = ring.p
    work = dict(f.terms)
    heap = [(order.neg_key(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    neg_key = order.neg_key
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for lm, inv, tail in reducers:
            if all(a <= b for a, b in zip(lm, m)):
                q = tuple(b - a for a, b in zip(lm, m))
                coef = (c * inv) % p
                for tm, tc in tail:
                    mm = tuple(x + y for x, y in zip(tm, q))
                    old = work.get(mm)
                    v = ((old or 0) - coef * tc) % p
                    if v:
                        if old is None:
                            heapq.heappush(heap, (neg_key(mm), mm))
                        work[mm] = v
                    elif old is not None:
                        del work[mm]
                break
        else:
            rem[m] = c
    return Polynomial(ring, rem)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of full multivariate division of ``f`` by ``G``."""
    for g in G:
        f._check(g)
    if not G:
        return f
    return _reduce(f, _reducers(G, order), order)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy with the product and chain criteria. The
    result is monic, interreduced and sorted by decreasing leading term.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    if all(g.is_monomial() for g in gens):
        return [ring.monomial(m) for m in minimalize(next(iter(g.terms)) for g in gens)]

    G: list[Polynomial] = []
    lms: list[Monomial] = []
    pairs: dict = {}

    def add(h: Polynomial):
        h = h.monic(order)
        lm = h.leading_monomial(order)
        j = len(G)
        G.append(h)
        lms.append(lm)
        for i in range(j):
            if lms[i] is not None:
                pairs[(i, j)] = mono_lcm(lms[i], lm)

    # seed with interreduced input so the pair set starts small
    for g in sorted(gens, key=lambda f: order.key(f.leading_monomial(order))):
        live = [G[i] for i in range(len(G)) if lms[i] is not None]
        h = normal_form(g, live, order) if live else g
        if not h.is_zero():
            add(h)
            if h.is_monomial() and sum(lms[-1]) == 0:
                return [ring.one()]

    while pairs:
        (i, j), lcm = min(pairs.items(), key=lambda kv: order.key(kv[1]))
        del pairs[(i, j)]
        li, lj = lms[i], lms[j]
        if li is None or lj is None:
            continue
        if mono_mul(li, lj) == lcm:
            continue
        if _chain_skip(i, j, lcm, lms, pairs):
            continue
        live = [G[k] for k in range(len(G)) if lms[k] is not None]
        h = normal_form(s_polynomial(G[i], G[j], order), live, order)
        if h.is_zero():
            continue
        add(h)
        if sum(lms[-1]) == 0:
            return [ring.one()]
    return _interreduce([G[k] for k in range(len(G)) if lms[k] is not None], order)


def _chain_skip(i, j, lcm, lms, pairs) -> bool:
    for k, lk in enumerate(lms):
        if k in (i, j) or lk is None:
            continue
        if not divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def _interreduce(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    lms = [g.leading_monomial(order) for g in G]
    keep = []
    for a, la in enumerate(lms):
        redundant = any(
            b != a and divides(lb, la) and (lb != la or b < a) for b, lb in enumerate(lms)
        )
        if not redundant:
            keep.append(G[a])
    out = []
    for a, g in enumerate(keep):
        others = keep[:a] + keep[a + 1:]
        out.append(normal_form(g, others, order).monic(order) if others else g.monic(order))
    out.sort(key=lambda f: order.key(f.leading_monomial(order)), reverse=True)
    return out


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    for f, g in combinations(G, 2):
        if not normal_form(s_polynomial(f, g, order), G, order).is_zero():
            return False
    return True


def initial_ideal(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> list[Monomial]:
    """Minimal monomial generators of the ideal of leading terms."""
    G = buchberger(gens, order)
    return minimalize(g.leading_monomial(order) for g in G)
