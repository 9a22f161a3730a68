"""Simplicial complexes, Stanley-Reisner rings and linear systems of parameters.

Vertices are 1-based. For ideals generated by linear systems of parameters
(lsops) in k[Δ], every product I_1^s_1 ... I_g^s_g has tight (and integral)
closure m^(s_1+...+s_g); the functions here lean on that closed form.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product as cartesian
from pathlib import Path
from typing import Sequence

from . import _kernels
from .filtrations import binom, fit_hilbert_coefficients
from .idealops import Ideal, contains_poly, interreduce, is_reduction, product, power
from .polyring import PolyRing, Polynomial
from .quotient import QuotientRing, graded_dim, maximal_power


class FacetFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SimplicialComplex:
    def __init__(self, n_vertices: int, facets: Sequence[Sequence[int]]):
        sets = {frozenset(f) for f in facets}
        for f in sets:
            if not f:
                continue
            if min(f) < 1 or max(f) > n_vertices:
                raise ValueError(f"facet {sorted(f)} has a vertex outside 1..{n_vertices}")
        # keep only maximal faces
        maximal = [f for f in sets if f and not any(f < g for g in sets)]
        self.n_vertices = n_vertices
        self.facets = sorted(maximal, key=lambda f: (len(f), sorted(f)))

    @classmethod
    def simplex(cls, n: int) -> SimplicialComplex:
        return cls(n, [range(1, n + 1)])

    @classmethod
    def boundary_of_simplex(cls, n: int) -> SimplicialComplex:
        """Boundary of the (n-1)-simplex: all (n-1)-subsets of n vertices."""
        return cls(n, list(combinations(range(1, n + 1), n - 1)))

    @classmethod
    def from_text(cls, text: str, n_vertices: int | None = None) -> SimplicialComplex:
        """One facet per line, space-separated vertex indices, ``#`` comments."""
        facets = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                verts = [int(tok) for tok in line.split()]
            except ValueError:
                raise FacetFileError(f"non-integer vertex in {raw.strip()!r}", lineno) from None
            if any(v < 1 for v in verts):
                raise FacetFileError("vertex indices must be positive", lineno)
            facets.append(verts)
        if not facets:
            raise FacetFileError("no facets given")
        n = n_vertices or max(max(f) for f in facets)
        return cls(n, facets)

    @classmethod
    def from_json(cls, text: str) -> SimplicialComplex:
        data = json.loads(text)
        if not data.get("facets"):
            raise FacetFileError("no facets given")
        return cls(int(data["n"]), data["facets"])

    @classmethod
    def load(cls, path: str | Path) -> SimplicialComplex:
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".json" or text.lstrip().startswith("{"):
            return cls.from_json(text)
        return cls.from_text(text)

    @property
    def d(self) -> int:
        """Krull dimension of k[Δ] (= dim Δ + 1)."""
        return max((len(f) for f in self.facets), default=0)

    @cached_property
    def faces(self) -> set:
        out = {frozenset()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(frozenset(c) for c in combinations(sorted(f), k))
        return out

    def minimal_nonfaces(self) -> list[frozenset]:
        faces = self.faces
        out = []
        for k in range(1, self.n_vertices + 1):
            for c in combinations(range(1, self.n_vertices + 1), k):
                s = frozenset(c)
                if s in faces:
                    continue
                if all(s - {v} in faces for v in s):
                    out.append(s)
        return out

    def __repr__(self):
        return f"SimplicialComplex({self.n_vertices}, {[sorted(f) for f in self.facets]})"


def stanley_reisner_ideal(delta: SimplicialComplex, ring: PolyRing) -> Ideal:
    if ring.nvars != delta.n_vertices:
        raise ValueError(f"ring has {ring.nvars} variables, complex has {delta.n_vertices} vertices")
    gens = []
    for s in delta.minimal_nonfaces():
        e = [0] * ring.nvars
        for v in s:
            e[v - 1] = 1
        gens.append(ring.monomial(e))
    return Ideal(ring, gens)


def face_ring(delta: SimplicialComplex, p: int = 101) -> QuotientRing:
    S = PolyRing.make(p, [f"x{i}" for i in range(1, delta.n_vertices + 1)])
    return QuotientRing(S, stanley_reisner_ideal(delta, S), "stanley_reisner", delta.d,
                        {"complex": delta})


@dataclass(frozen=True)
class FHVectors:
    f: tuple
    h: tuple
    chi: int


def fh_vectors(delta: SimplicialComplex) -> FHVectors:
    d = delta.d
    f = [0] * (d + 1)  # f[i] counts faces with i vertices, i.e. f_(i-1)
    for face in delta.faces:
        f[len(face)] += 1
    h = [sum((-1) ** (j - i) * binom(d - i, j - i) * f[i] for i in range(j + 1)) for j in range(d + 1)]
    chi = sum((-1) ** (i - 1) * f[i] for i in range(1, d + 1))
    return FHVectors(tuple(f), tuple(h), chi)


def is_eulerian(delta: SimplicialComplex) -> bool:
    v = fh_vectors(delta)
    eulerian = v.chi == 1
    if eulerian != (v.h[-1] == 0):
        raise AssertionError("h_d = 0 and chi = 1 disagree")
    return eulerian


def linear_coefficients(forms: Sequence[Polynomial]) -> list[list[int]]:
    rows = []
    for f in forms:
        n = f.ring.nvars
        if any(sum(m) != 1 for m in f.terms):
            raise ValueError(f"{f} is not a linear form")
        row = [0] * n
        for m, c in f.terms.items():
            row[m.index(1)] = c
        rows.append(row)
    return rows


def check_lsop(delta: SimplicialComplex, forms: Sequence[Polynomial]) -> bool:
    """Facet-wise rank test: each facet's columns must have full rank |F|."""
    rows = linear_coefficients(forms)
    if len(forms) != delta.d:
        return False
    p = forms[0].ring.p
    for F in delta.facets:
        cols = sorted(v - 1 for v in F)
        sub = [[row[c] for c in cols] for row in rows]
        if _kernels.rank_mod_p(sub, p) < len(F):
            return False
    return True


def random_linear_form(ring: PolyRing, rng: random.Random) -> Polynomial:
    f = ring.zero()
    for v in ring.gens():
        f = f + v.scale(rng.randrange(1, ring.p))
    return f


def random_lsop(delta: SimplicialComplex, ring: PolyRing, rng: random.Random, trials: int = 20):
    """Draw d random linear forms until they form an lsop; returns (forms, draws)."""
    for draw in range(1, trials + 1):
        forms = [random_linear_form(ring, rng) for _ in range(delta.d)]
        if check_lsop(delta, forms):
            return forms, draw
    return None, trials


def _require_lsops(delta, family):
    for I in family:
        if not check_lsop(delta, I.gens):
            raise ValueError(f"{I} is not generated by a linear system of parameters")


def lsop_product_tight_closure(R: QuotientRing, delta: SimplicialComplex,
                               family: Sequence[Ideal], s: Sequence[int]) -> Ideal:
    """(I_1^s_1 ... I_g^s_g)* = m^(s_1+...+s_g)."""
    _require_lsops(delta, family)
    total = sum(s)
    closure = interreduce(R.lift(maximal_power(R.ambient, total)))
    prod = Ideal.unit(R.ambient)
    for I, k in zip(family, s):
        prod = product(prod, power(I, k))
    if not R.contains(closure, prod):
        raise AssertionError("product of lsop powers escapes m^|s|")
    return closure


def h_derivative_values(h: Sequence[int]) -> list[int]:
    """h^(i)(1)/i! = sum_j C(j, i) h_j for i = 0..d."""
    return [sum(binom(j, i) * hj for j, hj in enumerate(h)) for i in range(len(h))]


def length_via_h(delta: SimplicialComplex, n: int) -> int:
    """ℓ(R/m^(n+1)) from the h-vector."""
    d = delta.d
    ders = h_derivative_values(fh_vectors(delta).h)
    return sum((-1) ** i * ders[i] * binom(n + d - i, d - i) for i in range(d + 1))


def counted_length_of_power(R: QuotientRing, k: int) -> int:
    """ℓ(R/m^k) as a sum of graded dimensions (homogeneous modulus)."""
    return sum(graded_dim(R, j) for j in range(k))


def ed_star(delta: SimplicialComplex, family: Sequence[Ideal] = (), s: Sequence[int] = ()) -> int:
    """e_d* of a power product of lsop ideals, which equals h_d."""
    if family:
        _require_lsops(delta, family)
    return fh_vectors(delta).h[-1]


def fitted_ed_star(R: QuotientRing, total: int) -> int:
    """e_d of the filtration n -> m^(total*n), read from a fitted polynomial."""
    d = R.dim
    ns = list(range(1, d + 4))
    values = [counted_length_of_power(R, total * n) for n in ns]
    return fit_hilbert_coefficients(values, ns, d).e[d]


def _s_vectors(d: int, s_max: int):
    for s in cartesian(range(1, s_max + 1), repeat=d):
        if sum(s) <= s_max:
            yield s


def joint_reduction_check(R: QuotientRing, family: Sequence[Ideal], a: Sequence[Polynomial],
                          s_max: int, closure: bool = True) -> bool:
    """Check I^S = sum_i a_i I^(S_i) for all s_i >= 1 with |S| <= s_max.

    With ``closure`` both sides use tight closures, i.e. powers of m;
    without it the literal power products are compared.
    """
    if len(family) != len(a):
        raise ValueError("need one element per ideal")
    for I, ai in zip(family, a):
        if not contains_poly(R.lift(I), ai):
            raise ValueError(f"{ai} is not in {I}")
    if any(ai.is_zero() for ai in a):
        return False
    S = R.ambient
    d = len(family)

    def power_product(s):
        if closure:
            return maximal_power(S, sum(s))
        out = Ideal.unit(S)
        for I, k in zip(family, s):
            out = product(out, power(I, k))
        return out

    for s in _s_vectors(d, s_max):
        rhs_gens = []
        for i in range(d):
            si = list(s)
            si[i] -= 1
            rhs_gens += [a[i] * g for g in power_product(si).gens]
        if not R.equals(Ideal(S, rhs_gens), power_product(s)):
            return False
    return True


@dataclass
class EquivalenceReport:
    eq1: bool
    eq2: bool | None
    eq3: bool | None
    eq4: bool
    p: int
    seed: int
    s_max: int
    draws: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    cohen_macaulay_assumed: bool = True

    @property
    def consistent(self) -> bool:
        vals = {self.eq1, self.eq2, self.eq3, self.eq4}
        return None not in vals and len(vals) == 1

    def as_dict(self) -> dict:
        return {
            "eq1_eulerian": self.eq1,
            "eq2_reduction_number": self.eq2,
            "eq3_joint_reduction": self.eq3,
            "eq4_alternating_ed": self.eq4,
            "consistent": self.consistent,
            "p": self.p,
            "seed": self.seed,
            "s_max": self.s_max,
            "draws": self.draws,
            "details": self.details,
            "cohen_macaulay_assumed": self.cohen_macaulay_assumed,
        }


def eulerian_equivalences(delta: SimplicialComplex, p: int = 101, s_max: int = 3,
                          trials: int = 20, seed: int = 0) -> EquivalenceReport:
    """Evaluate the four equivalent conditions on Δ; Cohen-Macaulayness is assumed, not checked."""
    rng = random.Random(seed)
    R = face_ring(delta, p)
    S = R.ambient
    d = delta.d
    s_max = max(s_max, d)
    draws = {}
    details = {}

    eq1 = is_eulerian(delta)

    forms, used = random_lsop(delta, S, rng, trials)
    draws["reduction"] = used
    if forms is None:
        eq2 = None
    else:
        res = is_reduction(Ideal(S, forms), Ideal.maximal(S), d, R.modulus)
        details["r(m)"] = res.n if res.holds else None
        eq2 = res.holds and res.n <= d - 1

    family = []
    for i in range(d):
        forms_i, used = random_lsop(delta, S, rng, trials)
        draws[f"lsop_{i + 1}"] = used
        if forms_i is None:
            break
        family.append(Ideal(S, forms_i))
    if len(family) < d:
        eq3 = None
    else:
        a = []
        for I in family:
            a.append(sum((g.scale(rng.randrange(1, p)) for g in I.gens), S.zero()))
        eq3 = joint_reduction_check(R, family, a, s_max, closure=True)

    by_size = {t: fitted_ed_star(R, t) for t in range(1, d + 1)}
    alt = sum((-1) ** (d - t) * binom(d, t) * by_size[t] for t in range(1, d + 1))
    details["ed_star_by_product_size"] = by_size
    details["alternating_sum"] = alt
    eq4 = alt == 0

    return EquivalenceReport(eq1, eq2, eq3, eq4, p, seed, s_max, draws, details)
