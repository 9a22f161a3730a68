import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tightclose import filtrations as filt
from tightclose.quotient import QuotientRing
from tightclose.simplicial import SimplicialComplex, face_ring
from tightclose.tightclosure import DiagonalRing


def test_binom_convention():
    assert filt.binom(5, 2) == 10
    assert filt.binom(2, 5) == 0
    assert filt.binom(-1, 2) == 1  # (-1)(-2)/2
    assert filt.binom(3, -1) == 0
    assert filt.binom(0, 0) == 1


@given(st.integers(0, 40), st.integers(0, 40))
def test_binom_matches_comb(a, b):
    assert filt.binom(a, b) == math.comb(a, b)


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3), st.integers(-3, 5))
def test_fit_recovers_coefficients(e, start):
    ns = list(range(start, start + 6))
    values = [filt.hilbert_polynomial_value(e, 2, n) for n in ns]
    fit = filt.fit_hilbert_coefficients(values, ns, 2)
    assert list(fit.e) == e and fit.stable_from == start


def test_fit_skips_unstable_prefix():
    e = (4, 3, 1)
    ns = list(range(0, 8))
    values = [filt.hilbert_polynomial_value(e, 2, n) for n in ns]
    values[0] += 1
    fit = filt.fit_hilbert_coefficients(values, ns, 2)
    assert fit.e == e and fit.stable_from == 1


def test_fit_needs_enough_samples():
    with pytest.raises(filt.NotYetStableError):
        filt.fit_hilbert_coefficients([1, 2, 3, 4], [1, 2, 3, 4], 2)


def test_solve_exact():
    x = filt._solve_exact([[0, 2], [3, 1]], [4, 5])
    assert x == [Fraction(1), Fraction(2)]


@pytest.mark.parametrize("d,k,n", [(d, k, n) for d in (1, 3, 6) for k in (1, 4, 6) for n in (0, 5, 12)])
def test_binomial_identity(d, k, n):
    lhs, rhs = filt.binomial_expand(d, k, n)
    assert lhs == rhs


@pytest.fixture(scope="module")
def F3():
    return filt.Filtration.tight_diagonal(DiagonalRing(3, 7))


def test_tight_filtration_values(F3):
    assert filt.hilbert_values(F3, range(1, 8)) == [3 * math.comb(n + 1, 2) - n for n in range(1, 8)]


def test_adic_filtration_of_diagonal():
    D = DiagonalRing(3, 7)
    F = filt.Filtration.adic(D.R, D.I)
    ns = list(range(1, 7))
    fit = filt.fit_hilbert_coefficients(filt.hilbert_values(F, ns), ns, 2)
    assert fit.e == (3, 0, 0)
    assert filt.filtration_reduction_number(F, 3) == 0


def test_hsp_matches_fit(F3):
    r = filt.filtration_reduction_number(F3, 4)
    ns = list(range(1, 8))
    fit = filt.fit_hilbert_coefficients(filt.hilbert_values(F3, ns), ns, 2)
    assert filt.hsp_coefficients(F3, r).e == fit.e == (3, 1, 0)
    assert filt.correction_lengths(F3, r) == [1]


def test_hi_p_and_huckaba_marley(F3):
    assert filt.hi_p_check(F3, 0, 4).holds
    assert str(filt.hi_p_check(F3, 0, 3)) == "HoldsUpTo(3)"
    assert filt.huckaba_marley_bound(F3)


def test_explicit_filtration_extension():
    D = DiagonalRing(3, 7)
    I1 = filt.filtration_ideal(filt.Filtration.tight_diagonal(D), 1)
    F = filt.Filtration.explicit(D.R, D.I, [I1])
    # beyond the list: I_n = I^(n-1) I_1
    assert D.R.equals(F[3], D.R.mul(D.R.pow(D.I, 2), I1))
    assert F[0].is_unit()


def test_not_m_primary():
    S = face_ring(SimplicialComplex(2, [[1], [2]]), 5)
    F = filt.Filtration.adic(S, S.ideal("x1"))
    with pytest.raises(filt.NotMPrimaryError):
        filt.hilbert_values(F, [1])


def test_length_table_residuals(F3):
    ns = list(range(1, 7))
    coeffs = filt.HilbertCoefficients(2, (3, 1, 0))
    assert all(r["residual"] == 0 for r in filt.length_table(F3, ns, coeffs))


def test_unknown_kind():
    R = QuotientRing.diagonal_hypersurface(3, 7)
    with pytest.raises(ValueError):
        filt.Filtration(R, R.ideal("y"), "bogus")
