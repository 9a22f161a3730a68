import pytest
import sympy

from tightclose.idealops import contains_poly
from tightclose.tightclosure import (
    E_MAX_CAP,
    DiagonalRing,
    f_rationality_probe,
    tight_closure_power_diagonal,
    tight_membership,
    tight_reduction_number,
    verify_closed_form,
)


@pytest.fixture(scope="module")
def D3():
    return DiagonalRing(3, 7)


def _sympy_frobenius_test(N, p, a, b, c):
    """Oracle: is z^(N-1) (x^a y^b z^c)^p in (y^p, z^p, x^N+y^N+z^N) over F_p?"""
    x, y, z = sympy.symbols("x y z")
    G = sympy.groebner([y**p, z**p, x**N + y**N + z**N], x, y, z, order="grevlex", modulus=p)
    return G.contains(z ** (N - 1) * (x**a * y**b * z**c) ** p)


@pytest.mark.parametrize("N,p", [(3, 7), (4, 5), (2, 5)])
@pytest.mark.parametrize("mono", [(1, 0, 0), (2, 0, 0), (0, 1, 0)])
def test_membership_at_q_equals_p_matches_sympy(N, p, mono):
    D = DiagonalRing(N, p)
    verdict = tight_membership(D, D.monomial(*mono), D.I, (1, 1))
    assert verdict.member == _sympy_frobenius_test(N, p, *mono)


def test_x_squared_in_closure_of_I(D3):
    v = tight_membership(D3, D3.monomial(2, 0, 0), D3.I, (1, 2))
    assert v.member and str(v) == "MemberUpTo(2)"
    w = tight_membership(D3, D3.monomial(1, 0, 0), D3.I, (1, 2))
    assert not w.member and str(w) == "NotMember(1)"


def test_membership_argument_checks(D3):
    with pytest.raises(ValueError):
        tight_membership(D3, D3.monomial(1, 0, 0), D3.I, (1, E_MAX_CAP + 1))
    with pytest.raises(ValueError):
        tight_membership(D3, D3.monomial(1, 0, 0), D3.I, (0, 1))


def test_closed_form_generators(D3):
    assert tight_closure_power_diagonal(D3, 1).to_text() == ["x^2", "y", "z"]
    D2 = DiagonalRing(2, 5)
    assert D2.R.equals(tight_closure_power_diagonal(D2, 2), D2.R.pow(D2.I, 2))


def test_closure_contains_power(D3):
    for k in (1, 2, 3):
        assert D3.R.contains(tight_closure_power_diagonal(D3, k), D3.R.pow(D3.I, k))


@pytest.mark.parametrize("N,p", [(3, 7), (4, 5)])
def test_verify_closed_form_k2(N, p):
    rep = verify_closed_form(DiagonalRing(N, p), 2, 2)
    assert rep.ok and rep.records


def test_p_divides_N():
    with pytest.raises(ValueError):
        DiagonalRing(5, 5)


def test_reduction_number_window(D3):
    assert tight_reduction_number(D3, 3) == 1
    with pytest.raises(ValueError):
        tight_reduction_number(DiagonalRing(4, 5), 2)


def test_f_rationality(D3):
    res = f_rationality_probe(D3)
    assert not res.f_rational and res.witness == "x^2" and res.e1_star == 1 and res.consistent
    res2 = f_rationality_probe(DiagonalRing(2, 5))
    assert res2.f_rational and res2.e1_star == 0 and str(res2) == "FRational(e1*=0)"


def test_test_element_is_in_jacobian_power(D3):
    # z^(N-1) is a partial derivative up to a unit: d/dz(x^3+y^3+z^3) = 3 z^2
    assert contains_poly(D3.R.lift(D3.R.ideal("3*z^2")), D3.test_element)
