from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apolyknot.laurent import (
    ONE, FactoredAPoly, GZFactor, L, LPoly2, LPoly3, M, NotDivisibleError, PolynomialError,
    content, cyclotomic, doteq, expand, extension_resultant, involution_tau,
    is_balanced, is_cyclotomic_at_monomial, is_normalized, is_primitive, lift_aux, mirror,
    normalize, parse_poly, poly_from_json, poly_to_json, reduce, resultant, resultant_L,
    subst_M_power,
)
from apolyknot.families import twist_apoly

from conftest import gz_factors, lpolys


# --- arithmetic -------------------------------------------------------------

def test_difference_of_squares():
    assert (L - 1) * (L + 1) == L**2 - 1


def test_empty_power_is_one():
    assert (L + M**2) ** 0 == ONE


def test_trefoil_expansion():
    assert (L - 1) * (L * M**6 + 1) == L**2 * M**6 - L * M**6 + L - 1


def test_zero_coefficients_pruned():
    f = (L + M) - (L + M)
    assert f.is_zero() and len(f) == 0


def test_negative_power_of_monomial():
    assert M**-2 * M**2 == ONE
    with pytest.raises(PolynomialError):
        (L + 1) ** -1


@given(lpolys(), lpolys(), lpolys())
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


# --- normal forms -------------------------------------------------------------

def test_normalize_strips_content():
    assert normalize(L**2 * M**6 - L**2) == M**6 - 1


def test_normalize_sign_and_shift():
    assert normalize(-L * M**-6 - 1) == L + M**6


def test_normalize_zero():
    with pytest.raises(PolynomialError, match="zero polynomial has no normal form"):
        normalize(LPoly2.zero())


@given(lpolys())
def test_normalize_idempotent(f):
    n = normalize(f)
    assert is_normalized(n)
    assert normalize(n) == n


@given(lpolys(), st.integers(-5, 5), st.integers(-5, 5), st.sampled_from([1, -1]))
def test_doteq_unit_multiples(f, a, b, s):
    assert doteq(f, s * L**a * M**b * f)


def test_doteq_examples():
    f = L**2 + 3 * M - 1
    assert doteq(f, L**3 * M * f)
    assert doteq(L * M**6 + 1, L + M**-6)
    assert not doteq(L - 1, L + 1)


@given(lpolys(), lpolys(), lpolys())
def test_doteq_transitive(f, g, h):
    if doteq(f, g) and doteq(g, h):
        assert doteq(f, h)
    assert doteq(f, f)
    assert doteq(f, g) == doteq(g, f)


# --- reduce / expand ----------------------------------------------------------

def test_reduce_collapses_multiplicity():
    A = FactoredAPoly([L - 1, L - 1, L * M + 1])
    assert reduce(A) == FactoredAPoly([L - 1, L * M + 1])
    assert reduce(reduce(A)) == reduce(A)
    assert A.reduce().is_reduced()


def test_expand_examples():
    assert expand(FactoredAPoly([])) == ONE
    assert expand(FactoredAPoly([L - 1, L * M**6 + 1])) == L**2 * M**6 - L * M**6 + L - 1


@given(st.lists(gz_factors, max_size=4))
def test_expand_reduce_divides_expand(gs):
    A = FactoredAPoly.from_gz(gs)
    assert A.reduce().expand().divides(A.expand())


def test_factored_rejects_constants():
    with pytest.raises(PolynomialError):
        FactoredAPoly([2 * ONE])


# --- content, balance, mirror -------------------------------------------------

def test_content_examples():
    assert content(2 * L - 2) == 2 and not is_primitive(2 * L - 2)
    assert content(L * M**6 + 1) == 1


@given(lpolys(), st.integers(-9, 9).filter(bool))
def test_content_scales(f, c):
    assert content(c * f) == abs(c) * content(f)


def test_balance_examples():
    assert is_balanced(L + M**6)
    assert is_balanced(L - 1)
    assert not is_balanced(L**2 + L * M + 1 + M**3)


@given(lpolys())
def test_involutions(f):
    assert doteq(involution_tau(involution_tau(f)), f)
    assert doteq(mirror(mirror(f)), f)


def test_mirror_examples():
    assert mirror(L * M**6 + 1) == L + M**6
    assert mirror(L - 1) == L - 1


def test_subst_M_power():
    assert subst_M_power(L * M**6 + 1, 3) == L * M**18 + 1
    assert subst_M_power(L + M**2, 1) == L + M**2
    assert subst_M_power(L - 1, 4) == L - 1


# --- GZ factors -------------------------------------------------------------------

def test_gzfactor_normal_forms():
    assert GZFactor(6, -1).poly == L * M**6 + 1
    assert GZFactor(-6, 1).poly == L - M**6
    assert GZFactor.from_poly(L - M**6) == GZFactor(-6, 1)
    assert GZFactor.from_poly(L**2 - 1) is None


@given(gz_factors)
def test_gzfactor_roundtrip(g):
    assert GZFactor.from_poly(g.poly) == g


# --- division -------------------------------------------------------------------

@given(lpolys(max_terms=4), lpolys(max_terms=4))
def test_exact_division_roundtrip(f, g):
    assert (f * g).exact_div(g) == f
    assert g.divides(f * g)


def test_non_divisible():
    with pytest.raises(NotDivisibleError):
        (L**2 + 1).exact_div(L + 1)


# --- resultants -----------------------------------------------------------------

def _bar(f):
    return lift_aux(f)


def test_resultant_binomial_example():
    G = LPoly3({(0, 1, 0): 1, (2, 0, 0): -1})  # L - Lbar^2
    res = resultant_L(_bar(L * M**6 - 1), G)
    assert doteq(res, L * M**12 - 1)


def test_resultant_worked_example():
    G = LPoly3({(0, 1, 0): 1, (3, 0, 0): -1})
    res = resultant_L(_bar(L * M**18 + 1), G)
    assert doteq(res, L * M**54 + 1)
    assert doteq(extension_resultant(L * M**6 + 1, 3), L * M**54 + 1)


def test_resultant_degree_zero():
    with pytest.raises(PolynomialError, match="resultant undefined"):
        resultant(L - 1, M + 1, 0)


@given(gz_factors, gz_factors, gz_factors)
def test_resultant_multiplicative(a, b, c):
    G = LPoly3({(0, 1, 0): 1, (2, 0, 0): -1})
    f, g = _bar(a.poly), _bar(b.poly)
    lhs = resultant_L(f * g, G)
    rhs = resultant_L(f, G) * resultant_L(g, G)
    assert doteq(lhs, rhs)


def test_univariate_resultant_against_sylvester():
    # Res_L(L^2 - 2, L - 3) = 9 - 2 = 7
    assert resultant(L**2 - 2, L - 3, 0) == 7


# --- cyclotomic test -------------------------------------------------------------

def test_cyclotomic_examples():
    assert is_cyclotomic_at_monomial(L * M**6 + 1)
    assert is_cyclotomic_at_monomial(L**2 * M**30 - 1)
    assert not is_cyclotomic_at_monomial(twist_apoly(-1))
    assert not is_cyclotomic_at_monomial(L**2 + 3 * L * M + 1)
    with pytest.raises(PolynomialError):
        is_cyclotomic_at_monomial(2 * L - 2)


@given(st.integers(1, 30), st.integers(-5, 5), st.integers(1, 5))
def test_cyclotomic_on_monomials(n, b, a):
    phi = cyclotomic(n)
    f = sum((c * (L**a * M**b) ** k for k, c in enumerate(phi)), LPoly2.zero())
    if not f.is_zero():
        assert is_cyclotomic_at_monomial(normalize(f))


# --- text and JSON formats --------------------------------------------------------

def test_text_format():
    f = L**2 * M**6 - L * M**6 + L - 1
    assert f.to_text() == "L^2*M^6 - L*M^6 + L - 1"
    assert parse_poly("-3*L^2*M^-4 + 1") == -3 * L**2 * M**-4 + 1


def test_parse_errors_carry_position():
    with pytest.raises(PolynomialError, match="position"):
        parse_poly("L^^2")


@given(lpolys(coeff=10**30))
def test_text_and_json_roundtrip(f):
    assert parse_poly(f.to_text()) == f
    assert poly_from_json(poly_to_json(f)) == f


def test_json_coefficients_are_strings():
    big = 10**40
    data = poly_to_json(big * L + 1)
    assert data[0] == [str(big), 1, 0]


def test_factored_json_roundtrip():
    A = FactoredAPoly([L - 1, L * M**6 + 1, twist_apoly(2)])
    assert FactoredAPoly.from_json(A.to_json()) == A
    assert A.to_text().startswith("(L - 1) * (L*M^6 + 1)")


def test_fraction_free():
    # ensure no Fraction sneaks into coefficients
    f = (L + 2) * (L - 3)
    assert all(isinstance(c, int) and not isinstance(c, Fraction) for _, c in f.items())
