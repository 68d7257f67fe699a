import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apolyknot import knotlang as kl
from apolyknot.engine import (
    UNKNOT, EngineError, UnverifiedRangeWarning, apoly, apoly_of, cable_general, cable_gz,
    connected_sum_gz, connected_sum_multi, double_twisted_double, fig8_double_apoly,
    fig8_double_P, killing_slopes, whitehead_double, winding_extension,
)
from apolyknot.families import (
    Unsupported, iterated_torus_apoly, torus_apoly, twist_apoly, twist_knot_apoly,
)
from apolyknot.laurent import FactoredAPoly, L, M, doteq, mirror
from apolyknot.slopes import detected_slopes, predicted_fig8_double_slopes

from conftest import gz_factors

T32 = torus_apoly(3, 2)


def gz_apoly(gs):
    return FactoredAPoly.from_gz(list(gs) + [UNKNOT.gz_factors()[0]]).reduce()


def test_trefoil_sum():
    assert connected_sum_gz(T32, T32) == FactoredAPoly([L - 1, L * M**6 + 1, L * M**12 - 1])


def test_sum_coincidence():
    assert apoly_of("T(15,7) # T(17,11)") == apoly_of("T(21,5) # T(17,11)")


def test_sum_with_unknot():
    A = torus_apoly(5, 3)
    assert connected_sum_gz(A, UNKNOT) == A


@given(st.lists(gz_factors, max_size=3), st.lists(gz_factors, max_size=3), st.lists(gz_factors, max_size=3))
def test_sum_commutative_associative(a, b, c):
    A, B, C = gz_apoly(a), gz_apoly(b), gz_apoly(c)
    assert connected_sum_gz(A, B) == connected_sum_gz(B, A)
    assert connected_sum_gz(connected_sum_gz(A, B), C) == connected_sum_gz(A, connected_sum_gz(B, C))
    assert connected_sum_multi([A, B, C]) == connected_sum_gz(connected_sum_gz(A, B), C).reduce()


def test_multi_edge_cases():
    assert connected_sum_multi([]) == UNKNOT
    assert connected_sum_multi([T32]) == T32


def test_sum_rejects_non_gz():
    with pytest.raises(EngineError, match="companion not in G_Z"):
        connected_sum_gz(T32, twist_knot_apoly(-1))


def test_cable_examples():
    assert cable_gz(7, 2, T32) == FactoredAPoly([L - 1, L * M**14 + 1, L * M**24 - 1])
    assert cable_gz(7, 2, T32) == iterated_torus_apoly([(7, 2), (3, 2)])
    assert cable_gz(5, 3, UNKNOT) == torus_apoly(5, 3)
    assert cable_gz(1, 2, UNKNOT) == UNKNOT
    assert cable_gz(-1, 3, UNKNOT) == UNKNOT
    assert cable_gz(2, 3, UNKNOT) == torus_apoly(3, 2)


def test_cable_general_worked_example():
    out = cable_general(2, 3, T32)
    assert L * M**54 + 1 in out.distinct()
    assert out == cable_gz(2, 3, T32)


def test_cable_general_degree_zero_branch():
    A = FactoredAPoly([L - 1, M**2 + 1])
    out = cable_general(3, 2, A)
    assert M**4 + 1 in out.distinct()


def test_winding_extension():
    assert doteq(winding_extension(L * M**6 + 1, 3), L * M**54 + 1)
    assert winding_extension(L - 1, 3) == L - 1
    f = twist_apoly(-1)
    assert doteq(winding_extension(f, 1), f)


def test_killing_slopes():
    assert set(killing_slopes(T32)) == {(0, 1), (6, -1)}
    assert set(killing_slopes(UNKNOT)) == {(0, 1)}
    assert set(killing_slopes(torus_apoly(5, 3))) == {(0, 1), (15, 1), (15, -1)}
    with pytest.raises(EngineError):
        killing_slopes(twist_knot_apoly(2))


@pytest.mark.parametrize("r", range(-5, 6))
def test_ruppe(r):
    expect = FactoredAPoly([L - 1, twist_apoly(r), twist_apoly(r - 6)])
    assert whitehead_double(r, T32) == expect


def test_double_over_unknot():
    for n in (-3, 2, 5):
        assert whitehead_double(n, UNKNOT) == twist_knot_apoly(n)


def test_double_over_iterated_torus():
    word = [(3, 2), (5, 3)]
    A = iterated_torus_apoly(word)
    slopes = [0, 3 * 2, 15 * 2 * 2]  # outer cable first
    assert whitehead_double(4, A) == FactoredAPoly([L - 1] + [twist_apoly(4 - s) for s in slopes])


def test_double_twisted_double():
    assert double_twisted_double(1, 3, T32) == whitehead_double(3, T32)
    assert isinstance(double_twisted_double(3, 2, T32), Unsupported)
    table = {"J(6,4)": FactoredAPoly([L - 1, L * M**4 + 1])}
    assert double_twisted_double(3, 2, UNKNOT, table) == FactoredAPoly([L - 1, L * M**4 + 1])


def test_fig8_slopes_special_cases():
    assert detected_slopes(fig8_double_P(0)) == predicted_fig8_double_slopes(0)
    assert detected_slopes(fig8_double_P(-4)) == predicted_fig8_double_slopes(-4)
    assert detected_slopes(fig8_double_P(4)) == detected_slopes(twist_apoly(8))
    assert fig8_double_P(4) != twist_apoly(8)


def test_fig8_range_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        fig8_double_apoly(11)
    with pytest.warns(UnverifiedRangeWarning):
        fig8_double_apoly(12)


def test_dispatch_examples():
    assert apoly_of("D[2](T(3,2))") == FactoredAPoly([L - 1, twist_apoly(2), twist_apoly(-4)])
    assert apoly_of("mirror(T(3,2))") == FactoredAPoly([L - 1, L + M**6])
    assert apoly_of("D[3](K(-1))") == fig8_double_apoly(3)
    assert apoly_of("D[1,3](K(-1))") == fig8_double_apoly(3)


def test_dispatch_typed_errors():
    with pytest.raises(EngineError, match="companion is not a graph knot"):
        apoly_of("D[1](K(-2))")
    with pytest.raises(EngineError, match="not in G_Z"):
        apoly_of("cable(3,2; K(2))")
    with pytest.raises(EngineError, match="unsupported"):
        apoly_of("D[3,2](T(3,2))")


def test_assume_conjecture_labels_output():
    # a double over a double: the inner double over the unknot is K(0) = unknot
    e = kl.parse("D[2](D[0](U))")
    with pytest.raises(EngineError):
        apoly(e)
    res = apoly(e, assume_conjecture=True)
    assert res.conjectural and res.notes
    assert res.apoly == twist_knot_apoly(2)


def test_mirror_dispatch():
    A = apoly_of("D[2](T(3,2))")
    B = apoly_of("mirror(D[2](T(3,2)))")
    assert B == A.map(mirror)
    assert apoly_of("mirror(mirror(D[2](T(3,2))))") == A
