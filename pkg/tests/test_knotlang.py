from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apolyknot import knotlang as kl
from apolyknot.knotlang import (
    Cable, DoubleTwistKnot, KnotClass, KnotSyntaxError, KnotValidationError, Mirror, Sum,
    Torus, Twist, Unknot, WhiteheadDouble, classify, format_expr, parse,
)


def test_sum_parse():
    assert parse("T(3,2) # K(-1)") == Sum(Torus(3, 2), Twist(-1))


def test_cable_parse():
    assert parse("cable(7,2; T(3,2))") == Cable(7, 2, Torus(3, 2))


def test_sum_is_left_associative():
    assert parse("U # T(3,2) # K(2)") == Sum(Sum(Unknot(), Torus(3, 2)), Twist(2))


def test_whitespace_insensitive():
    assert parse("  D[ -2 ] ( mirror ( T( 5 , 3 ) ) ) ") == WhiteheadDouble(-2, Mirror(Torus(5, 3)))


@pytest.mark.parametrize("src", ["T(4,2)", "T(2,4)", "T(3,3)", "cable(2,4; U)", "cable(0,3; U)", "J(3,2)"])
def test_validation_errors(src):
    with pytest.raises(KnotValidationError):
        parse(src)


def test_gcd_message():
    with pytest.raises(KnotValidationError, match="gcd"):
        parse("T(9,3)")


@pytest.mark.parametrize("src,pos", [("T(3,2", 5), ("X", 0), ("T(3,2) #", 8), ("K(a)", 2), ("U U", 2)])
def test_syntax_errors_have_positions(src, pos):
    with pytest.raises(KnotSyntaxError) as info:
        parse(src)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_canonicalization():
    assert parse("K(0)") == Unknot()
    assert parse("K(1)") == Torus(3, 2)
    assert parse("J(2,6)") == Twist(3)
    assert parse("J(6,2)") == Twist(3)
    assert parse("J(6,10)") == DoubleTwistKnot(3, 5)


def test_classify_examples():
    assert classify(Cable(5, 2, Sum(Torus(3, 2), Torus(5, 2)))) is KnotClass.GraphKnot
    assert classify(Twist(-1)) is KnotClass.Other
    assert classify(Twist(1)) is KnotClass.GraphKnot
    assert classify(WhiteheadDouble(1, Torus(3, 2))) is KnotClass.Other


def test_format_examples():
    assert format_expr(Torus(3, 2)) == "T(3,2)"
    assert format_expr(Mirror(Twist(2))) == "mirror(K(2))"
    assert format_expr(Sum(Torus(3, 2), Sum(Unknot(), Twist(2)))) == "T(3,2) # (U # K(2))"


def test_json_export_is_tagged():
    j = kl.to_json(parse("cable(7,2; T(3,2))"))
    assert j == {"type": "Cable", "p": 7, "q": 2, "inner": {"type": "Torus", "p": 3, "q": 2}}


# --- random ASTs ---------------------------------------------------------------

coprime_pairs = st.tuples(st.integers(-15, 15), st.integers(2, 6)).filter(
    lambda t: t[0] != 0 and gcd(abs(t[0]), t[1]) == 1)
torus_pairs = coprime_pairs.filter(lambda t: abs(t[0]) > t[1])

leaves = st.one_of(
    st.just(Unknot()),
    torus_pairs.map(lambda t: Torus(*t)),
    st.integers(-6, 6).map(kl.twist),
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)).map(lambda t: kl.double_twist(*t)),
)


def _extend(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: Sum(*t)),
        st.tuples(coprime_pairs, children).map(lambda t: Cable(t[0][0], t[0][1], t[1])),
        st.tuples(st.integers(-9, 9), children).map(lambda t: WhiteheadDouble(*t)),
        st.tuples(st.integers(2, 4), st.integers(-9, 9), children).map(
            lambda t: kl.DoubleTwistedDouble(*t)),
        children.map(Mirror),
    )


asts = st.recursive(leaves, _extend, max_leaves=8)


@given(asts)
def test_format_parse_roundtrip(e):
    assert parse(format_expr(e)) == e


@given(asts)
def test_format_is_canonical(e):
    text = format_expr(e)
    assert format_expr(parse(text)) == text


@given(asts, asts)
def test_classify_closure(a, b):
    both = classify(a) is KnotClass.GraphKnot and classify(b) is KnotClass.GraphKnot
    assert (classify(Sum(a, b)) is KnotClass.GraphKnot) == both
    assert classify(Cable(3, 2, a)) is classify(a)
