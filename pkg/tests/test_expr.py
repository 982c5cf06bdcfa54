import pytest
from hypothesis import given, settings, strategies as st

from distfrob.expr import BinomH, Gen, ParseError, evaluate, parse
from distfrob.norm import delta_dist
from distfrob.pbw import DistElem, binom_shift, to_text


def test_examples():
    assert evaluate("E[1]*F[1] - F[1]*E[1]", 3) == DistElem.H(3)
    assert evaluate("D[0]^2 - D[0]", 5) == DistElem.zero(5)
    assert parse("binom(H-2,1)") == BinomH(-2, 1)
    assert evaluate("binom(H-2,1)", 3) == binom_shift(-2, 1, 3).to_dist()
    assert parse("D[-4]") == Gen("D", -4)
    assert evaluate("D[-4]", 7) == delta_dist(-4, 7)


def test_precedence():
    assert evaluate("2 + 3*H", 7) == evaluate("(3*H) + 2", 7)
    assert evaluate("E[1]^2", 5) == evaluate("2*E[2]", 5)
    assert evaluate("1 - 2 - 3", 7) == DistElem.scalar(-4, 7)


@pytest.mark.parametrize("text,line,col", [
    ("E[1] F[1]", 1, 6),
    ("E[", 1, 3),
    ("binom(H,)", 1, 9),
    ("1 +\n  ?", 2, 3),
    ("(E[1]", 1, 6),
    ("E[-1]", 1, 3),
])
def test_error_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)


@st.composite
def elements(draw, p):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 2 * p)] * 3),
                                 st.integers(1, p - 1), max_size=5))
    return DistElem(terms, p)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: elements(p)))
def test_round_trip(x):
    assert evaluate(to_text(x), x.p) == x
