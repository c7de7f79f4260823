import pytest
from hypothesis import given, strategies as st

from cafcc.errors import ZeroSeed
from cafcc.exactnum import (
    SurdKind,
    format_scalar,
    make_surd,
    parse_scalar,
    scalar,
)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=40)


def test_exact_field_ops():
    assert scalar(1, 2) + scalar(1, 3) == scalar(5, 6)
    assert scalar(2, 5) * scalar(5, 2) == 1
    assert scalar(7) - scalar(7) == 0
    assert scalar(-3, 6) == scalar(-1, 2)
    assert scalar(2, 3) ** -2 == scalar(9, 4)
    with pytest.raises(ZeroDivisionError):
        scalar(1) / scalar(0)


@given(rationals, rationals)
def test_addition_is_exactly_invertible(a, b):
    x, y = scalar(a), scalar(b)
    assert (x + y) - y == x


def test_canonical_text_form():
    assert format_scalar(scalar(5, 1)) == "5"
    assert format_scalar(scalar(-3, 6)) == "-1/2"
    assert parse_scalar("7/2") == scalar(7, 2)
    assert parse_scalar("-4") == scalar(-4)


@given(rationals)
def test_parse_print_roundtrip(a):
    text = format_scalar(scalar(a))
    assert format_scalar(parse_scalar(text)) == text


def test_hyperbolic_surd():
    p = make_surd(SurdKind.HYPERBOLIC, 2)
    assert p.value == scalar(5, 4)
    assert p.root == scalar(3, 4)
    assert p.bar == 2
    # degenerate branch point
    q = make_surd(SurdKind.HYPERBOLIC, 1)
    assert q.value == 1 and q.root == 0


def test_square_surd():
    p = make_surd(SurdKind.SQUARE, 3)
    assert p.value == 9 and p.root == 3


def test_zero_seed_rejected():
    with pytest.raises(ZeroSeed):
        make_surd(SurdKind.SQUARE, 0)


@given(st.sampled_from(list(SurdKind)),
       rationals.filter(lambda a: a != 0))
def test_surd_invariants(kind, seed):
    p = make_surd(kind, seed)
    if kind is SurdKind.HYPERBOLIC:
        assert p.root ** 2 - p.value ** 2 + 1 == 0
    else:
        assert p.root ** 2 - p.value == 0
    flipped = p.flip_branch()
    assert flipped.value == p.value
    assert flipped.root == -p.root
    assert flipped.flip_branch() == p
