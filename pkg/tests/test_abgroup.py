import pytest
from hypothesis import given, strategies as st

from kusphere.abgroup import AbGroupExpr, hom_allowed, tensor_summands
from kusphere.errors import InputError, ParseError


@pytest.mark.parametrize("text,canon", [
    ("Z/9 + Z/3", "Z/3 + Z/9"),
    ("Z/6", "Z/2 + Z/3"),
    ("Z/3 + Z/8 + Z/3 + Z/8", "Z/8 + Z/8 + Z/3 + Z/3"),
    ("Z/5 + Z/16", "Z/16 + Z/5"),
    ("Q/Z + Z3^ + Z", "Z + Z3^ + Q/Z"),
    ("0", "0"),
    ("Z^2 + Z/1", None),
])
def test_canonical_form(text, canon):
    if canon is None:
        with pytest.raises(ParseError):
            AbGroupExpr.parse(text)
        return
    assert str(AbGroupExpr.parse(text)) == canon


def test_equality_is_canonical():
    assert AbGroupExpr.parse("Z/6 + Z/4") == AbGroupExpr.parse("Z/4 + Z/3 + Z/2")
    assert AbGroupExpr.parse("Z/9") != AbGroupExpr.parse("Z/3 + Z/3")


def test_order_and_exponent():
    A = AbGroupExpr.parse("Z/16 + Z/5")
    assert A.order == 80 and A.exponent == 80
    with pytest.raises(InputError):
        AbGroupExpr.padic(3).order


@pytest.mark.parametrize("a,b,want", [
    ("Z/9", "Z/6", "Z/3"), ("Z3^", "Z/18", "Z/9"), ("Z", "Q/Z", "Q/Z"),
    ("Z/3", "Q/Z", "0"), ("Q", "Q", "Q"),
])
def test_tensor_summands(a, b, want):
    assert str(tensor_summands(a, b)) == want


def test_unsupported_tensor():
    with pytest.raises(InputError):
        tensor_summands("Z3^", "Q/Z")


def test_hom_allowed():
    assert hom_allowed("Z/3", "Z/9", 3)
    assert not hom_allowed("Z/3", "Z/9", 1)
    assert hom_allowed("Z/9", "Z/3", 1)
    assert hom_allowed("Z3^", "Z/9", 2)
    assert not hom_allowed("Z5^", "Z/9", 2)
    assert not hom_allowed("Z/3", "Z", 1)


cyclic_lists = st.lists(st.integers(2, 200), max_size=5)


@given(cyclic_lists, cyclic_lists)
def test_sum_is_commutative_and_orders_multiply(a, b):
    A, B = AbGroupExpr(cyclic=tuple(a)), AbGroupExpr(cyclic=tuple(b))
    assert A + B == B + A
    assert (A + B).order == A.order * B.order


@given(cyclic_lists)
def test_render_parse_round_trip(a):
    A = AbGroupExpr(cyclic=tuple(a), free_rank=len(a) % 2, profinite=(3,) * (len(a) % 3))
    assert AbGroupExpr.parse(str(A)) == A


@given(cyclic_lists, st.sampled_from([2, 3, 5, 7]))
def test_p_parts_reassemble(a, p):
    A = AbGroupExpr(cyclic=tuple(a))
    parts = AbGroupExpr()
    for r in (2, 3, 5, 7, 11, 13):
        parts = parts + A.p_part(r)
    rest = [n for n in A.cyclic if all(n % r for r in (2, 3, 5, 7, 11, 13))]
    assert parts + AbGroupExpr(cyclic=tuple(rest)) == A
