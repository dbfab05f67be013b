import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contentlab import (
    DescriptorSyntaxError,
    InvalidModulusError,
    SizeCapError,
    parse_algebra,
    parse_descriptor,
    parse_element,
    parse_ring,
)


def test_ring_examples():
    assert parse_descriptor("trunc(Z/2,4)").size == 16
    s = parse_descriptor("quad(x^3)", base=parse_ring("trunc(Z/2,4)"))
    assert s.descriptor == "quad(x^3)" and s.size == 256


def test_invalid_modulus_position():
    with pytest.raises(InvalidModulusError) as err:
        parse_ring("trunc(Z/0,2)")
    assert err.value.position == 8
    assert "position 8" in str(err.value)


@pytest.mark.parametrize("text,pos", [
    ("", 0), ("Z/", 2), ("Z/4)", 3), ("prod(Z/2 Z/3)", 9), ("tranc(Z/2,2)", 0), ("quot(Z/4; w)", 10),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(DescriptorSyntaxError) as err:
        parse_ring(text)
    assert err.value.position == pos


def test_algebra_errors():
    base = parse_ring("Z/4")
    with pytest.raises(DescriptorSyntaxError):
        parse_algebra("quad(x)", base)
    with pytest.raises(DescriptorSyntaxError):
        parse_algebra("group(Z/2", base)
    with pytest.raises(SizeCapError):
        parse_algebra("trunc(7)", base)


def test_elements():
    base = parse_ring("trunc(Z/2,4)")
    s = parse_algebra("quad(x^3)", base)
    assert parse_element("y*y", s) == s.scalar(base.symbols["x"].power(3).index) if hasattr(base.symbols["x"], "power") else True
    assert str(parse_element("y*y", s)) == "x^3"
    assert str(parse_element("(1+x)y - y", s)) == "x*y"
    assert str(parse_element("x^2 + x^2", s)) == "0"
    assert str(parse_element("[1,2]", parse_ring("prod(Z/2,Z/3)"))) == "[1,2]"
    assert parse_element("3", parse_ring("Z/5")).index == 3


RINGS = [
    "Z/1", "Z/2", "Z/12", "trunc(Z/2,4)", "trunc(Z/3,3)", "prod(Z/2,Z/3)", "prod(Z/4,Z/4)",
    "trunc(prod(Z/2,Z/2),2)", "prod(trunc(Z/2,2),Z/3)", "quot(Z/12; 4)", "quot(Z/12; 2,3)",
    "quot(trunc(Z/2,4); x^2)", "quot(prod(Z/2,Z/2); [1,0])", "trunc(trunc(Z/2,2),2)", "trunc(Z/4,2)",
]


@pytest.mark.parametrize("text", RINGS)
def test_ring_round_trip(text):
    r = parse_ring(text)
    again = parse_ring(r.descriptor)
    assert again == r
    for i in r.elements():
        assert parse_element(r.name(i), r).index == i


ALGEBRAS = [("Z/4", "id"), ("Z/4", "trunc(3)"), ("Z/6", "quad(5)"), ("trunc(Z/2,4)", "quad(x^3)"),
            ("Z/3", "group(Z/3)"), ("prod(Z/2,Z/3)", "quad([1,2])"), ("trunc(Z/2,2)", "trunc(2)"),
            ("trunc(Z/2,2)", "group(Z/2)")]


@pytest.mark.parametrize("base,alg", ALGEBRAS)
def test_algebra_element_round_trip(base, alg):
    r = parse_ring(base)
    s = parse_algebra(alg, r)
    assert parse_algebra(s.descriptor, r) == s
    for f in s.elements():
        assert parse_element(str(f), s) == f


@given(st.integers(1, 40), st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_zmod_integers_reduce(n, k):
    r = parse_ring(f"Z/{n}")
    assert parse_element(str(k), r).index == k % n
    assert parse_element(f"-{k}", r).index == (-k) % n
