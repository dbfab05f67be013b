import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contentlab import (
    InvalidModulusError,
    SizeCapError,
    classify_elements,
    ideal_generate,
    is_isomorphic,
    make_product,
    make_quotient,
    make_truncated_poly_ring,
    make_zmod,
)
from contentlab.finring import format_linear, verify_axioms
from contentlab.descriptors import parse_ring

import oracles


def test_zero_ring():
    z = make_zmod(1)
    assert z.size == 1 and z.zero == z.one


def test_zmod_arithmetic():
    z4, z6 = make_zmod(4), make_zmod(6)
    assert z4.size == 4 and z4.mul(2, 2) == 0
    assert z6.mul(2, 3) == 0 and z6.unit_mask[5]


@pytest.mark.parametrize("n", [0, -3])
def test_zmod_rejects_nonpositive(n):
    with pytest.raises(InvalidModulusError):
        make_zmod(n)


def test_size_cap():
    with pytest.raises(SizeCapError):
        make_zmod(5000)
    with pytest.raises(SizeCapError):
        make_truncated_poly_ring(make_zmod(4), 7)


def test_product_crt():
    assert is_isomorphic(make_product(make_zmod(2), make_zmod(3)), make_zmod(6))
    r = make_zmod(5)
    assert is_isomorphic(make_product(make_zmod(1), r), r)
    p = make_product(make_zmod(2), make_zmod(2))
    assert classify_elements(p).idempotents == {0, 1, 2, 3}
    assert not is_isomorphic(p, make_zmod(4))


def test_truncation():
    r, x = make_truncated_poly_ring(make_zmod(2), 1)
    assert is_isomorphic(r, make_zmod(2)) and x.is_zero()
    r, x = make_truncated_poly_ring(make_zmod(2), 4)
    assert r.size == 16 and not (x**3).is_zero() and (x**4).is_zero()
    r, x = make_truncated_poly_ring(make_zmod(4), 2)
    assert r.size == 16 and ((2 * x) * (2 * x)).is_zero()


def test_quotients():
    z4, z6 = make_zmod(4), make_zmod(6)
    q, proj = make_quotient(z4, ideal_generate(z4, [2]))
    assert is_isomorphic(q, make_zmod(2)) and proj.is_homomorphism()
    q, _ = make_quotient(z4, ideal_generate(z4, []))
    assert is_isomorphic(q, z4)
    q, _ = make_quotient(z6, ideal_generate(z6, [3]))
    assert is_isomorphic(q, make_zmod(3))


def test_classify():
    c = classify_elements(make_zmod(4))
    assert (c.units, c.zero_divisors, c.nilpotents, c.idempotents) == ({1, 3}, {0, 2}, {0, 2}, {0, 1})
    c = classify_elements(make_zmod(6))
    assert (c.units, c.zero_divisors, c.nilpotents, c.idempotents) == ({1, 5}, {0, 2, 3, 4}, {0}, {0, 1, 3, 4})
    assert classify_elements(make_zmod(5)).zero_divisors == {0}


def test_format_linear():
    assert format_linear(["1", "2", "0"], ["1", "x", "x^2"]) == "1+2x"
    assert format_linear(["0", "1"], ["1", "y"]) == "y"
    assert format_linear(["0", "0"], ["1", "y"]) == "0"
    assert format_linear(["0", "1+x"], ["1", "y"]) == "(1+x)*y"


DESCRIPTORS = ["Z/1", "Z/7", "trunc(Z/3,2)", "prod(Z/2,Z/3)", "trunc(trunc(Z/2,2),2)",
               "quot(Z/12; 4)", "prod(trunc(Z/2,2),Z/2)", "quot(trunc(Z/2,3); x^2)", "trunc(prod(Z/2,Z/2),2)"]


@pytest.mark.parametrize("text", DESCRIPTORS)
def test_axioms_and_descriptor_round_trip(text):
    r = parse_ring(text)
    verify_axioms(r)
    assert parse_ring(r.descriptor) == r


@given(st.integers(1, 12), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_truncated_rings_match_oracle(n, d):
    if n**d > 400:
        return
    r, _ = make_truncated_poly_ring(make_zmod(n), d)
    ref = oracles.trunc(oracles.zmod(n), d)
    # canonical index = sum c_i n^i, so decode to coefficient tuples
    coeffs = [tuple((i // n**k) % n for k in range(d)) for i in range(r.size)]
    lookup = {c: i for i, c in enumerate(coeffs)}
    for a in range(r.size):
        for b in range(r.size):
            assert r.mul(a, b) == lookup[ref.mul(coeffs[a], coeffs[b])]
            assert r.add(a, b) == lookup[ref.add(coeffs[a], coeffs[b])]


@given(st.integers(1, 30), st.integers(0, 200), st.integers(0, 200))
def test_zmod_power_and_from_int(n, a, k):
    r = make_zmod(n)
    assert r.from_int(a) == a % n
    assert r.power(a % n, k % 20) == pow(a, k % 20, n) if n > 1 else r.power(0, k % 20) == 0


def test_tables_are_readonly_and_compact():
    r = make_zmod(12)
    assert r.mul_table.dtype == np.int16
    with pytest.raises(ValueError):
        r.mul_table[0, 0] = 1
