import itertools

import pytest
from hypothesis import given, settings, strategies as st

from diffbase import gf
from diffbase.errors import DomainError, ResourceLimitError


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert gf.is_prime(n) == (n in primes)


def test_factorize():
    assert gf.factorize(1) == []
    assert gf.factorize(12) == [2, 3]
    assert gf.factorize(97) == [97]
    assert gf.factorize(2 * 3 * 5 * 7) == [2, 3, 5, 7]


def test_prime_power_decompose():
    assert gf.prime_power_decompose(8) == (2, 3)
    assert gf.prime_power_decompose(27) == (3, 3)
    assert gf.prime_power_decompose(7) == (7, 1)
    for bad in (1, 6, 12, 100):
        with pytest.raises(DomainError):
            gf.prime_power_decompose(bad)
    assert gf.is_prime_power(32)
    assert not gf.is_prime_power(33)


@pytest.mark.parametrize("p,deg", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_methods_agree(p, deg):
    # all monic polynomials of the given degree
    for low in itertools.product(range(p), repeat=deg):
        m = tuple(low) + (1,)
        assert gf.irreducible_by_trial_division(m, p) == gf.irreducible_by_frobenius(
            m, p
        )


def test_modulus_is_irreducible_and_minimal():
    f = gf.make_field(2, 4)
    assert len(f.modulus) == 5 and f.modulus[-1] == 1
    assert gf.irreducible_by_trial_division(f.modulus, 2)
    # no monic irreducible of smaller integer value
    val = gf._poly_value(f.modulus[:-1], 2)
    for v in range(val):
        low = gf._poly_from_value(v, 2)
        m = low + (0,) * (4 - len(low)) + (1,)
        assert not gf.irreducible_by_trial_division(m, 2)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1)])
def test_field_axioms(p, k):
    f = gf.make_field(p, k)
    q = f.q
    elems = [gf.elem_from_value(f, v) for v in range(q)]
    one = (1,)
    for a in elems:
        assert gf.fmul(f, a, one) == a
        assert gf.add(f, a, ()) == a
    # distributivity and commutativity on a full sweep for small q
    for a in elems:
        for b in elems:
            assert gf.fmul(f, a, b) == gf.fmul(f, b, a)
            for c in elems[:4]:
                lhs = gf.fmul(f, a, gf.add(f, b, c))
                rhs = gf.add(f, gf.fmul(f, a, b), gf.fmul(f, a, c))
                assert lhs == rhs
    # every nonzero element is invertible: a^(q-1) = 1
    for a in elems[1:]:
        assert gf.fpow(f, a, q - 1) == one


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (5, 2), (2, 8), (7, 2)])
def test_dlog_table_roundtrip(p, k):
    f = gf.make_field(p, k)
    t = gf.dlog_table(f)
    q = f.q
    assert len(t.log) == q - 1 == len(t.powers)
    for i in (0, 1, 2, q - 2):
        assert t.log[t.powers[i]] == i
        assert gf.fpow(f, t.generator, i) == t.powers[i]


def test_primitive_element_minimal():
    f = gf.make_field(7, 1)
    # 3 is the smallest primitive root mod 7
    assert gf.elem_value(f, gf.primitive_element(f)) == 3


@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (7, 1), (2, 5)]), st.data())
@settings(max_examples=50)
def test_frobenius_endomorphism(pk, data):
    p, k = pk
    f = gf.make_field(p, k)
    a = gf.elem_from_value(f, data.draw(st.integers(0, f.q - 1)))
    b = gf.elem_from_value(f, data.draw(st.integers(0, f.q - 1)))
    lhs = gf.fpow(f, gf.add(f, a, b), p)
    rhs = gf.add(f, gf.fpow(f, a, p), gf.fpow(f, b, p))
    assert lhs == rhs


def test_field_size_cap():
    with pytest.raises(ResourceLimitError):
        gf.make_field(2, 21)
    with pytest.raises(DomainError):
        gf.make_field(4, 2)  # p must be prime
