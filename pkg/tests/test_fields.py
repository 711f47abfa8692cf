from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from commpres.fields import is_prime, prime_field, rationals


def test_rationals_singleton_properties():
    Q = rationals()
    assert Q.is_rational
    assert Q.characteristic == 0
    assert Q.size is None
    assert Q.zero == Fraction(0)
    assert Q.one == Fraction(1)
    assert Q.of(-3) == Fraction(-3)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        prime_field(6)
    with pytest.raises(ValueError):
        prime_field(1)
    assert prime_field(7).characteristic == 7


def test_is_prime_small_values():
    primes = [p for p in range(60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_prime_scalar_arithmetic():
    F5 = prime_field(5)
    a, b = F5.of(3), F5.of(4)
    assert a + b == F5.of(2)
    assert a - b == F5.of(4)
    assert a * b == F5.of(2)
    assert a / b == F5.of(2)  # 3 * 4^{-1} = 3 * 4 = 12 = 2
    assert -a == F5.of(2)
    assert a ** 2 == F5.of(4)
    assert a ** -1 == F5.of(2)
    assert bool(F5.zero) is False and bool(a) is True


def test_prime_scalar_mixes_with_ints_but_not_across_moduli():
    F3 = prime_field(3)
    assert F3.of(2) + 2 == F3.of(1)
    assert 2 * F3.of(2) == F3.of(1)
    with pytest.raises(ValueError):
        F3.of(1) + prime_field(5).of(1)


def test_field_equality_and_enumeration():
    assert prime_field(3) == prime_field(3)
    assert prime_field(3) != prime_field(5)
    assert prime_field(3) != rationals()
    assert [s.value for s in prime_field(3).elements()] == [0, 1, 2]
    with pytest.raises(ValueError):
        rationals().elements()


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_f7_ring_axioms(a, b, c):
    F7 = prime_field(7)
    x, y, z = F7.of(a), F7.of(b), F7.of(c)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)


@given(st.integers(-50, 50))
def test_f7_inverses(a):
    F7 = prime_field(7)
    x = F7.of(a)
    assert x + (-x) == F7.zero
    if x:
        assert x * (F7.one / x) == F7.one


def test_random_nonzero_is_nonzero():
    import random

    rng = random.Random(7)
    for field in (rationals(), prime_field(2), prime_field(5)):
        for _ in range(30):
            assert field.random_nonzero(rng)


def test_prime_scalar_repr_and_hash():
    F3 = prime_field(3)
    assert repr(F3.of(5)) == "2 (mod 3)"
    assert hash(F3.of(5)) == hash(F3.of(2))
    assert len({F3.of(0), F3.of(3), F3.of(1)}) == 2
