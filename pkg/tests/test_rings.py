import pytest
from hypothesis import given, strategies as st

from starmono.errors import NotInvertible
from starmono.rings import QQ, ZZ, Ring, integers_mod, is_prime, prime_field, rational, ring_from_label


def test_descriptor_validation():
    with pytest.raises(ValueError):
        integers_mod(1)
    with pytest.raises(ValueError):
        prime_field(6)
    with pytest.raises(ValueError):
        Ring("Z", 5)
    with pytest.raises(ValueError):
        Ring("weird")
    assert prime_field(101).is_field
    assert not integers_mod(6).is_field


def test_is_prime_small():
    primes = [2, 3, 5, 7, 11, 101, 2**31 - 1]
    composites = [0, 1, 4, 9, 91, 561, 2**32 + 1]
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(c) for c in composites)


def test_canon_and_inverse():
    assert ZZ.canon(rational(4)) == 4
    with pytest.raises(ValueError):
        ZZ.canon(rational(1, 2))
    assert integers_mod(6).canon(-1) == 5
    assert QQ.inv(rational(2, 3)) == rational(3, 2)
    assert integers_mod(6).inv(5) == 5
    with pytest.raises(NotInvertible):
        integers_mod(6).inv(2)
    with pytest.raises(NotInvertible):
        ZZ.inv(2)
    assert ZZ.inv(-1) == -1


def test_labels_roundtrip():
    for ring in (ZZ, QQ, prime_field(7), integers_mod(12)):
        assert ring_from_label(ring.label()) == ring
    with pytest.raises(ValueError):
        ring_from_label("Fp:8")
    with pytest.raises(ValueError):
        ring_from_label("bogus")


@given(st.integers(-10**12, 10**12), st.integers(1, 10**6))
def test_rational_codec_roundtrip(p, q):
    x = QQ.canon(rational(p, q))
    assert QQ.parse_scalar(QQ.format_scalar(x)) == x


@given(st.integers(-10**9, 10**9))
def test_modular_codec_roundtrip(v):
    ring = integers_mod(360)
    x = ring.canon(v)
    assert 0 <= x < 360
    assert ring.parse_scalar(ring.format_scalar(x)) == x


def test_q_formats_integers_bare():
    assert QQ.format_scalar(rational(3)) == "3"
    assert QQ.format_scalar(rational(-7, 2)) == "-7/2"
    assert QQ.parse_scalar("3/6") == rational(1, 2)
