from fractions import Fraction

import pytest

from genus8.field import GF, QQ, is_prime, parse_field
from genus8.rng import SplitMix64


def test_splitmix64_reference_vector():
    r = SplitMix64(1234567)
    assert [r.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821]
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("fp:11") == GF(11)
    for bad in ("fp:4", "fp:2", "fp:3", "fp:x", "r", "fp:9"):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(10) == 3
    assert F.div(1, 3) == 5
    assert F.inv(6) == 6
    with pytest.raises(ZeroDivisionError):
        F.div(1, 0)


def test_rationals_json_round_trip():
    for x in (Fraction(-3, 7), Fraction(5), Fraction(0)):
        assert QQ.from_json(QQ.to_json(x)) == x


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_rng_elements_in_range():
    r = SplitMix64(5)
    assert all(0 <= r.element(GF(11)) < 11 for _ in range(200))
    assert all(-9 <= r.element(QQ) <= 9 for _ in range(200))
