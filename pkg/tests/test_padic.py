import random

import pytest

from burnfuse.errors import NonUnitError, ScalarMismatchError
from burnfuse.padic import PadicInt, congruent, is_prime, xgcd


def test_examples():
    assert (PadicInt(2, 4, 3) + PadicInt(2, 4, 13)).residue == 0
    assert (PadicInt(3, 3, 2) * PadicInt(3, 3, 14)).residue == 1
    mixed = PadicInt(2, 4, 5) + PadicInt(2, 2, 1)
    assert (mixed.precision, mixed.residue) == (2, 2)


def test_invert_examples():
    assert PadicInt(5, 3, 1).invert().residue == 1
    assert PadicInt(2, 4, 3).invert().residue == 11
    assert PadicInt(3, 4, 4).invert().residue == 61


def test_invert_errors():
    with pytest.raises(NonUnitError):
        PadicInt(3, 4, 6).invert()
    with pytest.raises(ScalarMismatchError):
        PadicInt(2, 3, 1) + PadicInt(3, 3, 1)


def test_not_prime_rejected():
    with pytest.raises(ScalarMismatchError):
        PadicInt(4, 2, 1)


def test_ring_axioms_random():
    rng = random.Random(7)
    for p, k in [(2, 6), (3, 4), (5, 3)]:
        mod = p ** k
        for _ in range(50):
            a, b, c = (PadicInt(p, k, rng.randrange(mod)) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            assert a + (-a) == PadicInt(p, k, 0)
            assert 1 * a == a


def test_invert_random_units():
    rng = random.Random(8)
    for p, k in [(2, 8), (3, 5)]:
        for _ in range(30):
            r = rng.randrange(p ** k)
            if r % p == 0:
                continue
            u = PadicInt(p, k, r)
            assert u * u.invert() == PadicInt(p, k, 1)


def test_precision_monotonicity():
    rng = random.Random(9)
    for _ in range(40):
        p, k = 3, 5
        a = PadicInt(p, k, rng.randrange(p ** k))
        b = PadicInt(p, k, rng.randrange(p ** k))
        for op in (lambda x, y: x + y, lambda x, y: x * y):
            reduced_then = op(a.reduce_to(3), b.reduce_to(3))
            then_reduced = op(a, b).reduce_to(3)
            assert reduced_then == then_reduced


def test_congruent_and_str():
    assert congruent(PadicInt(2, 4, 5), PadicInt(2, 2, 1))
    assert not congruent(PadicInt(2, 4, 5), PadicInt(2, 4, 1))
    assert str(PadicInt(2, 4, 5)) == "5 mod 2^4"


def test_json_round_trip():
    x = PadicInt(3, 6, 217)
    assert PadicInt.from_json(x.to_json()) == x
    assert x.to_json() == {"p": 3, "k": 6, "r": "217"}


def test_int_mixing():
    a = PadicInt(3, 3, 5)
    assert 2 * a == PadicInt(3, 3, 10)
    assert a + 1 == PadicInt(3, 3, 6)
    assert 1 - a == PadicInt(3, 3, -4)


def test_xgcd_and_primality():
    for a, b in [(12, 18), (35, 64), (0, 5), (7, 0)]:
        x, y, g = xgcd(a, b)
        assert x * a + y * b == g
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
