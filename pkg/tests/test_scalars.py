"""Exact scalar towers: quadratic extensions, Gaussian-sqrt5, quaternions."""

import random
from fractions import Fraction

import pytest

from paradoxcert.scalars import (
    GaussSqrt5,
    QSqrt2,
    QSqrt5,
    Quaternion,
    RING_GAUSS_SQRT5,
    RING_QSQRT2,
    RING_QUAT_SQRT5,
    RING_RATIONAL,
    abs_float,
    ring_of,
    scalar_from_json,
    scalar_key,
    scalar_to_json,
    to_float_scalar,
)


def _rand_qsqrt2(rng):
    return QSqrt2(Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
                  Fraction(rng.randint(-9, 9), rng.randint(1, 7)))


def _rand_gauss(rng):
    return GaussSqrt5(rng.randint(-9, 9), rng.randint(-9, 9),
                      rng.randint(-9, 9), rng.randint(-9, 9),
                      rng.randint(1, 7))


def _rand_qsqrt5(rng):
    return QSqrt5(Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
                  Fraction(rng.randint(-9, 9), rng.randint(1, 7)))


def _rand_quat(rng):
    return Quaternion(_rand_qsqrt5(rng), _rand_qsqrt5(rng),
                      _rand_qsqrt5(rng), _rand_qsqrt5(rng))


def test_qsqrt2_arithmetic_matches_floats():
    rng = random.Random(7)
    for _ in range(200):
        x, y = _rand_qsqrt2(rng), _rand_qsqrt2(rng)
        for got, expect in (
                (x + y, to_float_scalar(x) + to_float_scalar(y)),
                (x - y, to_float_scalar(x) - to_float_scalar(y)),
                (x * y, to_float_scalar(x) * to_float_scalar(y))):
            assert abs(to_float_scalar(got) - expect) < 1e-9


def test_qsqrt2_sqrt_squares_to_two():
    root2 = QSqrt2(0, 1)
    assert root2 * root2 == QSqrt2(2, 0)


def test_qsqrt5_and_qsqrt2_do_not_mix():
    from paradoxcert.errors import BackendMismatchError
    with pytest.raises((BackendMismatchError, TypeError)):
        QSqrt2(1, 1) * QSqrt5(1, 1)


def test_gauss_sqrt5_is_a_commutative_ring():
    rng = random.Random(11)
    for _ in range(100):
        x, y, z = _rand_gauss(rng), _rand_gauss(rng), _rand_gauss(rng)
        assert x * y == y * x
        assert (x + y) * z == x * z + y * z
        assert x * (y * z) == (x * y) * z


def test_gauss_sqrt5_conjugation_is_multiplicative():
    rng = random.Random(13)
    for _ in range(100):
        x, y = _rand_gauss(rng), _rand_gauss(rng)
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        # x * conj(x) is a nonnegative real element
        n = x * x.conjugate()
        assert n == n.conjugate()
        assert to_float_scalar(n).real >= 0


def test_quaternions_are_noncommutative():
    z, o = QSqrt5(0, 0), QSqrt5(1, 0)
    i = Quaternion(z, o, z, z)
    j = Quaternion(z, z, o, z)
    k = Quaternion(z, z, z, o)
    assert i * j == k
    assert j * i == -k
    assert i * i == Quaternion(-o, z, z, z)


def test_quaternion_conjugation_reverses_products():
    rng = random.Random(17)
    for _ in range(60):
        x, y = _rand_quat(rng), _rand_quat(rng)
        assert (x * y).conjugate() == y.conjugate() * x.conjugate()


def test_quaternion_associativity():
    rng = random.Random(19)
    for _ in range(60):
        x, y, z = _rand_quat(rng), _rand_quat(rng), _rand_quat(rng)
        assert (x * y) * z == x * (y * z)


def test_scalar_key_identifies_rationals_across_rings():
    # the same rational value embedded in different rings keys identically
    val = Fraction(3, 2)
    z = QSqrt5(0, 0)
    keys = {
        scalar_key(val),
        scalar_key(QSqrt2(val, 0)),
        scalar_key(QSqrt5(val, 0)),
        scalar_key(GaussSqrt5(3, 0, 0, 0, 2)),
        scalar_key(Quaternion(QSqrt5(val, 0), z, z, z)),
    }
    assert len(keys) == 1


def test_scalar_key_identifies_sqrt5_across_rings():
    a, b = Fraction(1, 3), Fraction(-2, 3)
    k1 = scalar_key(QSqrt5(a, b))
    k2 = scalar_key(GaussSqrt5(1, -2, 0, 0, 3))
    assert k1 == k2


def test_scalar_key_distinguishes_values():
    rng = random.Random(23)
    seen = {}
    for _ in range(200):
        x = _rand_gauss(rng)
        k = scalar_key(x)
        if k in seen:
            assert seen[k] == x
        seen[k] = x


def test_ring_of_dispatch():
    assert ring_of(Fraction(1, 2)) is RING_RATIONAL
    assert ring_of(QSqrt2(1, 1)) is RING_QSQRT2
    assert ring_of(GaussSqrt5(1)) is RING_GAUSS_SQRT5
    assert ring_of(_rand_quat(random.Random(0))) is RING_QUAT_SQRT5


def test_json_round_trip_every_ring():
    rng = random.Random(29)
    cases = [
        (Fraction(-7, 3), RING_RATIONAL),
        (_rand_qsqrt2(rng), RING_QSQRT2),
        (_rand_gauss(rng), RING_GAUSS_SQRT5),
        (_rand_quat(rng), RING_QUAT_SQRT5),
    ]
    for x, ring in cases:
        assert scalar_from_json(scalar_to_json(x), ring) == x


def test_json_uses_exact_component_strings():
    obj = scalar_to_json(QSqrt2(Fraction(1, 3), Fraction(-2, 3)))
    assert obj == {"a": "1/3", "b": "-2/3"}


def test_abs_float_on_each_lane():
    assert abs_float(Fraction(-3, 2)) == 1.5
    assert abs(abs_float(QSqrt2(0, 1)) - 2 ** 0.5) < 1e-12
    assert abs_float(complex(3, 4)) == 5.0
    z = QSqrt5(0, 0)
    q = Quaternion(QSqrt5(1, 0), z, QSqrt5(2, 0), z)
    assert abs(abs_float(q) - 5 ** 0.5) < 1e-12
