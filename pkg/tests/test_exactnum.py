from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgerr.exactnum import (
    ModulusMismatchError,
    NoInverseError,
    Scalar,
    cyclotomic_modulus,
    root_of_unity,
)

from strategies import scalars

PHI3 = cyclotomic_modulus(3)
I_MOD = (1, 0, 1)


def poly_product_mod_phi3():
    # (z+1)(z-1) = z^2 - 1, and z^2 = -z - 1 modulo z^2 + z + 1
    return [Fraction(-2), Fraction(-1)]


def test_rational_sum():
    assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Fraction(5, 6)


def test_defining_relation():
    z = Scalar.generator(I_MOD)
    assert z * z == Scalar(-1, I_MOD)


def test_product_mod_phi3():
    z = Scalar.generator(PHI3)
    assert ((z + 1) * (z - 1)).coeffs == tuple(poly_product_mod_phi3())


def test_inverse_examples():
    assert Scalar(2).inverse() == Fraction(1, 2)
    z = Scalar.generator(I_MOD)
    assert z.inverse() == -z
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


def test_reducible_modulus_has_no_inverse():
    mod = (-1, 0, 1)  # z^2 - 1 = (z - 1)(z + 1)
    with pytest.raises(NoInverseError):
        Scalar([1, 1], mod).inverse()


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatchError):
        Scalar.generator(PHI3) + Scalar.generator(I_MOD)


def brute_cyclotomic(m):
    """Phi_m from its roots exp(2 pi i j/m), gcd(j, m) = 1, rounded."""
    import cmath
    from math import gcd

    coeffs = [complex(1)]
    for j in range(1, m + 1):
        if gcd(j, m) != 1:
            continue
        root = cmath.exp(2j * cmath.pi * j / m)
        new = [0j] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] -= root * c
        coeffs = new
    return tuple(Fraction(round(c.real)) for c in coeffs)


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_against_roots(m):
    assert cyclotomic_modulus(m) == brute_cyclotomic(m)


def test_cyclotomic_small():
    assert cyclotomic_modulus(1) == (-1, 1)
    assert cyclotomic_modulus(3) == (1, 1, 1)
    assert cyclotomic_modulus(4) == (1, 0, 1)


@pytest.mark.parametrize("m", [0, 31, -2])
def test_cyclotomic_range(m):
    with pytest.raises(ValueError):
        cyclotomic_modulus(m)


def test_roots_of_unity_in_common_field():
    z3 = root_of_unity(3, 12)
    z4 = root_of_unity(4, 12)
    assert z3 ** 3 == Scalar(1, z3.modulus) and z3 != 1
    assert z4 ** 2 == Scalar(-1, z4.modulus)
    assert 1 + z3 + z3 * z3 == Scalar(0, z3.modulus)


def test_json_forms():
    assert Scalar(Fraction(-5, 7)).to_json() == "-5/7"
    z = Scalar.generator(PHI3)
    assert Scalar.from_json(z.to_json()) == z
    assert Scalar.from_json("3") == 3
    with pytest.raises(ValueError):
        Scalar.from_json({"modulus": ["1", "1", "1"], "coeffs": ["1"]})


@settings(max_examples=150)
@given(st.data())
def test_field_axioms(data):
    a = data.draw(scalars())
    b = data.draw(scalars(a.modulus))
    c = data.draw(scalars(a.modulus))
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    if a:
        assert a * a.inverse() == Scalar(1, a.modulus)


@settings(max_examples=150)
@given(scalars())
def test_serialization_round_trip(a):
    assert Scalar.from_json(a.to_json()) == a
