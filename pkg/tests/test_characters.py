"""Character group: enumeration, multiplicativity, orthogonality, Gauss sums."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_li.characters import (character_by_label, enumerate_characters,
                                     gauss_sum, is_fundamental_discriminant,
                                     kronecker_symbol, real_primitive_character)
from dirichlet_li.errors import NoRealPrimitiveCharacter, NotPrimitive


def euler_phi(q):
    return sum(1 for k in range(1, q + 1) if math.gcd(k, q) == 1)


@pytest.mark.parametrize("q,count", [(3, 2), (4, 2), (5, 4), (8, 4), (12, 4),
                                     (15, 8), (16, 8)])
def test_enumeration_counts(q, count):
    chars = enumerate_characters(q)
    assert len(chars) == count == euler_phi(q)
    # labels are 0..count-1 and the principal character is label 0
    assert [c.label for c in chars] == list(range(count))
    assert chars[0].is_principal


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([3, 5, 8, 12, 15, 21]),
       j=st.integers(min_value=0, max_value=500),
       k=st.integers(min_value=0, max_value=500))
def test_exact_multiplicativity(q, j, k):
    for chi in enumerate_characters(q):
        ej = chi.exponents[j % q]
        ek = chi.exponents[k % q]
        ejk = chi.exponents[(j * k) % q]
        if ej is None or ek is None:
            assert ejk is None
        else:
            assert ejk == (ej + ek) % chi.order


@pytest.mark.parametrize("q", [3, 5, 8, 12])
def test_orthogonality(q):
    # sum_k chi(k) over a period is 0 for non-principal chi, phi(q) otherwise
    for chi in enumerate_characters(q):
        s = sum(chi(k) for k in range(q))
        if chi.is_principal:
            assert s == pytest.approx(euler_phi(q), abs=1e-12)
        else:
            assert abs(s) < 1e-12


def test_conductor_and_primitivity():
    # mod 9: principal has conductor 1; the cubic characters are primitive,
    # and the lift of the quadratic... there is none (phi(9)=6, cyclic).
    chars = enumerate_characters(9)
    assert chars[0].conductor == 1 and not chars[0].is_primitive
    conductors = sorted(c.conductor for c in chars)
    assert conductors == [1, 3, 9, 9, 9, 9]
    # mod 12: the two non-principal non-primitive lifts have conductor 3, 4
    chars12 = enumerate_characters(12)
    assert sorted(c.conductor for c in chars12) == [1, 3, 4, 12]


def test_real_primitive_character_examples():
    chi3 = real_primitive_character(3)
    assert chi3.modulus == 3 and chi3.is_real and chi3.is_primitive
    assert chi3.parity_a == 1  # odd: chi(-1) = -1
    assert chi3.real_value(2) == -1

    chi5 = real_primitive_character(5)
    assert chi5.parity_a == 0  # 5 = 1 mod 4, even character
    assert chi5.real_value(2) == -1 and chi5.real_value(4) == 1

    with pytest.raises(NoRealPrimitiveCharacter):
        real_primitive_character(6)  # 6 is not |fundamental discriminant|
    with pytest.raises(NoRealPrimitiveCharacter):
        real_primitive_character(1)


def test_real_primitive_character_q8_prefers_even():
    chi8 = real_primitive_character(8)
    assert chi8.is_even  # +8 discriminant chosen over -8


def test_kronecker_vs_quadratic_residues():
    # for odd prime p, (p*/k) with p* = (-1)^((p-1)/2) p matches Legendre
    for p in (3, 5, 7, 11, 13, 97):
        d = p if p % 4 == 1 else -p
        for k in range(1, p):
            legendre = 1 if pow(k, (p - 1) // 2, p) == 1 else -1
            assert kronecker_symbol(d, k) == legendre
        assert kronecker_symbol(d, p) == 0


def test_fundamental_discriminants():
    fundamentals = [d for d in range(-30, 31) if is_fundamental_discriminant(d)]
    assert fundamentals == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3,
                            5, 8, 12, 13, 17, 21, 24, 28, 29]


def test_gauss_sum_mod3():
    chi = real_primitive_character(3)
    gs = gauss_sum(chi)
    with mpmath.workprec(110):
        # tau(chi_{-3}) = i sqrt(3), omega = 1
        assert abs(gs.tau - mpmath.mpc(0, 1) * mpmath.sqrt(3)) < 1e-25
        assert abs(gs.root_number_omega - 1) < 1e-25


def test_gauss_sum_mod4():
    chi = real_primitive_character(4)
    gs = gauss_sum(chi)
    with mpmath.workprec(110):
        assert abs(gs.tau - mpmath.mpc(0, 2)) < 1e-25
        assert abs(gs.root_number_omega - 1) < 1e-25


def test_gauss_sum_modulus_mod5():
    for chi in enumerate_characters(5):
        if not chi.is_primitive:
            continue
        gs = gauss_sum(chi)
        with mpmath.workprec(110):
            assert abs(abs(gs.tau) ** 2 - 5) < 1e-25
            assert abs(abs(gs.root_number_omega) - 1) < 1e-25


def test_gauss_sum_rejects_imprimitive():
    chi0 = enumerate_characters(9)[0]
    with pytest.raises(NotPrimitive):
        gauss_sum(chi0)


def test_character_by_label_bounds():
    assert character_by_label(5, 1).label == 1
    with pytest.raises(ValueError):
        character_by_label(5, 4)


def test_values_are_roots_of_unity():
    for chi in enumerate_characters(7):
        for k in range(1, 7):
            v = chi(k)
            assert abs(abs(v) - 1) < 1e-12
            assert abs(v ** chi.order - 1) < 1e-10
