import math
import random
from fractions import Fraction

import numpy as np
import pytest

import weylsum as ws


def test_enumerate_small_groups():
    chars = ws.enumerate_characters(4)
    assert len(chars) == 2
    assert chars[0].is_principal
    assert chars[1](3) == pytest.approx(-1)

    chars = ws.enumerate_characters(1)
    assert len(chars) == 1
    assert all(chars[0](n) == 1 for n in range(10))

    chars = ws.enumerate_characters(5)
    assert len(chars) == 4
    got = {complex(np.round(c(2), 9)) for c in chars}
    assert got == {1 + 0j, 1j, -1 + 0j, -1j}


def test_character_multiplicativity_and_vanishing():
    rng = random.Random(4)
    for k in (8, 9, 15, 24):
        for chi in ws.enumerate_characters(k):
            assert chi(1) == pytest.approx(1)
            for _ in range(30):
                m, n = rng.randint(1, 200), rng.randint(1, 200)
                if math.gcd(m * n, k) == 1:
                    assert chi(m * n) == pytest.approx(chi(m) * chi(n), abs=1e-12)
            for n in range(k):
                if math.gcd(n, k) > 1:
                    assert chi(n) == 0


def test_row_and_column_orthogonality_spot():
    for k in (3, 8, 12, 45, 60):
        chars = ws.enumerate_characters(k)
        for chi in chars:
            total = chi.value_table().sum()
            if chi.is_principal:
                assert total == pytest.approx(sum(
                    1 for n in range(k) if math.gcd(n, k) == 1
                ))
            else:
                assert abs(total) < 1e-10
        phi = len(chars)
        for n in range(1, k + 1):
            if math.gcd(n, k) != 1:
                continue
            col = sum(c(n) for c in chars)
            want = phi if n % k == 1 else 0.0
            assert abs(col - want) < 1e-10


def test_conductor_examples():
    chars12 = ws.enumerate_characters(12)
    assert ws.conductor(chars12[0]) == 1  # principal
    # the mod-8 character induced from the nonprincipal mod-4 character
    chars8 = ws.enumerate_characters(8)
    conds = sorted(ws.conductor(c) for c in chars8)
    assert conds == [1, 4, 8, 8]
    for c in ws.enumerate_characters(5):
        assert ws.conductor(c) == (1 if c.is_principal else 5)


def _induced_by_brute_force(chi, f):
    """Oracle: does some character mod f agree with chi on units mod k?"""
    k = chi.modulus
    for psi in ws.enumerate_characters(f):
        if all(
            abs(chi(n) - psi(n)) < 1e-12
            for n in range(1, k + 1)
            if math.gcd(n, k) == 1
        ):
            return True
    return False


def test_conductor_against_induction_oracle():
    from weylsum.characters import _divisors

    for k in (6, 8, 12, 20, 36):
        for chi in ws.enumerate_characters(k):
            cond = ws.conductor(chi)
            assert cond == min(
                f for f in _divisors(k) if _induced_by_brute_force(chi, f)
            )


def test_conductor_multiplicative_over_components():
    # k = 45 = 9 * 5: conductor factors through the component restriction
    for chi in ws.enumerate_characters(45):
        c = ws.conductor(chi)
        assert 45 % c == 0
        c9 = ws.conductor(
            ws.DirichletCharacter(ws.CharGroup.build(9), chi.exponents[:1])
        )
        c5 = ws.conductor(
            ws.DirichletCharacter(ws.CharGroup.build(5), chi.exponents[1:])
        )
        assert c == c9 * c5


def test_mixed_char_sum_examples():
    chi = ws.enumerate_characters(5)[1]
    zero_phase = ws.parse_phase("0*x")
    assert abs(ws.mixed_char_sum(chi, zero_phase, 5)) < 1e-12
    one = ws.principal_character(1)
    assert ws.mixed_char_sum(one, zero_phase, 100) == pytest.approx(100)
    chi4 = ws.enumerate_characters(4)[1]
    assert abs(ws.mixed_char_sum(chi4, ws.parse_phase("x/2"), 8)) < 1e-12


def test_complete_twisted_sum_examples():
    chi5 = next(
        c for c in ws.enumerate_characters(5)
        if not c.is_principal and abs(c(2) + 1) < 1e-9
    )
    # quadratic character: classical Gauss sum of magnitude sqrt(5)
    out = ws.complete_twisted_sum(chi5, [0, 1], 5)
    assert abs(out.value) == pytest.approx(math.sqrt(5), abs=1e-9)
    assert out.normalized == pytest.approx(1.0, abs=1e-9)
    # nonprincipal with zero polynomial: plain orthogonality
    out = ws.complete_twisted_sum(chi5, [0], 1)
    assert abs(out.value) < 1e-12
    # principal mod q, P(x) = x: sum over units = -1
    chi7 = ws.principal_character(7)
    out = ws.complete_twisted_sum(chi7, [0, 1], 7)
    assert out.value == pytest.approx(-1 + 0j, abs=1e-12)
    # trivial character mod 1: full geometric sum vanishes
    one = ws.principal_character(1)
    out = ws.complete_twisted_sum(one, [0, 1], 12)
    assert out.modulus == 12
    assert abs(out.value) < 1e-12


def test_pretentious_decompose_exact_rational(sieve_10k):
    mob = ws.sieve_values(ws.mobius(), sieve_10k, 10**3)
    F = ws.PolyPhase.from_coeffs([Fraction(1, 2)])
    dec = ws.pretentious_decompose(mob, F, 10**3, 2, 0.0)
    assert dec.k == 2
    assert dec.max_discrepancy == 0.0
    assert dec.T_direct == pytest.approx(dec.T_reconstructed, abs=1e-12)


def test_pretentious_decompose_golden_and_mixed(sieve_10k):
    mob = ws.sieve_values(ws.mobius(), sieve_10k, 10**4)
    dec = ws.pretentious_decompose(mob, ws.parse_phase("golden*x"), 10**4, 2, 0.0)
    fib = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987}
    assert dec.k in fib  # golden-ratio convergents have Fibonacci denominators
    scale = max(1.0, abs(dec.T_direct))
    assert abs(dec.T_direct - dec.T_reconstructed) <= 1e-9 * scale
    assert dec.max_discrepancy <= 1e-9 * max(
        1.0, float(np.max(np.abs(dec.S_direct)))
    )

    F2 = ws.PolyPhase.from_coeffs([Fraction(1, 4), Fraction(1, 3)])
    dec2 = ws.pretentious_decompose(mob, F2, 10**3, 2, 0.0)
    assert dec2.k == 12
    assert dec2.max_discrepancy <= 1e-9


def test_pretentious_decompose_random_configurations(sieve_10k):
    rng = random.Random(31)
    mob = ws.sieve_values(ws.mobius(), sieve_10k, 2000)
    li = ws.sieve_values(ws.liouville(), sieve_10k, 2000)
    for trial in range(10):
        N = rng.randint(300, 2000)
        den1 = rng.randint(2, 30)
        den2 = rng.randint(2, 12)
        F = ws.PolyPhase.from_coeffs(
            [Fraction(rng.randint(1, den1 - 1), den1),
             Fraction(rng.randint(1, den2 - 1), den2)]
        )
        fv = mob if trial % 2 else li
        dec = ws.pretentious_decompose(fv, F, N, 2, 0.0)
        scale = max(1.0, float(np.max(np.abs(dec.S_direct))))
        assert dec.max_discrepancy <= 1e-9 * scale, (N, F)


def test_pretentious_witness(sieve_10k):
    # f = conj(chi) mod 3: the witness recovers chi with value ~ #{n coprime to 3}
    chi3 = next(c for c in ws.enumerate_characters(3) if not c.is_principal)
    N = 10**3
    fvals = np.conj(chi3.value_table())[np.arange(N + 1) % 3]
    w = ws.pretentious_witness(fvals, N, 6)
    assert w.k == 3
    assert w.magnitude == pytest.approx(667, abs=1e-6)

    ones = np.ones(N + 1, dtype=np.complex128)
    w = ws.pretentious_witness(ones, N, 4)
    assert w.k == 1 and w.u == N
    assert w.magnitude == pytest.approx(N)


def test_pretentious_witness_mobius_no_pretension(sieve_10k):
    N = 10**4
    mob = ws.sieve_values(ws.mobius(), sieve_10k, N)
    w = ws.pretentious_witness(mob, N, 8)
    assert w.magnitude <= N**0.7


def test_guards():
    with pytest.raises(ws.ResourceError):
        ws.CharGroup.build(10**6 + 1)
    ones = np.ones(101, dtype=np.complex128)
    with pytest.raises(ws.ParameterError):
        ws.pretentious_witness(ones, 100, 10**4 + 1)
