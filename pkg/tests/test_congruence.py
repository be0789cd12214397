import math
import random
from fractions import Fraction

import numpy as np
import pytest

import weylsum as ws
from weylsum.congruence import brute_force_roots, max_growth_exponent


def test_discriminant_examples():
    assert ws.discriminant([1, 0, 1]) == -4  # x^2 + 1
    assert ws.discriminant([-1, -1, 1]) == 5  # x^2 - x - 1
    assert ws.discriminant([-2, 0, 0, 1]) == -108  # x^3 - 2


def test_discriminant_quadratic_cubic_formulas():
    rng = random.Random(3)
    for _ in range(50):
        a, b, c = rng.randint(1, 9), rng.randint(-9, 9), rng.randint(-9, 9)
        want = b * b - 4 * a * c
        assert ws.discriminant([c, b, a]) == want
    for _ in range(50):
        p, q = rng.randint(-9, 9), rng.randint(-9, 9)
        want = -4 * p**3 - 27 * q**2
        assert ws.discriminant([q, p, 0, 1]) == want


def test_discriminant_against_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    rng = random.Random(11)
    for _ in range(20):
        deg = rng.randint(2, 5)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.randint(1, 6)]
        expr = sum(c * x**j for j, c in enumerate(coeffs))
        want = sympy.discriminant(expr, x)
        if want == 0:
            with pytest.raises(ws.ParameterError):
                ws.IntPoly.from_coeffs(coeffs)
        else:
            assert ws.discriminant(coeffs) == want


def test_irreducibility(sieve_10k):
    with pytest.raises(ws.ParameterError, match="rational root"):
        ws.irreducibility_check(ws.IntPoly.from_coeffs([-1, 0, 1]), sieve_10k)
    p = ws.irreducibility_check(ws.parse_poly("x^2+1"), sieve_10k)
    assert p.irreducibility.status == "irreducible"
    p = ws.irreducibility_check(ws.parse_poly("x^3-2"), sieve_10k)
    assert p.irreducibility.status == "irreducible"
    # degree 4, irreducible over Q and certifiable mod 2
    p = ws.irreducibility_check(ws.parse_poly("x^4-x-1"), sieve_10k)
    assert p.irreducibility.status == "irreducible"
    assert p.irreducibility.method == "certified"
    # x^4+1 splits mod every prime: stays "asserted"
    p = ws.irreducibility_check(ws.parse_poly("x^4+1"), sieve_10k)
    assert p.irreducibility.status == "asserted"


def test_roots_mod_prime_examples(x2p1):
    assert ws.roots_mod_prime(x2p1, 5) == [2, 3]
    assert ws.roots_mod_prime(x2p1, 3) == []
    assert ws.roots_mod_prime(x2p1, 2) == [1]
    assert ws.roots_mod_prime(x2p1, 97) == brute_force_roots(x2p1, 97)


def test_lift_examples(x2p1):
    assert ws.lift_roots(x2p1, 5, 2) == [7, 18]
    assert ws.lift_roots(x2p1, 2, 2) == []
    # away from the discriminant the count is preserved by unique lifting
    for q in (5, 13, 17):
        for k in (2, 3):
            lifted = ws.lift_roots(x2p1, q, k)
            assert len(lifted) == len(ws.roots_mod_prime(x2p1, q))
            assert lifted == brute_force_roots(x2p1, q**k)


def test_lift_at_discriminant_prime():
    poly = ws.parse_poly("x^3-2")  # disc = -108 = -2^2 * 27
    for q, k in [(2, 3), (3, 3)]:
        assert ws.lift_roots(poly, q, k) == brute_force_roots(poly, q**k)


def test_table_examples(table_10k):
    assert table_10k.rho[1] == 1
    assert table_10k.rho[5] == 2
    assert table_10k.rho[65] == 4
    assert list(table_10k.roots(65)) == [8, 18, 47, 57]
    # rho vanishes when a prime = 3 mod 4 divides n to an odd power
    for n in (3, 7, 21, 3 * 25, 7 * 13):
        assert table_10k.rho[n] == 0


def test_table_against_brute_force_double_loop(x2p1, sieve_10k):
    table = ws.build_root_table(x2p1, sieve_10k, 2000)
    brute = sum(
        1 for n in range(1, 2001) for v in range(n) if (v * v + 1) % n == 0
    )
    assert table.sum_rho() == brute == 956


def test_crt_roots_match_brute_scan(table_10k):
    rng = random.Random(17)
    for _ in range(500):
        n = rng.randint(1, 10**4)
        assert list(table_10k.roots(n)) == brute_force_roots(table_10k.poly, n)


def test_other_polynomial_tables(sieve_10k):
    for expr in ("x^3-2", "x^2-x-1"):
        poly = ws.parse_poly(expr)
        table = ws.build_root_table(poly, sieve_10k, 300)
        for n in range(1, 301):
            assert list(table.roots(n)) == brute_force_roots(poly, n), (expr, n)


def test_content_prime_handling(sieve_10k):
    # 2x^2 + 2 = 2(x^2+1): rho(2) = 2, and powers of 2 follow the factor 2
    poly = ws.IntPoly.from_coeffs([2, 0, 2])
    table = ws.build_root_table(poly, sieve_10k, 64, allow_asserted=True)
    for n in (2, 4, 8, 16, 3, 5, 25, 64):
        assert list(table.roots(n)) == brute_force_roots(poly, n), n


def test_rho_multiplicativity_sampled(table_10k):
    rng = random.Random(23)
    rho = table_10k.rho
    checked = 0
    while checked < 500:
        m = rng.randint(2, 99)
        n = rng.randint(2, 100)
        if math.gcd(m, n) != 1:
            continue
        assert rho[m * n] == rho[m] * rho[n]
        checked += 1


def test_rho_stats(table_10k):
    stats = ws.rho_stats(table_10k, A=0.0, D=2.0, samples=500, seed=0)
    assert stats.submult_violations == 0
    assert 0.0 < stats.mean_ratio_full < 1.0
    assert stats.second_moment_ratio > 0
    # growth exponent shrinks with range
    g3 = max_growth_exponent(table_10k, 10**3)
    g4 = max_growth_exponent(table_10k, 10**4)
    assert g4 <= g3


def test_ratio_sequence_ordering(x2p1, sieve_10k):
    table = ws.build_root_table(x2p1, sieve_10k, 100)
    seq = table.ratio_sequence()
    keys = [(n, v) for v, n, _ in seq.entries]
    assert keys == sorted(keys)
    for v, n, g in seq.entries:
        assert abs(g.as_fraction() - Fraction(v, n)) < Fraction(1, 2**127)


def test_twisted_rho_mean_principal_reduces_to_mean(table_10k):
    chi1 = ws.principal_character(1)
    got = ws.twisted_rho_mean(table_10k, chi1, 1, 10**4)
    assert got == pytest.approx(table_10k.sum_rho() / 10**4)


def test_twisted_rho_mean_conductor_split(table_10k):
    # conductor 4 divides disc(-4): nonzero limit
    chi4 = ws.enumerate_characters(4)[1]
    v4 = ws.twisted_rho_mean(table_10k, chi4, 1, 10**4)
    assert abs(v4) > 0.25
    # conductor 7 does not divide disc: mean dies
    chi7 = ws.enumerate_characters(7)[1]
    v7 = ws.twisted_rho_mean(table_10k, chi7, 1, 10**4)
    assert abs(v7) < 0.1 * (table_10k.sum_rho() / 10**4)
    # 0 <= |delta estimate| <= lambda * r sanity
    lam = table_10k.sum_rho() / 10**4
    for r in (1, 2, 5):
        val = ws.twisted_rho_mean(table_10k, chi4, r, 10**4)
        assert abs(val) <= lam * r + 0.1


def test_build_guards(x2p1, sieve_10k):
    with pytest.raises(ws.ParameterError):
        ws.build_root_table(x2p1, sieve_10k, 10**4 + 1)
    with pytest.raises(ws.ParameterError):
        ws.parse_poly("x+1")  # degree < 2
    with pytest.raises(ws.ParameterError):
        ws.IntPoly.from_coeffs([1, 2, 1])  # (x+1)^2, disc = 0
