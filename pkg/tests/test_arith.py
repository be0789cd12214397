import math

import numpy as np
import pytest

import weylsum as ws
from weylsum import _kernels_numba, _kernels_numpy
from weylsum.arith import divisors


def test_small_sieve_primes():
    sv = ws.build_sieve(10)
    assert list(sv.primes) == [2, 3, 5, 7]
    assert sv.pi(10) == 4


def test_prime_counts():
    assert ws.build_sieve(100).pi(100) == 25
    sv = ws.build_sieve(1000)
    assert sv.pi(1000) == 168
    assert sv.pi(1000) - sv.pi(500) == 73


def test_sieve_matches_trial_division():
    limit = 20000
    sv = ws.build_sieve(limit)

    def is_prime(n):
        if n < 2:
            return False
        for k in range(2, int(n**0.5) + 1):
            if n % k == 0:
                return False
        return True

    td = [n for n in range(2, limit + 1) if is_prime(n)]
    assert list(sv.primes) == td


def test_spf_structure(sieve_100k):
    sv = sieve_100k
    n = np.arange(2, sv.limit + 1)
    spf = sv.spf[2:]
    assert np.all(n % spf == 0)
    assert np.all(sv.is_prime[spf])
    # minimality: no prime q < spf[n] divides n
    for q in sv.primes[sv.primes <= 300]:
        mult = np.arange(2 * q, sv.limit + 1, q)
        assert np.all(sv.spf[mult] <= q)
    # is_prime[n] iff spf[n] == n
    assert np.array_equal(sv.is_prime[2:], spf == n)


def test_kernel_backends_agree():
    limit = 5000
    spf_a, primes_a = _kernels_numba.linear_sieve(limit)
    spf_b, primes_b = _kernels_numpy.linear_sieve(limit)
    assert np.array_equal(spf_a, spf_b)
    assert np.array_equal(primes_a, primes_b)

    ppval = np.zeros(limit + 1, np.complex128)
    for p in primes_a:
        p, q, v = int(p), int(p), -1.0
        while q <= limit:
            ppval[q] = v
            q *= p
            v = -v
    va = _kernels_numba.multiplicative_values(spf_a, ppval, limit)
    vb = _kernels_numpy.multiplicative_values(spf_b, ppval, limit)
    assert np.array_equal(va, vb)

    assert np.array_equal(
        _kernels_numba.omega_values(spf_a, limit),
        _kernels_numpy.omega_values(spf_b, limit),
    )

    coeffs = np.array([1, 0, 1], np.int64)  # x^2 + 1
    scan = primes_a[primes_a > 4]
    ca, fa = _kernels_numba.roots_mod_primes(scan, coeffs)
    cb, fb = _kernels_numpy.roots_mod_primes(scan, [1, 0, 1])
    assert np.array_equal(ca, cb) and np.array_equal(fa, fb)


def test_factorize_examples(sieve_10k):
    assert ws.factorize(sieve_10k, 1).factors == ()
    assert ws.factorize(sieve_10k, 360).factors == ((2, 3), (3, 2), (5, 1))
    assert ws.factorize(sieve_10k, 97).factors == ((97, 1),)


def test_factorize_range_errors(sieve_10k):
    with pytest.raises(ws.ParameterError):
        ws.factorize(sieve_10k, 0)
    with pytest.raises(ws.ParameterError):
        ws.factorize(sieve_10k, sieve_10k.limit + 1)
    with pytest.raises(ws.ParameterError):
        ws.build_sieve(1)


def test_von_mangoldt_examples(sieve_10k):
    assert ws.von_mangoldt(ws.factorize(sieve_10k, 8)) == pytest.approx(math.log(2))
    assert ws.von_mangoldt(ws.factorize(sieve_10k, 6)) == 0.0
    assert ws.von_mangoldt(ws.factorize(sieve_10k, 1)) == 0.0


def test_von_mangoldt_divisor_identity(sieve_10k):
    # sum over d | n of Lambda(d) = log n
    for n in range(1, 10**4 + 1):
        fac = ws.factorize(sieve_10k, n)
        total = sum(ws.von_mangoldt(ws.factorize(sieve_10k, d)) for d in divisors(fac))
        assert abs(total - math.log(n)) < 1e-12


def test_big_omega(sieve_10k):
    assert ws.big_omega(ws.factorize(sieve_10k, 12)) == 3
    assert ws.big_omega(ws.factorize(sieve_10k, 1)) == 0
    assert ws.big_omega(ws.factorize(sieve_10k, 3**7)) == 7


def test_big_omega_completely_additive(sieve_10k):
    import random

    rng = random.Random(7)
    for _ in range(200):
        m = rng.randint(2, 90)
        n = rng.randint(2, 110)
        fm = ws.factorize(sieve_10k, m)
        fn = ws.factorize(sieve_10k, n)
        fmn = ws.factorize(sieve_10k, m * n)
        assert ws.big_omega(fmn) == ws.big_omega(fm) + ws.big_omega(fn)
