import math
import random

import numpy as np
import pytest

import weylsum as ws


def test_builtin_value_arrays(sieve_10k):
    li = ws.sieve_values(ws.liouville(), sieve_10k, 6)
    assert np.array_equal(li[1:7].real, [1, -1, -1, 1, -1, 1])
    mo = ws.sieve_values(ws.mobius(), sieve_10k, 4)
    assert np.array_equal(mo[1:5].real, [1, -1, -1, 0])
    ones = ws.sieve_values(ws.unit(), sieve_10k, 50)
    assert np.all(ones[1:] == 1)


def test_sieve_values_against_direct_factorization(sieve_10k):
    mo = ws.sieve_values(ws.mobius(), sieve_10k, 3000)
    li = ws.sieve_values(ws.liouville(), sieve_10k, 3000)
    for n in range(1, 3001):
        fac = ws.factorize(sieve_10k, n)
        assert mo[n] == ws.mobius().value_at(fac)
        assert li[n] == (-1) ** ws.big_omega(fac)


def test_multiplicativity_sampled(sieve_10k):
    rng = random.Random(5)
    mo = ws.sieve_values(ws.mobius(), sieve_10k, 10**4)
    for _ in range(200):
        m = rng.randint(2, 99)
        n = rng.randint(2, 100)
        if math.gcd(m, n) != 1:
            continue
        assert abs(mo[m * n] - mo[m] * mo[n]) < 1e-12


def test_table_kind_missing_entry_error(sieve_10k):
    f = ws.MultiplicativeFunction.from_prime_powers("partial", {(2, 1): 1.0})
    with pytest.raises(ws.EvaluationError, match=r"\(2, 2\)"):
        ws.sieve_values(f, sieve_10k, 10)
    f3 = ws.MultiplicativeFunction.from_prime_powers("partial3", {(2, 1): 1.0, (2, 2): 0.0, (2, 3): 0.0})
    with pytest.raises(ws.EvaluationError, match=r"\(3, 1\)"):
        ws.sieve_values(f3, sieve_10k, 10)


def test_norm_stats(sieve_10k):
    ones = ws.sieve_values(ws.unit(), sieve_10k, 100)
    prof = ws.norm_stats(ones, 0.0, sieve_10k)
    assert prof.ell1_ratio == 1.0
    assert prof.C == 1.0

    mo = ws.sieve_values(ws.mobius(), sieve_10k, 10**4)
    prof = ws.norm_stats(mo, 0.0, sieve_10k)
    assert abs(prof.ell1_ratio - 6 / math.pi**2) <= 0.02

    li = ws.sieve_values(ws.liouville(), sieve_10k, 500)
    assert ws.norm_stats(li, 0.0, sieve_10k).C == 1.0


def test_extremal_zero_phase(sieve_10k):
    F = ws.parse_phase("0*x")
    res = ws.extremal_construct(F, sieve_10k, 1000)
    assert res.z0 == pytest.approx(1.0, abs=1e-9)
    assert res.sum_value == pytest.approx(1000.0, abs=1e-6)
    vals = ws.sieve_values(res.f, sieve_10k, 20)
    assert np.allclose(vals[1:], 1.0)


def test_extremal_sqrt2_meets_prime_count(sieve_10k):
    res = ws.extremal_construct(ws.parse_phase("sqrt:2*x"), sieve_10k, 1000)
    assert res.lower_bound == 73  # pi(1000) - pi(500)
    assert abs(res.sum_value) >= 73
    assert abs(abs(res.z0) - 1) < 1e-12


def test_extremal_identity_and_grid_invariants(sieve_10k):
    F = ws.parse_phase("sqrt:2*x^2+golden*x")
    res = ws.extremal_construct(F, sieve_10k, 500, grid_size=4096)
    recon = ws.reconstruct_extremal_sum(F, sieve_10k, 500, res.z0)
    assert abs(res.sum_value - recon) <= 1e-9 * abs(res.sum_value)
    assert res.refined_max >= res.grid_max
    assert res.grid_certified  # 4096 >= 8 * 500


def test_extremal_grid_warning_flag(sieve_10k):
    res = ws.extremal_construct(ws.parse_phase("sqrt:2*x"), sieve_10k, 1000,
                                grid_size=512)
    assert not res.grid_certified


def test_extremal_preconditions(sieve_10k):
    F = ws.parse_phase("sqrt:2*x")
    with pytest.raises(ws.ParameterError):
        ws.extremal_construct(F, sieve_10k, 99)
    with pytest.raises(ws.ParameterError):
        ws.extremal_construct(F, sieve_10k, 1000, grid_size=128)
