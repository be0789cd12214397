"""numba-compiled hot kernels.

Same surface as `_kernels_numpy`; `weylsum.backend` picks one at import
time.  Everything here is plain int64/complex128 array work so the two
backends are interchangeable and bit-identical.
"""

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def linear_sieve(limit):
    """O(limit) linear sieve: smallest-prime-factor array and prime list.

    Each composite is struck exactly once by its smallest prime factor.
    """
    spf = np.zeros(limit + 1, np.int64)
    primes = np.empty(limit // 2 + 2, np.int64)
    count = 0
    for n in range(2, limit + 1):
        if spf[n] == 0:
            spf[n] = n
            primes[count] = n
            count += 1
        for i in range(count):
            p = primes[i]
            if p > spf[n] or n * p > limit:
                break
            spf[n * p] = p
    return spf, primes[:count].copy()


@njit(cache=True)
def multiplicative_values(spf, ppval, limit):
    """values[n] = prod of ppval[p^k] over the prime powers p^k || n.

    ppval[q] must hold f(q) for every prime power q <= limit; values[1] = 1.
    """
    values = np.zeros(limit + 1, np.complex128)
    ppart = np.zeros(limit + 1, np.int64)
    if limit >= 1:
        values[1] = 1.0 + 0.0j
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        if spf[m] == p:
            q = ppart[m] * p
        else:
            q = p
        ppart[n] = q
        values[n] = values[n // q] * ppval[q]
    return values


@njit(cache=True)
def omega_values(spf, limit):
    """Number of prime factors with multiplicity, for every n <= limit."""
    om = np.zeros(limit + 1, np.int64)
    for n in range(2, limit + 1):
        om[n] = om[n // spf[n]] + 1
    return om


@njit(cache=True)
def prime_power_parts(spf, limit):
    """ppart[n] = largest power of spf(n) dividing n (ppart[1] = 1)."""
    ppart = np.zeros(limit + 1, np.int64)
    if limit >= 1:
        ppart[1] = 1
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        if spf[m] == p:
            ppart[n] = ppart[m] * p
        else:
            ppart[n] = p
    return ppart


@njit(cache=True)
def roots_mod_primes(primes, coeffs):
    """Roots of an integer polynomial modulo each listed prime.

    Scans residues with a forward-difference table: after setup each step
    costs deg additions plus conditional subtractions, no multiplies.
    Requires every prime > deg + 2 (the wrapper brute-forces tiny primes)
    and |coeffs[i]| < 2**62.  Returns (counts, flat) with flat holding the
    roots prime by prime in ascending order.
    """
    e = len(coeffs) - 1
    nprimes = len(primes)
    counts = np.zeros(nprimes, np.int64)
    flat = np.empty(nprimes * e, np.int64)
    pos = 0
    d = np.empty(e + 1, np.int64)
    for ip in range(nprimes):
        q = primes[ip]
        # initial values f(0..e) mod q by Horner
        for v in range(e + 1):
            acc = coeffs[e] % q
            for t in range(e - 1, -1, -1):
                acc = (acc * v + coeffs[t]) % q
            d[v] = acc
        # in-place backward differencing: d[k] becomes Delta^k f(0)
        for level in range(1, e + 1):
            for t in range(e, level - 1, -1):
                d[t] = (d[t] - d[t - 1]) % q
        cnt = 0
        for v in range(q):
            if d[0] == 0:
                flat[pos + cnt] = v
                cnt += 1
            for t in range(e):
                s = d[t] + d[t + 1]
                if s >= q:
                    s -= q
                d[t] = s
        counts[ip] = cnt
        pos += cnt
    return counts, flat[:pos].copy()


@njit(cache=True)
def _modinv(a, m):
    t0, t1 = np.int64(0), np.int64(1)
    r0, r1 = m, a % m
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    return t0 % m


@njit(cache=True)
def crt_combine(spf, ppart, pp_count, pp_off, pp_flat, limit):
    """Roots mod n for every n <= limit, combined via CRT from prime powers.

    pp_count/pp_off/pp_flat index roots of prime powers q directly by q.
    Returns (rho, off, flat): CSR table, roots sorted within each n.
    """
    rho = np.zeros(limit + 1, np.int64)
    rho[1] = 1
    for n in range(2, limit + 1):
        q = ppart[n]
        rho[n] = pp_count[q] * rho[n // q]
    off = np.zeros(limit + 2, np.int64)
    for n in range(1, limit + 1):
        off[n + 1] = off[n] + rho[n]
    flat = np.empty(off[limit + 1], np.int64)
    flat[off[1]] = 0  # n = 1: the zero residue
    for n in range(2, limit + 1):
        if rho[n] == 0:
            continue
        q = ppart[n]
        m = n // q
        w = off[n]
        if m == 1:
            for t in range(pp_count[q]):
                flat[w + t] = pp_flat[pp_off[q] + t]
        else:
            inv = _modinv(q % m, m)
            for ta in range(pp_count[q]):
                a = pp_flat[pp_off[q] + ta]
                for tb in range(rho[m]):
                    b = flat[off[m] + tb]
                    x = a + q * (((b - a) * inv) % m)
                    flat[w] = x
                    w += 1
            flat[off[n]:off[n + 1]].sort()
    return rho, off, flat
