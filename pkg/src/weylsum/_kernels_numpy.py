"""Pure numpy/Python fallback kernels (no numba required).

Selected with WEYLSUM_BACKEND=numpy; see `weylsum.backend`.  Results are
bit-identical to the numba backend, only slower on the per-element loops.
"""

import numpy as np

BACKEND_NAME = "numpy"


def linear_sieve(limit):
    """Smallest-prime-factor array and prime list (vectorized Eratosthenes)."""
    spf = np.zeros(limit + 1, np.int64)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    idx = np.arange(limit + 1, dtype=np.int64)
    unset = spf[2:] == 0
    spf[2:][unset] = idx[2:][unset]
    primes = idx[2:][spf[2:] == idx[2:]].copy()
    return spf, primes


def multiplicative_values(spf, ppval, limit):
    values = np.zeros(limit + 1, np.complex128)
    ppart = np.zeros(limit + 1, np.int64)
    if limit >= 1:
        values[1] = 1.0
    sp = spf.tolist()
    pv = ppval.tolist()
    pp = ppart.tolist()
    out = values.tolist()
    for n in range(2, limit + 1):
        p = sp[n]
        m = n // p
        q = pp[m] * p if sp[m] == p else p
        pp[n] = q
        out[n] = out[n // q] * pv[q]
    return np.asarray(out, np.complex128)


def omega_values(spf, limit):
    om = np.zeros(limit + 1, np.int64)
    sp = spf.tolist()
    o = om.tolist()
    for n in range(2, limit + 1):
        o[n] = o[n // sp[n]] + 1
    return np.asarray(o, np.int64)


def prime_power_parts(spf, limit):
    ppart = np.zeros(limit + 1, np.int64)
    sp = spf.tolist()
    pp = ppart.tolist()
    if limit >= 1:
        pp[1] = 1
    for n in range(2, limit + 1):
        p = sp[n]
        m = n // p
        pp[n] = pp[m] * p if sp[m] == p else p
    return np.asarray(pp, np.int64)


def roots_mod_primes(primes, coeffs):
    """Roots of an integer polynomial mod each prime, vectorized Horner scan."""
    e = len(coeffs) - 1
    counts = np.zeros(len(primes), np.int64)
    chunks = []
    for ip, q in enumerate(primes):
        q = int(q)
        v = np.arange(q, dtype=np.int64)
        acc = np.full(q, int(coeffs[e]) % q, np.int64)
        for t in range(e - 1, -1, -1):
            acc = (acc * v + int(coeffs[t]) % q) % q
        r = v[acc == 0]
        counts[ip] = len(r)
        if len(r):
            chunks.append(r)
    flat = np.concatenate(chunks) if chunks else np.empty(0, np.int64)
    return counts, flat


def crt_combine(spf, ppart, pp_count, pp_off, pp_flat, limit):
    rho = np.zeros(limit + 1, np.int64)
    rho[1] = 1
    pc = pp_count.tolist()
    pa = ppart.tolist()
    r = rho.tolist()
    for n in range(2, limit + 1):
        q = pa[n]
        r[n] = pc[q] * r[n // q]
    rho = np.asarray(r, np.int64)
    off = np.zeros(limit + 2, np.int64)
    off[2:] = np.cumsum(rho[1:])
    flat = np.empty(int(off[limit + 1]), np.int64)
    fl = flat.tolist()
    po = pp_off.tolist()
    pf = pp_flat.tolist()
    of = off.tolist()
    fl[of[1]] = 0
    for n in range(2, limit + 1):
        if r[n] == 0:
            continue
        q = pa[n]
        m = n // q
        w = of[n]
        if m == 1:
            fl[w : w + pc[q]] = pf[po[q] : po[q] + pc[q]]
        else:
            inv = pow(q % m, -1, m)
            roots_m = fl[of[m] : of[m + 1]]
            vals = sorted(
                a + q * (((b - a) * inv) % m)
                for a in pf[po[q] : po[q] + pc[q]]
                for b in roots_m
            )
            fl[w : w + len(vals)] = vals
    return rho, off, np.asarray(fl, np.int64)
