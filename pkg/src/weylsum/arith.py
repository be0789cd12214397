"""Prime sieves, factorization, and classical arithmetic functions.

Everything downstream (multiplicative-function sieving, hyperbola sums,
root tables) reads from a single `PrimeSieve`.  The sieve is built once,
is immutable afterwards, and may be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import ParameterError

MAX_SIEVE_LIMIT = 2**31


@dataclass(frozen=True)
class PrimeSieve:
    """Primality bitset and smallest-prime-factor table over [2, limit].

    Invariants: is_prime[n] iff n is prime iff spf[n] == n; spf[n] is the
    smallest prime dividing n for every 2 <= n <= limit.
    """

    limit: int
    is_prime: np.ndarray
    spf: np.ndarray
    primes: np.ndarray

    def pi(self, x) -> int:
        """Number of primes <= x."""
        return int(np.searchsorted(self.primes, x, side="right"))

    def primes_in(self, lo, hi) -> np.ndarray:
        """Primes p with lo < p <= hi."""
        a = np.searchsorted(self.primes, lo, side="right")
        b = np.searchsorted(self.primes, hi, side="right")
        return self.primes[a:b]


@dataclass(frozen=True)
class FactoredInteger:
    """n with its canonical factorization, primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]


def build_sieve(limit: int) -> PrimeSieve:
    """Build the sieve; result is identical to a direct sieve up to limit."""
    if not (2 <= limit <= MAX_SIEVE_LIMIT):
        raise ParameterError(f"sieve limit must be in [2, 2^31], got {limit}")
    spf, primes = kernels.linear_sieve(int(limit))
    is_prime = np.zeros(limit + 1, dtype=bool)
    is_prime[primes] = True
    return PrimeSieve(limit=int(limit), is_prime=is_prime, spf=spf, primes=primes)


def factorize(sieve: PrimeSieve, n: int) -> FactoredInteger:
    """Canonical sorted factorization of n via the spf table; 1 -> []."""
    if not (1 <= n <= sieve.limit):
        raise ParameterError(f"factorize needs 1 <= n <= {sieve.limit}, got {n}")
    n = int(n)
    out = []
    m = n
    spf = sieve.spf
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return FactoredInteger(n=n, factors=tuple(out))


def von_mangoldt(fac: FactoredInteger) -> float:
    """log p when n = p^k, else 0."""
    if len(fac.factors) == 1:
        return math.log(fac.factors[0][0])
    return 0.0


def big_omega(fac: FactoredInteger) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(e for _, e in fac.factors)


def divisors(fac: FactoredInteger) -> list[int]:
    """All divisors of n, ascending."""
    ds = [1]
    for p, e in fac.factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)
