"""Multiplicative functions, norm statistics, and the extremal construction.

A `MultiplicativeFunction` only knows its values on prime powers; dense
value arrays are materialized through the sieve's smallest-prime-factor
decomposition (one complex multiply per integer).  `extremal_construct`
builds the completely multiplicative function witnessing that the
N/log N term in the main sum bound cannot be improved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import sums
from .arith import PrimeSieve, FactoredInteger, build_sieve
from .backend import kernels
from .errors import EvaluationError, ParameterError
from .phase import PolyPhase, phase_values
from .util import pairwise_sum, thread_map

KIND_COMPLETE = "complete"
KIND_PRIME_POWER = "prime_power_table"


@dataclass(frozen=True)
class MultiplicativeFunction:
    """f with f(1) = 1 and f(mn) = f(m) f(n) for coprime m, n.

    kind "complete": a rule p -> f(p) and f(p^k) = f(p)^k.
    kind "prime_power_table": a map or rule (p, k) -> f(p^k).
    """

    kind: str
    label: str
    completely_multiplicative: bool
    _prime_rule: Callable[[int], complex] | None = None
    _pp_rule: Callable[[int, int], complex] | None = None
    _pp_table: dict | None = None

    @classmethod
    def from_prime_rule(cls, label: str, rule: Callable[[int], complex]):
        return cls(kind=KIND_COMPLETE, label=label,
                   completely_multiplicative=True, _prime_rule=rule)

    @classmethod
    def from_prime_powers(cls, label: str, table) -> "MultiplicativeFunction":
        if callable(table):
            return cls(kind=KIND_PRIME_POWER, label=label,
                       completely_multiplicative=False, _pp_rule=table)
        return cls(kind=KIND_PRIME_POWER, label=label,
                   completely_multiplicative=False, _pp_table=dict(table))

    def prime_power_value(self, p: int, k: int) -> complex:
        if self.kind == KIND_COMPLETE:
            return self._prime_rule(p) ** k
        if self._pp_rule is not None:
            return self._pp_rule(p, k)
        try:
            return self._pp_table[(p, k)]
        except KeyError:
            raise EvaluationError(
                f"{self.label}: no value for prime power ({p}, {k})"
            ) from None

    def value_at(self, fac: FactoredInteger) -> complex:
        out = 1.0 + 0.0j
        for p, e in fac.factors:
            out *= self.prime_power_value(p, e)
        return out


def mobius() -> MultiplicativeFunction:
    return MultiplicativeFunction.from_prime_powers(
        "mobius", lambda p, k: -1.0 if k == 1 else 0.0
    )


def liouville() -> MultiplicativeFunction:
    return MultiplicativeFunction.from_prime_rule("liouville", lambda p: -1.0)


def unit() -> MultiplicativeFunction:
    return MultiplicativeFunction.from_prime_rule("unit", lambda p: 1.0)


BUILTINS = {"mobius": mobius, "liouville": liouville, "unit": unit}


def sieve_values(f: MultiplicativeFunction, sieve: PrimeSieve, N: int) -> np.ndarray:
    """values[n] = f(n) for n = 1..N (index 0 unused), via spf decomposition."""
    if N > sieve.limit:
        raise ParameterError(f"N = {N} exceeds sieve limit {sieve.limit}")
    ppval = np.zeros(N + 1, dtype=np.complex128)
    for p in sieve.primes[sieve.primes <= N]:
        p = int(p)
        if f.kind == KIND_COMPLETE:
            v = complex(f._prime_rule(p))
            ppval[p] = v
            q = p * p
            while q <= N:
                ppval[q] = ppval[q // p] * v
                q *= p
        else:
            q, k = p, 1
            while q <= N:
                ppval[q] = complex(f.prime_power_value(p, k))
                q *= p
                k += 1
    return kernels.multiplicative_values(sieve.spf, ppval, int(N))


@dataclass(frozen=True)
class NormProfile:
    """Empirical size of f: prime bound C, l1 and l2 ratios at exponent A."""

    C: float
    ell1_ratio: float
    ell2_ratio: float
    A: float
    N: int


def norm_stats(values: np.ndarray, A: float,
               sieve: PrimeSieve | None = None) -> NormProfile:
    """max_p |f(p)|, sum |f(n)| / N, and sum |f(n)|^2 / (N (log N)^A)."""
    N = len(values) - 1
    if N < 1:
        raise ParameterError("norm_stats needs a nonempty value array")
    if sieve is None or sieve.limit < N:
        sieve = build_sieve(max(N, 2))
    absval = np.abs(values[1:])
    primes = sieve.primes[sieve.primes <= N]
    C = float(np.max(absval[primes - 1])) if len(primes) else 0.0
    ell1 = float(absval.sum() / N)
    logN = math.log(N)
    if logN == 0.0 and A != 0.0:
        raise ParameterError("ell2 ratio with A != 0 needs N >= 2")
    denom = N * (logN**A if A != 0.0 else 1.0)
    ell2 = float((absval**2).sum() / denom)
    return NormProfile(C=C, ell1_ratio=ell1, ell2_ratio=ell2, A=float(A), N=N)


@dataclass(frozen=True)
class ExtremalResult:
    """Output of the lower-bound construction.

    sum_value is sum f(n) e(F(n)) for the constructed f; lower_bound the
    prime count pi(N) - pi(N/2) it is measured against; grid_certified is
    False when the search grid was below the 8N certification density.
    """

    z0: complex
    f: MultiplicativeFunction
    sum_value: complex
    lower_bound: float
    grid_size: int
    grid_max: float
    refined_max: float
    g_at_zero: float
    grid_certified: bool


def _poly_on_circle(coeffs: np.ndarray, theta: np.ndarray) -> np.ndarray:
    z = np.exp(1j * theta)
    acc = np.full_like(z, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[k]
    return acc


def extremal_construct(F: PolyPhase, sieve: PrimeSieve, N: int,
                       grid_size: int | None = None,
                       threads: int = 1) -> ExtremalResult:
    """Maximize |G| on the unit circle and build the extremal f from z0.

    G(z) = sum_{n<=N} z^Omega(n) e(F(n)) + sum_{N/2<p<=N} (1 - z e(F(p)))
    is a polynomial in z of degree max Omega(n) <= log2 N, evaluated from
    its coefficients.  The best grid point is refined by golden-section
    search on the arc angle down to width 1e-10, and f is completely
    multiplicative with f(p) = z0 for p <= N/2, f(p) = e(-F(p)) above.
    """
    if N < 100:
        raise ParameterError(f"extremal_construct needs N >= 100, got {N}")
    if N > sieve.limit:
        raise ParameterError(f"N = {N} exceeds sieve limit {sieve.limit}")
    if grid_size is None:
        grid_size = max(4096, 8 * N)
    if grid_size < 256:
        raise ParameterError(f"grid_size must be >= 256, got {grid_size}")
    certified = grid_size >= 8 * N

    omega = kernels.omega_values(sieve.spf, int(N))
    ph = phase_values(F, N)
    deg = int(omega.max())
    coeffs = np.zeros(deg + 2, dtype=np.complex128)
    np.add.at(coeffs, omega[1:], ph[1:])
    half = N // 2
    high_primes = sieve.primes_in(half, N)
    P = len(high_primes)
    coeffs[0] += P
    coeffs[1] -= ph[high_primes].sum()

    thetas = 2.0 * np.pi * np.arange(grid_size) / grid_size
    chunk = 1 << 16
    blocks = [thetas[i : i + chunk] for i in range(0, grid_size, chunk)]
    mags = thread_map(lambda t: np.abs(_poly_on_circle(coeffs, t)), blocks, threads)
    best_idx, best_mag = 0, -1.0
    pos = 0
    for m in mags:
        j = int(np.argmax(m))
        if m[j] > best_mag:
            best_mag, best_idx = float(m[j]), pos + j
        pos += len(m)
    theta_star = thetas[best_idx]

    # golden-section refinement of |G(e^{i theta})| around the best grid point
    def mag_at(t: float) -> float:
        return float(np.abs(_poly_on_circle(coeffs, np.array([t]))[0]))

    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a = theta_star - 2.0 * np.pi / grid_size
    b = theta_star + 2.0 * np.pi / grid_size
    c1, c2 = b - gr * (b - a), a + gr * (b - a)
    f1, f2 = mag_at(c1), mag_at(c2)
    while b - a > 1e-10:
        if f1 > f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - gr * (b - a)
            f1 = mag_at(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + gr * (b - a)
            f2 = mag_at(c2)
    theta_ref = 0.5 * (a + b)
    ref_mag = mag_at(theta_ref)
    if ref_mag > best_mag:
        theta0, refined = theta_ref, ref_mag
    else:
        # tie or regression: keep the grid point (smallest angle wins)
        theta0, refined = theta_star, best_mag
    z0 = complex(np.exp(1j * theta0))

    ph_conj = np.conj(ph)

    def prime_rule(p: int) -> complex:
        return z0 if p <= half else complex(ph_conj[p])

    f = MultiplicativeFunction.from_prime_rule(f"extremal(N={N})", prime_rule)
    values = sieve_values(f, sieve, N)
    sum_value = sums.weyl_sum(values, F, N, phases=ph)
    return ExtremalResult(
        z0=z0,
        f=f,
        sum_value=complex(sum_value),
        lower_bound=float(P),
        grid_size=int(grid_size),
        grid_max=best_mag,
        refined_max=refined,
        g_at_zero=float(abs(coeffs[0])),
        grid_certified=certified,
    )


def reconstruct_extremal_sum(F: PolyPhase, sieve: PrimeSieve, N: int,
                             z0: complex) -> complex:
    """sum z0^Omega(n) e(F(n)) + sum_{N/2<p<=N} (1 - z0 e(F(p))).

    Independent reassembly of the identity behind extremal_construct; used
    to cross-check sum_value.
    """
    omega = kernels.omega_values(sieve.spf, int(N))
    ph = phase_values(F, N)
    first = pairwise_sum(np.power(z0, omega[1:]) * ph[1:])
    high = sieve.primes_in(N // 2, N)
    second = len(high) - z0 * pairwise_sum(ph[high])
    return complex(first + second)
