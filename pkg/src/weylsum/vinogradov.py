"""Exact counting of Vinogradov systems.

J counts solutions of sum v_i^j = sum w_i^j (j = 1..d) with r variables a
side.  The counter is meet-in-the-middle: build the distribution N_r of
power-sum vectors of r-tuples by r-fold convolution over the lattice of
power sums, then J = sum N_r(lambda)^2.  Domains are centered at their
minimum first (the system is translation invariant; tests verify that
against an uncentered brute-force oracle), which keeps the lattice small
for translated intervals.

Counts are exact: int64 arrays when the conservative bound |domain|^r
fits, Python-integer (object) arrays otherwise, with the final square
sum always accumulated in Python integers.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .arith import PrimeSieve
from .errors import ParameterError, ResourceError

STATE_BUDGET = 10**8
BRUTE_BUDGET = 2 * 10**7


def _domain_values(domain) -> list[int]:
    if isinstance(domain, range):
        values = list(domain)
    else:
        values = sorted(set(int(v) for v in domain))
    if not values:
        raise ParameterError("empty domain")
    return values


@dataclass(frozen=True)
class TupleCountTable:
    """Distribution of power-sum vectors over r-tuples from a domain.

    `counts` is the dense lattice over centered power sums (values shifted
    by -offset); `as_dict` exposes the counts keyed by the original,
    uncentered power-sum vectors.
    """

    r: int
    d: int
    offset: int
    values: tuple[int, ...]
    counts: np.ndarray

    def total(self) -> int:
        return int(sum(int(c) for c in self.counts.ravel() if c))

    def sum_of_squares(self) -> int:
        flat = self.counts.ravel()
        nz = flat[flat != 0] if flat.dtype != object else [c for c in flat if c]
        return int(sum(int(c) * int(c) for c in nz))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        """Counts keyed by uncentered power sums; small tables only."""
        if self.counts.size > 2 * 10**6:
            raise ResourceError(
                f"as_dict on {self.counts.size} lattice states; use the array"
            )
        out = {}
        lo = self.offset
        it = np.ndindex(self.counts.shape)
        for idx in it:
            c = self.counts[idx]
            if not c:
                continue
            lam = tuple(
                sum(
                    math.comb(j, m) * lo ** (j - m) * (self.r if m == 0 else idx[m - 1])
                    for m in range(j + 1)
                )
                for j in range(1, self.d + 1)
            )
            out[lam] = int(c)
        return out


def count_tuples(domain, r: int, d: int) -> TupleCountTable:
    """N_r over the power-sum lattice by r-fold convolution, exact."""
    if r < 1 or d < 1:
        raise ParameterError("count_tuples needs r >= 1 and d >= 1")
    values = _domain_values(domain)
    lo = values[0]
    w = [v - lo for v in values]
    W = w[-1]
    dims = tuple(r * W**j + 1 for j in range(1, d + 1))
    states = math.prod(dims)
    if states > STATE_BUDGET:
        raise ResourceError(
            f"lattice needs {states} states (> {STATE_BUDGET}); "
            f"shrink r, d, or the domain width {W}"
        )
    dtype = np.int64 if len(values) ** r < 2**62 else object
    cur = np.zeros(dims, dtype=dtype)
    cur[(0,) * d] = 1
    for _ in range(r):
        nxt = np.zeros(dims, dtype=dtype)
        for wv in w:
            offs = tuple(wv**j for j in range(1, d + 1))
            src = cur[tuple(slice(0, dims[a] - offs[a]) for a in range(d))]
            dst = nxt[tuple(slice(offs[a], dims[a]) for a in range(d))]
            dst += src
        cur = nxt
    return TupleCountTable(r=r, d=d, offset=lo, values=tuple(values), counts=cur)


def jrd(V: int, r: int, d: int) -> int:
    """J_{r,d}(V): solutions of the 2r-variable system over [1, V]."""
    if V < 1:
        raise ParameterError("jrd needs V >= 1")
    return count_tuples(range(1, V + 1), r, d).sum_of_squares()


def jrd_intervals(intervals, r: int, d: int) -> int:
    """Solutions with all 2r variables in one common interval, summed over k.

    Intervals are half-open (lo, hi] and must be pairwise disjoint.
    """
    ivs = sorted((int(lo), int(hi)) for lo, hi in intervals)
    for (a_lo, a_hi), (b_lo, b_hi) in zip(ivs, ivs[1:]):
        if b_lo < a_hi:
            raise ParameterError(f"intervals overlap: {(a_lo, a_hi)}, {(b_lo, b_hi)}")
    total = 0
    for lo, hi in ivs:
        if hi <= lo:
            raise ParameterError(f"empty interval ({lo}, {hi}]")
        total += count_tuples(range(lo + 1, hi + 1), r, d).sum_of_squares()
    return total


def jrd_primes(Y: int, X: int, r: int, d: int, sieve: PrimeSieve) -> int:
    """Solutions with all variables prime in the closed interval [Y, Y+X]."""
    if Y + X > sieve.limit:
        raise ParameterError(f"Y + X = {Y + X} exceeds sieve limit {sieve.limit}")
    ps = sieve.primes_in(Y - 1, Y + X)
    if len(ps) == 0:
        return 0
    return count_tuples([int(p) for p in ps], r, d).sum_of_squares()


def slope_estimate(r: int, d: int, V_small: int, V_large: int) -> float:
    """log(J(V_large)/J(V_small)) / log(V_large/V_small)."""
    if not V_small < V_large:
        raise ParameterError("need V_small < V_large")
    j_small, j_large = jrd(V_small, r, d), jrd(V_large, r, d)
    return math.log(j_large / j_small) / math.log(V_large / V_small)


def brute_force_jrd(domain, r: int, d: int, budget: int = BRUTE_BUDGET) -> int:
    """Oracle: exhaustive enumeration of r-tuples, no convolution.

    Power-sum vectors are tallied over the raw (uncentered) values with a
    Counter, so this is independent of the lattice path it checks.
    """
    values = _domain_values(domain)
    m = len(values)
    if m ** (2 * r) > budget:
        raise ResourceError(
            f"brute force needs |domain|^2r = {m ** (2 * r)} > {budget} tuples"
        )
    tally: Counter = Counter()
    for t in itertools.product(values, repeat=r):
        tally[tuple(sum(v**j for v in t) for j in range(1, d + 1))] += 1
    return sum(c * c for c in tally.values())


def brute_force_jrd_full(domain, r: int, d: int, budget: int = 10**6) -> int:
    """Literal 2r-tuple enumeration for tiny cases; the slowest oracle."""
    values = _domain_values(domain)
    if len(values) ** (2 * r) > budget:
        raise ResourceError("full enumeration over budget")
    count = 0
    for t in itertools.product(values, repeat=2 * r):
        if all(
            sum(v**j for v in t[:r]) == sum(v**j for v in t[r:])
            for j in range(1, d + 1)
        ):
            count += 1
    return count
