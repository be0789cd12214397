"""Joint equidistribution statistics for root ratios paired with
polynomial values: the two-dimensional sequence (v/n, {F(n)}), its Weyl
sums, Hooley's averaged inner sum, and a corner-grid star discrepancy.

Inner phases h*v/n are exact rationals (reduced mod n before the single
float conversion); outer phases run through the fixed-point machinery, so
the sums inherit the package-wide determinism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fractions import Fraction

from .congruence import RootTable
from .errors import ParameterError
from .phase import SCALE, FracFixed, PolyPhase, frac_raw_values, phase_values
from .util import pairwise_sum


@dataclass(frozen=True)
class JointSequence:
    """Pairs (v/n, {F(n)}) ordered by denominator n, then numerator v.

    Coordinates are kept exact (integer pair for v/n, fixed-point raw for
    {F(n)}); g and h are the float views used for counting.
    """

    numerators: np.ndarray  # v per entry
    denominators: np.ndarray  # n per entry
    h_raws: tuple  # fixed-point raw of {F(n)} per entry
    g: np.ndarray  # v/n as float64
    h: np.ndarray  # {F(n)} as float64

    def __len__(self) -> int:
        return len(self.numerators)

    def entry(self, i: int) -> tuple[FracFixed, FracFixed]:
        v, n = int(self.numerators[i]), int(self.denominators[i])
        return (
            FracFixed.from_fraction(Fraction(v, n)),
            FracFixed(self.h_raws[i]),
        )


def joint_sequence(table: RootTable, F: PolyPhase, N: int) -> JointSequence:
    """The sequence up to denominator N (n ascending, v ascending within n)."""
    if N > table.N:
        raise ParameterError(f"N = {N} exceeds table range {table.N}")
    hi = int(table.offsets[N + 1])
    v = table.flat[:hi].astype(np.int64)
    n = table.n_index()[:hi]
    raws = frac_raw_values(F, N)
    h_raws = tuple(raws[int(nn)] for nn in n)
    h = np.asarray([r / SCALE for r in h_raws], dtype=np.float64)
    return JointSequence(
        numerators=v,
        denominators=n,
        h_raws=h_raws,
        g=v / n,
        h=h,
    )


def _inner_segment_sums(table: RootTable, h: int, N: int) -> np.ndarray:
    """seg[n] = sum over roots v mod n of e(h v / n), n = 0..N."""
    hi = int(table.offsets[N + 1])
    v = table.flat[:hi]
    n = table.n_index()[:hi]
    angles = ((h * v) % n) / n
    seg = np.zeros(N + 1, dtype=np.complex128)
    np.add.at(seg, n, np.exp(2j * np.pi * angles))
    return seg


def joint_weyl_sum(table: RootTable, F: PolyPhase, N: int,
                   h1: int, h2: int) -> complex:
    """sum_{n<=N} e(h1 F(n)) sum_{p(v)=0 mod n} e(h2 v / n).

    h1 scales the phase coefficients exactly in fixed point; h2 twists
    the exact rational inner phases.
    """
    if N > table.N:
        raise ParameterError(f"N = {N} exceeds table range {table.N}")
    seg = _inner_segment_sums(table, h2, N)
    if h1 == 0:
        outer = np.ones(N + 1, dtype=np.complex128)
    else:
        Fh = PolyPhase(tuple(c.mul_int(h1) for c in F.coeffs))
        outer = phase_values(Fh, N)
    return complex(pairwise_sum(outer[1 : N + 1] * seg[1 : N + 1]))


def hooley_average(table: RootTable, h: int, x: int) -> float:
    """(1/x) sum_{n<=x} |sum_v e(h v / n)|; the average tending to zero."""
    if h == 0:
        raise ParameterError("hooley_average needs h != 0 (h = 0 is the rho mean)")
    if x > table.N or x < 1:
        raise ParameterError(f"need 1 <= x <= {table.N}")
    seg = _inner_segment_sums(table, h, x)
    return float(pairwise_sum(np.abs(seg[1 : x + 1])) / x)


@dataclass(frozen=True)
class DiscrepancyReport:
    """Corner-grid approximation of the 2-D star discrepancy.

    grid_value is exact on the m x m corner lattice; the true star
    discrepancy lies within grid_value + slack, slack = 2/m.
    """

    grid_value: float
    slack: float
    grid_m: int
    count: int


def star_discrepancy_2d(seq: JointSequence, grid_m: int = 64) -> DiscrepancyReport:
    """max over corners (i/m, j/m) of |#points in box / total - (i/m)(j/m)|."""
    if grid_m < 2:
        raise ParameterError("grid_m must be >= 2")
    total = len(seq)
    if total < 1:
        raise ParameterError("empty sequence")
    hist, _, _ = np.histogram2d(
        seq.g, seq.h, bins=grid_m, range=[[0.0, 1.0], [0.0, 1.0]]
    )
    cum = hist.cumsum(axis=0).cumsum(axis=1) / total
    i = np.arange(1, grid_m + 1) / grid_m
    target = i[:, None] * i[None, :]
    value = float(np.max(np.abs(cum - target)))
    return DiscrepancyReport(
        grid_value=value, slack=2.0 / grid_m, grid_m=grid_m, count=total
    )
