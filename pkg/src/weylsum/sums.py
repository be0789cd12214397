"""Sum evaluators over polynomial phases and the bound-report harness.

All reductions go through the deterministic blocked pairwise summation in
`util`, so results are bit-identical across runs and thread counts.  The
evaluators take dense value arrays (index 0 unused) produced by
`multfunc.sieve_values` or by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import PrimeSieve
from .errors import ParameterError
from .phase import ArcClassification, PolyPhase, RationalApprox, classify_arc, phase_values
from .util import pairwise_sum, thread_map

_TRIANGLE_SLACK = 1e-6


def _check_cover(f_values, N: int) -> None:
    if len(f_values) < N + 1:
        raise ParameterError(f"f_values must cover 1..{N}, got length {len(f_values)}")


def weyl_sum(f_values, F: PolyPhase, N: int, *, phases=None, threads: int = 1) -> complex:
    """sum_{n<=N} f(n) e(F(n)) with deterministic pairwise reduction."""
    _check_cover(f_values, N)
    if phases is None:
        phases = phase_values(F, N)
    terms = np.asarray(f_values[1 : N + 1]) * phases[1 : N + 1]
    if threads > 1:
        blocks = [terms[i : i + 65536] for i in range(0, len(terms), 65536)]
        partials = thread_map(pairwise_sum, blocks, threads)
        out = pairwise_sum(np.asarray(partials, dtype=np.complex128))
    else:
        out = pairwise_sum(terms)
    bound = float(np.abs(np.asarray(f_values[1 : N + 1])).sum())
    assert abs(out) <= bound * (1 + _TRIANGLE_SLACK) + _TRIANGLE_SLACK, (
        "triangle inequality violated; corrupted inputs?"
    )
    return complex(out)


def log_weighted_sum(f_values, F: PolyPhase, N: int, *, phases=None) -> complex:
    """sum_{n<=N} f(n) log(N/n) e(F(n))."""
    _check_cover(f_values, N)
    if phases is None:
        phases = phase_values(F, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    w = np.log(N / n)
    return complex(pairwise_sum(np.asarray(f_values[1 : N + 1]) * w * phases[1 : N + 1]))


def hyperbola_bilinear(f_values, sieve: PrimeSieve, F: PolyPhase, N: int, *,
                       phases=None, threads: int = 1) -> complex:
    """sum over p prime, n >= 1, np <= N of f(n) f(p) (log p) e(F(np)).

    Walks the hyperbola prime by prime; e(F(np)) for fixed p is the
    stride-p slice of the dense phase array.
    """
    _check_cover(f_values, N)
    if N > sieve.limit:
        raise ParameterError(f"N = {N} exceeds sieve limit {sieve.limit}")
    if N < 2:
        return 0.0 + 0.0j
    if phases is None:
        phases = phase_values(F, N)
    fv = np.asarray(f_values)
    primes = sieve.primes[sieve.primes <= N]

    def one_prime(p: int) -> complex:
        m = N // p
        inner = pairwise_sum(fv[1 : m + 1] * phases[p :: p][:m])
        return fv[p] * math.log(p) * inner

    contribs = thread_map(lambda p: one_prime(int(p)), primes, threads)
    return complex(pairwise_sum(np.asarray(contribs, dtype=np.complex128)))


@dataclass(frozen=True)
class RectFamily:
    """Disjoint rectangles (p-side) x (n-side) for the averaged bilinear form.

    Hypotheses checked on construction: p-sides within (0, Q] and pairwise
    disjoint, widths <= X; n-sides within (0, M], pairwise disjoint,
    widths <= Y and n_hi <= 2 n_lo; K <= M.
    """

    rects: tuple
    Q: Fraction
    X: Fraction
    M: Fraction
    Y: Fraction

    @classmethod
    def from_rectangles(cls, rects, strict: bool = True) -> "RectFamily":
        """strict=False skips the dyadic n_hi <= 2 n_lo check (disjointness
        and bounds are always enforced), for ad-hoc rectangle sums."""
        rects = tuple(rects)
        if not rects:
            return cls(rects=(), Q=Fraction(1), X=Fraction(0), M=Fraction(1), Y=Fraction(0))
        Q = max(r.p_hi for r in rects)
        X = max(r.p_hi - r.p_lo for r in rects)
        M = max(r.n_hi for r in rects)
        Y = max(r.n_hi - r.n_lo for r in rects)
        for r in rects:
            if r.p_lo < 0:
                raise ParameterError("rectangle p-side must lie in (0, Q]")
            if strict and r.n_lo <= 0:
                raise ParameterError("rectangle n-side must lie in (0, M]")
            if strict and r.n_hi > 2 * r.n_lo:
                raise ParameterError("rectangle violates n_hi <= 2 n_lo")
        psides = sorted((r.p_lo, r.p_hi) for r in rects)
        nsides = sorted((r.n_lo, r.n_hi) for r in rects)
        for (a_lo, a_hi), (b_lo, b_hi) in zip(psides, psides[1:]):
            if b_lo < a_hi:
                raise ParameterError("rectangle p-sides overlap")
        for (a_lo, a_hi), (b_lo, b_hi) in zip(nsides, nsides[1:]):
            if b_lo < a_hi:
                raise ParameterError("rectangle n-sides overlap")
        if strict and len(rects) > M:
            raise ParameterError("family needs K <= M")
        return cls(rects=rects, Q=Q, X=X, M=M, Y=Y)


def rect_bilinear(alpha_values, beta_values, F: PolyPhase, family: RectFamily,
                  sieve: PrimeSieve, *, phases=None) -> complex:
    """I = sum_k sum_{(p,n) in R(k)} alpha(n) beta(p) e(F(np)), p prime."""
    if not family.rects:
        return 0.0 + 0.0j
    beta = np.asarray(beta_values)
    if np.abs(beta).max() > 1 + 1e-12:
        raise ParameterError("|beta(p)| <= 1 is required")
    alpha = np.asarray(alpha_values)
    max_prod = max(int(r.p_hi * r.n_hi) for r in family.rects)
    if phases is None:
        phases = phase_values(F, max_prod)
    contribs = np.zeros(len(family.rects), dtype=np.complex128)
    for idx, r in enumerate(family.rects):
        ps = sieve.primes_in(math.floor(r.p_lo), math.floor(r.p_hi))
        n_lo, n_hi = math.floor(r.n_lo) + 1, math.floor(r.n_hi)
        if len(ps) == 0 or n_hi < n_lo:
            continue
        if n_hi >= len(alpha):
            raise ParameterError("alpha_values do not cover the n-sides")
        ns = np.arange(n_lo, n_hi + 1)
        prods = ps[:, None] * ns[None, :]
        terms = beta[ps][:, None] * alpha[ns][None, :] * phases[prods]
        contribs[idx] = pairwise_sum(terms.ravel())
    return complex(pairwise_sum(contribs))


@dataclass(frozen=True)
class BoundReport:
    """|S| against the three-part envelope, no implied constant asserted.

    rhs_main = N / (log N)^(1-C) with C = A/2r, rhs_arc the arc-quality
    term, rhs_tail = sqrt(N R^(1/ell)).  q_in_clean_window records whether
    q sits in [(log N)^(4r^2), N^ell/(log N)^(4r^2)].
    """

    N: int
    r: int
    A: float
    lhs: float
    rhs_main: float
    rhs_arc: float
    rhs_tail: float
    ratio: float
    approx: RationalApprox
    arc_label: str
    q_in_clean_window: bool

    @property
    def C(self) -> float:
        return self.A / (2 * self.r)


def theorem1_report(f_values, F: PolyPhase, N: int, r: int, A: float, *,
                    B: float = 1.0, arc: ArcClassification | None = None,
                    threads: int = 1) -> BoundReport:
    """Evaluate the sum and populate the bound envelope at the best index.

    Pure measurement: the asymptotic inequality carries an unspecified
    constant, so only the ratio is reported.  The approximation comes from
    classify_arc with exponent B (the theoretical window exponent 4r^2
    makes the radius degenerate at desk scale); the chosen certificate is
    the one minimizing rhs_arc + rhs_tail over ell.
    """
    d = F.degree
    if r <= d * (d + 1):
        raise ParameterError(f"need r > d(d+1) = {d * (d + 1)}, got {r}")
    if arc is None:
        arc = classify_arc(F, N, B)
    C = A / (2 * r)
    logN = math.log(N)
    lhs = abs(weyl_sum(f_values, F, N, threads=threads))
    best = None
    for ap in arc.approxes:
        ell, q = ap.ell, ap.q
        arc_term = N * logN**C * (q / float(N) ** ell + 1.0 / q) ** (1.0 / (4 * r * r))
        tail_term = math.sqrt(N * ap.R ** (1.0 / ell))
        if best is None or arc_term + tail_term < best[0]:
            best = (arc_term + tail_term, ap, arc_term, tail_term)
    _, ap, rhs_arc, rhs_tail = best
    rhs_main = N / logN ** (1.0 - C)
    window = 4 * r * r
    loglogN = math.log(logN)
    in_window = (window * loglogN <= math.log(ap.q)
                 <= ap.ell * logN - window * loglogN)
    return BoundReport(
        N=int(N), r=int(r), A=float(A), lhs=float(lhs),
        rhs_main=float(rhs_main), rhs_arc=float(rhs_arc), rhs_tail=float(rhs_tail),
        ratio=float(lhs / (rhs_main + rhs_arc + rhs_tail)),
        approx=ap, arc_label=arc.label, q_in_clean_window=bool(in_window),
    )
