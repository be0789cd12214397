import math
from fractions import Fraction

import pytest

import weylsum as ws
from weylsum.partition import hyperbola_points


def test_width_count_example():
    # N=1024, s=64, i=3: min(4, 8, 5)
    assert ws.width_count(1024, 64, 3) == 4


def test_width_count_collapses_at_s_equals_n():
    # s = N: third term becomes floor(log2(64)/2) = 3
    for i in range(0, 11):
        assert ws.width_count(1024, 1024, i) == min(i + 1, 10 - i + 1, 3)


def test_main_rectangle_formula():
    r0 = ws.main_rectangle(1024, 0)
    assert (r0.p_lo, r0.p_hi) == (0, 1)
    assert (r0.n_lo, r0.n_hi) == (512, 1024)


def test_sub_rectangle_formula():
    # literal index formula at (i, j, k) = (2, 1, 1)
    r = ws.sub_rectangle(1024, 2, 1, 1)
    assert (r.p_lo, r.p_hi) == (8, 16)
    assert (r.n_lo, r.n_hi) == (0, Fraction(1024, 16))


def test_scheme_drops_duplicate_indices():
    # (i, j, k) and (i+1, j-1, k) give the same rectangle when k = 2^(j-1);
    # the scheme must store distinct, pairwise-disjoint rectangles only
    scheme = ws.build_partition(1024, 64)
    rects = scheme.all_rectangles()
    assert len(rects) == len(set(rects))
    for i, j, k, _ in scheme.sub_rects:
        assert 2 ** (j - 1) < k <= 2**j


def test_corner_products_do_not_exceed_n():
    scheme = ws.build_partition(10007, 100)
    for *_, r in scheme.sub_rects:
        assert r.p_hi * r.n_hi <= 10007
    for _, r in scheme.main_rects:
        assert r.p_hi * r.n_hi <= 10007


def test_preconditions():
    with pytest.raises(ws.ParameterError):
        ws.build_partition(32, 4)
    with pytest.raises(ws.ParameterError):
        ws.build_partition(1024, 0.5)
    with pytest.raises(ws.ParameterError):
        ws.build_partition(1024, 2048)


@pytest.mark.parametrize("N,s", [(1024, 4), (1024, 64), (1024, 32)])
def test_exact_cover_unit_weight(N, s, sieve_10k):
    scheme = ws.build_partition(N, s)
    rep = ws.verify_partition(scheme, sieve_10k)
    assert rep.max_multiplicity == 1
    assert rep.direct_sum == rep.partitioned_sum  # bit-identical integers
    assert rep.sums_exact
    assert rep.direct_sum == sum(
        N // int(p) for p in sieve_10k.primes[sieve_10k.primes <= N]
    )
    assert rep.n_points == rep.n_covered + rep.n_exceptional


def test_exceptional_points_defining_property(sieve_10k):
    scheme = ws.build_partition(1024, 64)
    rects = scheme.all_rectangles()
    pts = list(ws.exceptional_points(scheme, sieve_10k))
    assert pts == sorted(pts)
    for p, n in pts:
        assert sieve_10k.is_prime[p] and p * n <= 1024
        assert not any(r.contains(p, n) for r in rects)
    # complement size agrees with a brute-force membership scan
    brute = [
        (p, n)
        for p, n in hyperbola_points(1024, sieve_10k)
        if not any(r.contains(p, n) for r in rects)
    ]
    assert pts == brute


def test_exceptional_grows_when_s_max(sieve_10k):
    small = list(ws.exceptional_points(ws.build_partition(1024, 64), sieve_10k))
    big = list(ws.exceptional_points(ws.build_partition(1024, 1024), sieve_10k))
    assert len(big) > len(small)


def test_complex_weight_equality(sieve_10k):
    N = 2**12
    F = ws.parse_phase("sqrt:2*x")
    ph = ws.phase_values(F, N)
    mob = ws.sieve_values(ws.mobius(), sieve_10k, N)

    def weight(p, n):
        return mob[n] * math.log(p) * ph[p * n]

    scheme = ws.build_partition(N, 64)
    rep = ws.verify_partition(scheme, sieve_10k, weight)
    scale = max(abs(rep.direct_sum), 1.0)
    assert abs(rep.direct_sum - rep.partitioned_sum) <= 1e-9 * scale
    assert rep.max_multiplicity == 1


def test_dimension_bounds(sieve_10k):
    for N, s in [(1024, 4), (1024, 64), (4096, 64)]:
        scheme = ws.build_partition(N, s)
        rep = ws.verify_partition(scheme, sieve_10k)
        assert rep.widths_ok and rep.area_ok
        assert rep.min_p_width >= 0.25
        assert rep.min_n_width >= 0.25
        assert rep.min_area >= float(Fraction(s, 256))
        assert rep.area_bound_derived
