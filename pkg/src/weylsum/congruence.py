"""Roots of an irreducible integer polynomial modulo n.

The counting function rho(n) = #{v mod n : p(v) = 0 mod n} is
multiplicative, so the table is built from prime powers: a scan finds
roots mod each prime, Hensel lifting raises them to prime powers (unique
Newton steps away from the discriminant, exhaustive candidate testing at
primes dividing it), and a CRT pass combines them for every n <= N.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels_numpy
from .arith import PrimeSieve
from .backend import kernels
from .errors import ParameterError, ResourceError
from .phase import FracFixed
from .util import pairwise_sum

ROOT_TABLE_SOFT_LIMIT = 10**6
_COEFF_KERNEL_LIMIT = 1 << 62


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss)."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for swap in range(k + 1, n):
                if a[swap][k] != 0:
                    a[k], a[swap] = a[swap], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _resultant(f: list[int], g: list[int]) -> int:
    """Resultant via the Sylvester matrix, coefficients ascending."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    fd, gd = f[::-1], g[::-1]  # descending
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - i - n - 1))
    return _bareiss_det(rows)


def poly_eval(coeffs, x: int, mod: int | None = None) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
        if mod is not None:
            acc %= mod
    return acc


def poly_derivative(coeffs) -> tuple[int, ...]:
    return tuple(j * c for j, c in enumerate(coeffs) if j >= 1)


def discriminant(coeffs) -> int:
    """disc = (-1)^(e(e-1)/2) Res(p, p') / lc(p), exact over the integers."""
    coeffs = [int(c) for c in coeffs]
    e = len(coeffs) - 1
    if e < 2 or coeffs[-1] == 0:
        raise ParameterError("discriminant needs degree >= 2 with nonzero lead")
    res = _resultant(coeffs, list(poly_derivative(coeffs)))
    sign = -1 if (e * (e - 1) // 2) % 2 else 1
    disc, rem = divmod(sign * res, coeffs[-1])
    if rem != 0:
        raise AssertionError("resultant not divisible by leading coefficient")
    return disc


@dataclass(frozen=True)
class Irreducibility:
    """How (or whether) irreducibility over Q was certified."""

    status: str  # "irreducible" | "reducible" | "asserted"
    method: str  # "rational_root_checked" | "certified" | "none"
    witness: int = 0  # certifying prime, or a rational root numerator


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients ascending, degree >= 2."""

    coeffs: tuple[int, ...]
    disc: int
    irreducibility: Irreducibility = field(
        default=Irreducibility("asserted", "none")
    )

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPoly":
        coeffs = tuple(int(c) for c in coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) - 1 < 2:
            raise ParameterError("IntPoly needs degree >= 2")
        d = discriminant(coeffs)
        if d == 0:
            raise ParameterError(
                "zero discriminant: polynomial is not squarefree, cannot be irreducible"
            )
        return cls(coeffs=coeffs, disc=d)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def content(self) -> int:
        return math.gcd(*(abs(c) for c in self.coeffs))

    def __call__(self, x: int, mod: int | None = None) -> int:
        return poly_eval(self.coeffs, x, mod)


_POLY_TERM = re.compile(
    r"^(?P<coef>[+-]?\d*)\*?(?:x(?:\^(?P<pow>\d+))?)?$"
)


def parse_poly(expr: str) -> IntPoly:
    """Parse integer-coefficient expressions like 'x^2+1' or '2*x^3-x+5'."""
    s = expr.replace(" ", "")
    if not s:
        raise ParameterError("empty polynomial expression")
    pieces = []
    term = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "*^+-":
            pieces.append(term)
            term = ch
        else:
            term += ch
    pieces.append(term)
    acc: dict[int, int] = {}
    for piece in pieces:
        m = _POLY_TERM.match(piece)
        if not m or (m.group("coef") in ("", "+", "-") and "x" not in piece):
            raise ParameterError(f"cannot parse polynomial term {piece!r}")
        coef_txt = m.group("coef")
        if "x" in piece:
            power = int(m.group("pow") or 1)
            coef = int(coef_txt + "1") if coef_txt in ("", "+", "-") else int(coef_txt)
        else:
            power = 0
            coef = int(coef_txt)
        acc[power] = acc.get(power, 0) + coef
    degree = max(acc)
    return IntPoly.from_coeffs([acc.get(j, 0) for j in range(degree + 1)])


def _rational_roots(coeffs) -> list[Fraction]:
    c0, lc = coeffs[0], coeffs[-1]
    if c0 == 0:
        return [Fraction(0)]
    roots = []
    num_divs = [d for d in range(1, abs(c0) + 1) if c0 % d == 0]
    den_divs = [d for d in range(1, abs(lc) + 1) if lc % d == 0]
    for u in num_divs:
        for w in den_divs:
            for cand in (Fraction(u, w), Fraction(-u, w)):
                if sum(c * cand**j for j, c in enumerate(coeffs)) == 0:
                    roots.append(cand)
    return roots


def _poly_mod_mul(a, b, mod_poly, q):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % q
    # reduce modulo mod_poly (monic of degree e)
    e = len(mod_poly) - 1
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c == 0:
            continue
        out[i] = 0
        for j in range(e):
            out[i - e + j] = (out[i - e + j] - c * mod_poly[j]) % q
    return out[:e] + [0] * max(0, e - len(out))


def _poly_gcd_mod(a, b, q):
    def trim(p):
        while p and p[-1] % q == 0:
            p.pop()
        return p

    a = trim([x % q for x in a])
    b = trim([x % q for x in b])
    while b:
        inv = pow(b[-1], -1, q)
        r = a[:]
        while len(r) >= len(b):
            c = (r[-1] * inv) % q
            shift = len(r) - len(b)
            if c:
                for j, x in enumerate(b):
                    r[shift + j] = (r[shift + j] - c * x) % q
            r.pop()
            trim(r)
        a, b = b, trim(r)
    return a


def _irreducible_mod_q(coeffs, q: int) -> bool:
    """Distinct-degree test: no factor of degree <= e/2 over F_q."""
    e = len(coeffs) - 1
    lc_inv = pow(coeffs[-1] % q, -1, q)
    monic = [(c * lc_inv) % q for c in coeffs]
    cur = [0] * e
    cur[1] = 1  # the polynomial x, reduced mod (monic, q)
    for i in range(1, e // 2 + 1):
        # raise to the q-th power by square-and-multiply
        result = [1] + [0] * (e - 1)
        base = cur[:]
        exp = q
        while exp:
            if exp & 1:
                result = _poly_mod_mul(result, base, monic, q)
            base = _poly_mod_mul(base, base, monic, q)
            exp >>= 1
        cur = result
        # gcd(x^(q^i) - x, p) must be constant
        diff = cur[:]
        diff[1] = (diff[1] - 1) % q
        g = _poly_gcd_mod(diff, monic, q)
        if len(g) > 1:
            return False
    return True


def irreducibility_check(poly: IntPoly, sieve: PrimeSieve,
                         max_primes: int = 25) -> IntPoly:
    """Try to certify irreducibility over Q; reject certified-reducible input.

    Degree <= 3 with no rational root is conclusive; otherwise the first
    25 primes q not dividing lc*disc are tried for irreducibility mod q.
    If nothing certifies, the status stays "asserted" and table builders
    require an explicit opt-in.
    """
    coeffs = poly.coeffs
    roots = _rational_roots(coeffs)
    if roots:
        raise ParameterError(
            f"polynomial is reducible: rational root {roots[0]}"
        )
    if poly.degree <= 3:
        cert = Irreducibility("irreducible", "rational_root_checked")
        return IntPoly(coeffs=coeffs, disc=poly.disc, irreducibility=cert)
    tried = 0
    bad = abs(poly.disc * coeffs[-1])
    for q in sieve.primes:
        q = int(q)
        if bad % q == 0:
            continue
        tried += 1
        if _irreducible_mod_q(list(coeffs), q):
            cert = Irreducibility("irreducible", "certified", witness=q)
            return IntPoly(coeffs=coeffs, disc=poly.disc, irreducibility=cert)
        if tried >= max_primes:
            break
    return IntPoly(coeffs=coeffs, disc=poly.disc,
                   irreducibility=Irreducibility("asserted", "none"))


def roots_mod_prime(poly: IntPoly, q: int) -> list[int]:
    """All v in [0, q) with p(v) = 0 mod q (forward-difference scan)."""
    e = poly.degree
    if q <= e + 2 or poly.content % q == 0 or any(
        abs(c) >= _COEFF_KERNEL_LIMIT for c in poly.coeffs
    ):
        return [v for v in range(q) if poly(v, q) == 0]
    primes = np.asarray([q], dtype=np.int64)
    coeffs = np.asarray(poly.coeffs, dtype=np.int64)
    _, flat = kernels.roots_mod_primes(primes, coeffs)
    return [int(v) for v in flat]


def lift_roots(poly: IntPoly, q: int, k: int) -> list[int]:
    """Roots of p mod q^k: Newton steps off the discriminant, candidate
    testing (all q lifts of each root) at primes dividing disc or content."""
    if k < 1:
        raise ParameterError("lift_roots needs k >= 1")
    base = roots_mod_prime(poly, q)
    if k == 1 or not base:
        return base
    simple = poly.disc % q != 0 and poly.content % q != 0
    if simple:
        dp = poly_derivative(poly.coeffs)
        out = []
        for v in base:
            mod = q
            for _ in range(k - 1):
                mod *= q
                fv = poly(v, mod)
                inv = pow(poly_eval(dp, v, mod), -1, mod)
                v = (v - fv * inv) % mod
            out.append(v)
        return sorted(out)
    roots = base
    mod = q
    for _ in range(k - 1):
        nxt_mod = mod * q
        roots = [
            v + t * mod
            for v in roots
            for t in range(q)
            if poly(v + t * mod, nxt_mod) == 0
        ]
        mod = nxt_mod
    return sorted(roots)


@dataclass(frozen=True)
class RootTable:
    """CSR table of roots mod n for all n <= N, plus rho counts."""

    poly: IntPoly
    N: int
    rho: np.ndarray
    offsets: np.ndarray
    flat: np.ndarray

    def roots(self, n: int) -> np.ndarray:
        return self.flat[self.offsets[n] : self.offsets[n + 1]]

    def sum_rho(self, x: int | None = None) -> int:
        x = self.N if x is None else x
        return int(self.rho[1 : x + 1].sum())

    def n_index(self) -> np.ndarray:
        """Denominator n for every entry of flat, in table order."""
        return np.repeat(np.arange(self.N + 1, dtype=np.int64), self.rho)

    def ratio_sequence(self) -> "RatioSequence":
        return RatioSequence.from_table(self)


@dataclass(frozen=True)
class RatioSequence:
    """Root ratios v/n ordered by denominator, then numerator."""

    entries: tuple[tuple[int, int, FracFixed], ...]

    @classmethod
    def from_table(cls, table: RootTable) -> "RatioSequence":
        ns = table.n_index()
        entries = tuple(
            (int(v), int(n), FracFixed.from_fraction(Fraction(int(v), int(n))))
            for v, n in zip(table.flat, ns)
        )
        return cls(entries=entries)


def build_root_table(poly: IntPoly, sieve: PrimeSieve, N: int, *,
                     allow_large: bool = False,
                     allow_asserted: bool = False) -> RootTable:
    """Roots mod every n <= N, CRT-combined over the spf factorization."""
    if N > sieve.limit:
        raise ParameterError(f"N = {N} exceeds sieve limit {sieve.limit}")
    if N > ROOT_TABLE_SOFT_LIMIT and not allow_large:
        raise ResourceError(
            f"root table to N = {N} > 10^6 needs allow_large=True"
        )
    if poly.irreducibility.status == "asserted":
        poly = irreducibility_check(poly, sieve)
        if poly.irreducibility.status == "asserted" and not allow_asserted:
            raise ParameterError(
                "irreducibility could not be certified; pass allow_asserted=True"
            )
    primes = sieve.primes[sieve.primes <= N]
    e = poly.degree
    content = poly.content
    small_mask = primes <= e + 2
    if content > 1:
        small_mask = small_mask | np.asarray(
            [content % int(p) == 0 for p in primes], dtype=bool
        )
    kernel_ok = all(abs(c) < _COEFF_KERNEL_LIMIT for c in poly.coeffs)

    pp_count = np.zeros(N + 1, dtype=np.int64)
    pp_off = np.zeros(N + 1, dtype=np.int64)
    flat_parts: list[np.ndarray] = []
    pos = 0

    regular = primes[~small_mask]
    if len(regular):
        coeff_arr = np.asarray(poly.coeffs, dtype=np.int64)
        if kernel_ok:
            counts, flat = kernels.roots_mod_primes(regular, coeff_arr)
        else:
            counts, flat = _kernels_numpy.roots_mod_primes(
                regular, [int(c) for c in poly.coeffs]
            )
    else:
        counts, flat = np.zeros(0, np.int64), np.zeros(0, np.int64)

    # roots mod single primes
    prime_roots: dict[int, list[int]] = {}
    w = 0
    for p, c in zip(regular, counts):
        prime_roots[int(p)] = [int(v) for v in flat[w : w + c]]
        w += c
    for p in primes[small_mask]:
        p = int(p)
        prime_roots[p] = [v for v in range(p) if poly(v, p) == 0]

    # prime powers q = p^k <= N, lifting level by level
    for p in primes:
        p = int(p)
        rts = prime_roots[p]
        pp_count[p] = len(rts)
        pp_off[p] = pos
        flat_parts.append(np.asarray(rts, dtype=np.int64))
        pos += len(rts)
        q, k = p * p, 2
        while q <= N:
            lifted = lift_roots(poly, p, k)
            pp_count[q] = len(lifted)
            pp_off[q] = pos
            flat_parts.append(np.asarray(lifted, dtype=np.int64))
            pos += len(lifted)
            q *= p
            k += 1
    pp_flat = (
        np.concatenate(flat_parts) if flat_parts else np.zeros(0, np.int64)
    )
    ppart = kernels.prime_power_parts(sieve.spf, int(N))
    rho, off, table_flat = kernels.crt_combine(
        sieve.spf, ppart, pp_count, pp_off, pp_flat, int(N)
    )
    return RootTable(poly=poly, N=int(N), rho=rho, offsets=off, flat=table_flat)


def brute_force_roots(poly: IntPoly, n: int) -> list[int]:
    """Oracle: scan all residues mod n."""
    return [v for v in range(n) if poly(v, n) == 0]


@dataclass(frozen=True)
class RhoStats:
    """Wirsing-mean and moment diagnostics for one table."""

    mean_ratio_full: float
    mean_ratio_half: float
    second_moment_ratio: float
    submult_violations: int
    samples: int
    A: float
    D: float
    max_growth_exponent: float


def rho_stats(table: RootTable, A: float = 0.0, D: float = 2.0,
              samples: int = 500, seed: int = 0) -> RhoStats:
    """Mean ratios at N and N/2, second moment at exponent A, and the
    count of sampled pairs violating rho(mn) <= D^|disc| rho(m) rho(n)."""
    N = table.N
    rho = table.rho
    mean_full = table.sum_rho(N) / N
    mean_half = table.sum_rho(N // 2) / (N // 2)
    logN = math.log(N)
    second = float((rho[1:].astype(np.float64) ** 2).sum()) / (N * logN**A)
    bound_factor = float(D) ** abs(table.poly.disc)
    rng = random.Random(seed)
    violations = 0
    for _ in range(samples):
        m = rng.randint(2, max(2, N // 2))
        n = rng.randint(1, max(1, N // m))
        if rho[m * n] > bound_factor * rho[m] * rho[n]:
            violations += 1
    nz = np.flatnonzero(rho[2:] > 1) + 2
    growth = float(
        max((math.log(rho[n]) / math.log(n) for n in nz), default=0.0)
    )
    return RhoStats(
        mean_ratio_full=float(mean_full),
        mean_ratio_half=float(mean_half),
        second_moment_ratio=second,
        submult_violations=violations,
        samples=samples,
        A=float(A),
        D=float(D),
        max_growth_exponent=growth,
    )


def max_growth_exponent(table: RootTable, upto: int) -> float:
    """max over 2 <= n <= upto of log rho(n) / log n."""
    rho = table.rho
    nz = np.flatnonzero(rho[2 : upto + 1] > 1) + 2
    return float(max((math.log(rho[n]) / math.log(n) for n in nz), default=0.0))


def twisted_rho_mean(table: RootTable, chi, r: int, N: int) -> complex:
    """(r/N) sum_{m <= N/r} chi(m) rho(rm)."""
    if r < 1 or r > N:
        raise ParameterError("twisted_rho_mean needs 1 <= r <= N")
    if N > table.N:
        raise ParameterError(f"N = {N} exceeds table range {table.N}")
    m = np.arange(1, N // r + 1, dtype=np.int64)
    vals = chi.value_table()[m % chi.modulus]
    terms = vals * table.rho[r * m]
    return complex(r / N * pairwise_sum(terms))
