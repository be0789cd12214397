"""Dirichlet character groups, conductors, mixed and complete character
sums, and the pretentious decomposition / witness search.

Characters are exponent vectors over an explicit generator decomposition
of (Z/kZ)^x: a primitive root with a discrete-log table for each odd
prime-power component, the pair (-1, 5) for the 2-adic part.  Values are
carried as exact rational angles (an integer numerator over the group
exponent) and become complex numbers only at the evaluation boundary, so
orthogonality cancels to float rounding and nothing worse.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ResourceError
from .phase import PolyPhase, dirichlet_approx, phase_values
from .util import pairwise_sum

MAX_MODULUS = 10**6
_WITNESS_WORK_BUDGET = 2 * 10**8
_COMPLETE_SUM_WORK = 10**8


def _factorize_small(k: int) -> list[tuple[int, int]]:
    out = []
    m = k
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def _primitive_root_mod_p(p: int) -> int:
    if p == 2:
        return 1
    fac = [q for q, _ in _factorize_small(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise AssertionError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of (Z/kZ)^x with its discrete-log table."""

    modulus: int
    generator: int
    order: int
    dlog: np.ndarray  # length modulus; -1 marks residues not coprime


def _odd_component(p: int, a: int) -> _Component:
    q = p**a
    g = _primitive_root_mod_p(p)
    if a >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    order = q // p * (p - 1)
    dlog = np.full(q, -1, dtype=np.int64)
    x = 1
    for t in range(order):
        dlog[x] = t
        x = x * g % q
    return _Component(modulus=q, generator=g, order=order, dlog=dlog)


def _two_components(a: int) -> list[_Component]:
    if a == 1:
        return []
    q = 2**a
    if a == 2:
        dlog = np.full(4, -1, dtype=np.int64)
        dlog[1], dlog[3] = 0, 1
        return [_Component(modulus=4, generator=3, order=2, dlog=dlog)]
    half = 2 ** (a - 2)
    d1 = np.full(q, -1, dtype=np.int64)
    d2 = np.full(q, -1, dtype=np.int64)
    for s in range(2):
        base = (q - 1) ** s % q
        x = base
        for t in range(half):
            d1[x], d2[x] = s, t
            x = x * 5 % q
    return [
        _Component(modulus=q, generator=q - 1, order=2, dlog=d1),
        _Component(modulus=q, generator=5, order=half, dlog=d2),
    ]


@dataclass(frozen=True)
class CharGroup:
    """(Z/kZ)^x as a product of explicit cyclic components."""

    k: int
    components: tuple[_Component, ...]
    exponent: int  # lcm of the component orders (1 when k <= 2)
    phi: int

    @classmethod
    def build(cls, k: int) -> "CharGroup":
        if not (1 <= k <= MAX_MODULUS):
            raise ResourceError(f"character modulus must be in [1, 10^6], got {k}")
        comps: list[_Component] = []
        for p, a in _factorize_small(k):
            if p == 2:
                comps.extend(_two_components(a))
            else:
                comps.append(_odd_component(p, a))
        exponent = math.lcm(*(c.order for c in comps)) if comps else 1
        phi = math.prod(c.order for c in comps)
        return cls(k=k, components=tuple(comps), exponent=exponent, phi=phi)

    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)


@dataclass
class DirichletCharacter:
    """chi mod k as an exponent vector against the group generators."""

    group: CharGroup
    exponents: tuple[int, ...]
    _angle: np.ndarray | None = field(default=None, repr=False)
    _table: np.ndarray | None = field(default=None, repr=False)

    @property
    def modulus(self) -> int:
        return self.group.k

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def angle_table(self) -> np.ndarray:
        """Numerator of the angle of chi(t) over the group exponent, per
        residue t mod k; -1 where chi vanishes."""
        if self._angle is not None:
            return self._angle
        k, L = self.group.k, self.group.exponent
        t = np.arange(max(k, 1), dtype=np.int64)
        num = np.zeros(len(t), dtype=np.int64)
        # vanishing off the units: components with order 1 carry no dlog
        # table (e.g. the 2^1 part), so mask on gcd directly
        ok = np.gcd(t, k) == 1
        for e, comp in zip(self.exponents, self.group.components):
            dl = comp.dlog[t % comp.modulus]
            valid = dl >= 0
            ok &= valid
            num = (num + e * np.where(valid, dl, 0) * (L // comp.order)) % L
        num[~ok] = -1
        self._angle = num
        return num

    def value_table(self) -> np.ndarray:
        """chi(t) for t = 0..k-1 as complex128."""
        if self._table is not None:
            return self._table
        num = self.angle_table()
        L = self.group.exponent
        vals = np.exp(2j * np.pi * np.maximum(num, 0) / L)
        vals[num < 0] = 0.0
        self._table = vals
        return vals

    def __call__(self, n: int) -> complex:
        num = self.angle_table()[n % max(self.group.k, 1)]
        if num < 0:
            return 0.0 + 0.0j
        return complex(np.exp(2j * np.pi * num / self.group.exponent))

    def conjugate(self) -> "DirichletCharacter":
        orders = self.group.orders()
        return DirichletCharacter(
            self.group, tuple((-e) % o for e, o in zip(self.exponents, orders))
        )


def enumerate_characters(k: int) -> list[DirichletCharacter]:
    """All phi(k) characters mod k, principal first, ordered by exponents."""
    group = CharGroup.build(k)
    return [
        DirichletCharacter(group, exps)
        for exps in itertools.product(*[range(o) for o in group.orders()])
    ]


def principal_character(k: int) -> DirichletCharacter:
    group = CharGroup.build(k)
    return DirichletCharacter(group, tuple(0 for _ in group.components))


def _divisors(k: int) -> list[int]:
    ds = [1]
    for p, e in _factorize_small(k):
        ds = [d * p**j for d in ds for j in range(e + 1)]
    return sorted(ds)


def conductor(chi: DirichletCharacter) -> int:
    """Smallest f | k with chi induced by a character mod f.

    chi is induced mod f iff chi is 1 on every n = 1 (mod f) coprime to k;
    tested exactly on the integer angle numerators.
    """
    k = chi.modulus
    if k == 1:
        return 1
    num = chi.angle_table()
    for f in _divisors(k):
        ok = True
        for n in range(1, k + 1, f):
            if math.gcd(n, k) != 1:
                continue
            if num[n % k] != 0:
                ok = False
                break
        if ok:
            return f
    return k


def mixed_char_sum(chi: DirichletCharacter, F: PolyPhase, N: int, *,
                   phases=None) -> complex:
    """sum_{n<=N} chi(n) e(F(n)) with pairwise summation."""
    if N < 1:
        raise ParameterError("mixed_char_sum needs N >= 1")
    if phases is None:
        phases = phase_values(F, N)
    k = max(chi.modulus, 1)
    vals = chi.value_table()[np.arange(1, N + 1, dtype=np.int64) % k]
    return complex(pairwise_sum(vals * phases[1 : N + 1]))


@dataclass(frozen=True)
class CompleteTwistedSum:
    """sum_{x mod M} chi(x) e(P(x)/q) with M = lcm(k, q)."""

    value: complex
    modulus: int
    normalized: float  # |value| / sqrt(M), the square-root-cancellation ratio


def complete_twisted_sum(chi: DirichletCharacter, P, q: int) -> CompleteTwistedSum:
    """Complete twisted sum with exact rational phases.

    The summation modulus is M = lcm(k, q), the joint period of chi(x) and
    e(P(x)/q); both angles are combined over the common denominator q*L
    before any float rounding.
    """
    if q < 1:
        raise ParameterError("phase denominator q must be >= 1")
    coeffs = [int(c) % q for c in P]
    k = chi.modulus
    M = math.lcm(k, q)
    if M * (len(coeffs) + 1) > _COMPLETE_SUM_WORK:
        raise ResourceError(
            f"complete sum work M*deg = {M * (len(coeffs) + 1)} over budget"
        )
    L = chi.group.exponent
    denom = q * L
    x = np.arange(M, dtype=np.int64)
    anum = chi.angle_table()[x % max(k, 1)]
    mask = anum >= 0
    if q * M < 2**62 and denom * 2 < 2**62:
        acc = np.zeros(M, dtype=np.int64)
        for c in reversed(coeffs):
            acc = (acc * x + c) % q
        theta = ((acc * L + np.maximum(anum, 0) * q) % denom) / denom
    else:
        theta = np.zeros(M, dtype=np.float64)
        for xi in range(M):
            a = 0
            for c in reversed(coeffs):
                a = (a * xi + c) % q
            theta[xi] = ((a * L + max(int(anum[xi]), 0) * q) % denom) / denom
    terms = np.where(mask, np.exp(2j * np.pi * theta), 0.0)
    value = complex(pairwise_sum(terms))
    return CompleteTwistedSum(
        value=value, modulus=M, normalized=abs(value) / math.sqrt(M)
    )


@dataclass(frozen=True)
class PretentiousDecomposition:
    """Rational-phase decomposition T(u) = sum_{a<=k} e(F1(a)) S(a).

    S_direct[a-1] is the straight progression sum over n = a (mod k);
    S_expanded[a-1] the character-orthogonality reassembly
    (1/phi(k')) sum_psi conj(psi)(a') sum_{m<=u/d} psi(m) f(dm) with
    d = gcd(a, k), a' = a/d, k' = k/d.  The two agree exactly.
    """

    approxes: tuple
    k: int
    F1: tuple
    u: int
    S_direct: np.ndarray
    S_expanded: np.ndarray
    T_direct: complex
    T_reconstructed: complex
    max_discrepancy: float


def pretentious_decompose(f_values, F: PolyPhase, N: int, r: int, A: float, *,
                          u: int | None = None,
                          k_limit: int = MAX_MODULUS) -> PretentiousDecomposition:
    """Split the twisted sum through rational approximations of each
    coefficient (radius N^ell/(log N)^(4r^2+4rA), floored at 2 so the
    radius stays meaningful at desk scale) and verify the exact
    character-sum identity for the progression sums."""
    from fractions import Fraction

    if len(f_values) < N + 1:
        raise ParameterError("f_values must cover 1..N")
    u = N if u is None else u
    if not (1 <= u <= N):
        raise ParameterError("need 1 <= u <= N")
    B = 4.0 * r * r + 4.0 * r * A
    logN = math.log(N)
    approxes = []
    for ell in range(1, F.degree + 1):
        # the asymptotic radius N^ell/(log N)^B is degenerate at desk
        # scale; floor it at N^(ell/2) so denominators up to sqrt(N^ell)
        # stay reachable (the identity below is exact for any radius)
        R = max(2.0, float(N) ** (ell / 2.0), float(N) ** ell / logN**B)
        approxes.append(dirichlet_approx(F.coeffs[ell - 1], R, ell=ell))
    k = math.lcm(*(ap.q for ap in approxes))
    if k > k_limit:
        offenders = [ap.q for ap in approxes if ap.q > 1]
        raise ResourceError(
            f"lcm of denominators {offenders} is {k} > {k_limit}; decomposition refused"
        )

    fv = np.asarray(f_values, dtype=np.complex128)
    # e(F1(t)) over residues t mod k, exact: integer numerator over k
    num = np.zeros(k, dtype=np.int64)
    for t in range(k):
        total = 0
        for ap in approxes:
            total += (ap.a % ap.q) * (k // ap.q) * pow(t, ap.ell, k)
        num[t] = total % k
    e1 = np.exp(2j * np.pi * (num / k))

    idx = np.arange(1, u + 1, dtype=np.int64) % k
    S_direct = np.zeros(k, dtype=np.complex128)  # index = a mod k
    np.add.at(S_direct, idx, fv[1 : u + 1])

    groups: dict[int, list[DirichletCharacter]] = {}
    W: dict[int, list[complex]] = {}
    for d in _divisors(k):
        kp = k // d
        chars = enumerate_characters(kp)
        groups[kp] = chars
        m = np.arange(1, u // d + 1, dtype=np.int64)
        Wlist = []
        for psi in chars:
            if len(m):
                vals = psi.value_table()[m % max(kp, 1)] * fv[d * m]
                Wlist.append(complex(pairwise_sum(vals)))
            else:
                Wlist.append(0.0 + 0.0j)
        W[d] = Wlist

    S_expanded = np.zeros(k, dtype=np.complex128)
    for a in range(1, k + 1):
        d = math.gcd(a, k)
        kp = k // d
        ap_res = (a // d) % max(kp, 1)
        chars = groups[kp]
        acc = 0.0 + 0.0j
        for psi, w in zip(chars, W[d]):
            acc += np.conj(psi.value_table()[ap_res]) * w
        S_expanded[a % k] = acc / len(chars)

    T_direct = complex(pairwise_sum(fv[1 : u + 1] * e1[idx]))
    a_idx = np.arange(1, k + 1, dtype=np.int64) % k
    T_rec = complex(pairwise_sum(e1[a_idx] * S_expanded[a_idx]))
    max_disc = float(np.max(np.abs(S_direct - S_expanded))) if k else 0.0
    F1 = tuple(Fraction(ap.a, ap.q) for ap in approxes)
    return PretentiousDecomposition(
        approxes=tuple(approxes), k=int(k), F1=F1, u=int(u),
        S_direct=S_direct, S_expanded=S_expanded,
        T_direct=T_direct, T_reconstructed=T_rec,
        max_discrepancy=max_disc,
    )


@dataclass(frozen=True)
class WitnessResult:
    """Best pretentious witness: argmax over k, psi, u of |sum psi(n) f(n)|."""

    k: int
    chi: DirichletCharacter
    u: int
    value: complex
    magnitude: float


def pretentious_witness(f_values, N: int, k_max: int) -> WitnessResult:
    """Scan all psi mod k <= k_max and all prefixes u <= N.

    Ties break deterministically: smallest k, then exponent order, then
    smallest u (first arg-max of the running prefix sums).
    """
    if k_max > 10**4:
        raise ParameterError("pretentious_witness needs k_max <= 10^4")
    if len(f_values) < N + 1:
        raise ParameterError("f_values must cover 1..N")
    phi_sum = sum(CharGroup.build(k).phi for k in range(1, k_max + 1))
    if phi_sum * N > _WITNESS_WORK_BUDGET:
        raise ResourceError(
            f"witness scan needs ~{phi_sum * N} operations; shrink k_max or N"
        )
    fv = np.asarray(f_values, dtype=np.complex128)
    n_idx = np.arange(1, N + 1, dtype=np.int64)
    best: WitnessResult | None = None
    for k in range(1, k_max + 1):
        res = n_idx % k
        for chi in enumerate_characters(k):
            prefix = np.cumsum(chi.value_table()[res] * fv[1 : N + 1])
            mags = np.abs(prefix)
            j = int(np.argmax(mags))
            if best is None or mags[j] > best.magnitude:
                best = WitnessResult(
                    k=k, chi=chi, u=j + 1,
                    value=complex(prefix[j]), magnitude=float(mags[j]),
                )
    return best
