"""Exact mod-1 polynomial phase evaluation and rational approximation.

Fractional parts of phase coefficients are carried as 128-bit fixed point
(`FracFixed`), so {a_j n^j} is computed exactly for the stored
coefficient: per-term error over sums of length 10^6 stays far below
anything float64 accumulation could introduce, and cancellation in the
sums can be trusted.  Irrational coefficients enter through 40-decimal-
digit literals, which keeps every experiment reproducible bit for bit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParameterError

FRAC_BITS = 128
SCALE = 1 << FRAC_BITS
_MASK = SCALE - 1

MAX_ARG = 1 << 40
_ARG_POW_LIMIT = 1 << 100

# 40-decimal-digit literals; only the fractional part survives under e(.)
CONSTANT_TOKENS = {
    "sqrt:2": "1.4142135623730950488016887242096980785697",
    "sqrt:3": "1.7320508075688772935274463415058723669428",
    "sqrt:5": "2.2360679774997896964091736687312762354406",
    "golden": "1.6180339887498948482045868343656381177203",
    "pi": "3.1415926535897932384626433832795028841972",
}


@dataclass(frozen=True)
class FracFixed:
    """A number in [0, 1) stored as raw / 2^128.

    Addition and multiplication by an integer wrap mod 1 exactly.
    """

    raw: int

    def __post_init__(self):
        if not (0 <= self.raw < SCALE):
            raise ParameterError("FracFixed raw value out of range")

    @classmethod
    def from_fraction(cls, value) -> "FracFixed":
        """Fractional part of an exact rational, floor-truncated to 128 bits."""
        fr = Fraction(value)
        return cls((fr.numerator * SCALE // fr.denominator) % SCALE)

    @classmethod
    def from_decimal(cls, text: str) -> "FracFixed":
        """Exact conversion of a decimal literal like '-0.3183' or '2.5'."""
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+(?:\.\d*)?", text):
            raise ParameterError(f"not a decimal literal: {text!r}")
        return cls.from_fraction(Fraction(text))

    @classmethod
    def coerce(cls, value) -> "FracFixed":
        if isinstance(value, FracFixed):
            return value
        if isinstance(value, str):
            if value in CONSTANT_TOKENS:
                return cls.from_decimal(CONSTANT_TOKENS[value])
            return cls.from_decimal(value)
        return cls.from_fraction(Fraction(value))

    def as_fraction(self) -> Fraction:
        return Fraction(self.raw, SCALE)

    def to_float(self) -> float:
        return self.raw / SCALE

    def __add__(self, other: "FracFixed") -> "FracFixed":
        return FracFixed((self.raw + other.raw) & _MASK)

    def mul_int(self, n: int) -> "FracFixed":
        return FracFixed((self.raw * n) % SCALE)


@dataclass(frozen=True)
class PolyPhase:
    """F(x) = a_d x^d + ... + a_1 x with coefficients stored mod 1.

    coeffs[j] is the coefficient of x^(j+1); integer parts are irrelevant
    under e(F(n)) for integer n, so only fractional parts are kept.
    """

    coeffs: tuple[FracFixed, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ParameterError("PolyPhase needs degree >= 1")

    @classmethod
    def from_coeffs(cls, values) -> "PolyPhase":
        return cls(tuple(FracFixed.coerce(v) for v in values))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.raw == 0 for c in self.coeffs)


ZERO_PHASE = PolyPhase.from_coeffs([0])


def _check_arg(F: PolyPhase, n: int) -> None:
    if not (1 <= n <= MAX_ARG):
        raise ParameterError(f"phase argument must be in [1, 2^40], got {n}")
    d = F.degree
    if d >= 2 and n ** (d - 1) >= _ARG_POW_LIMIT:
        raise ParameterError(
            f"n^(d-1) = {n}^{d - 1} >= 2^100 exceeds the fixed-point error budget"
        )


def frac_eval(F: PolyPhase, n: int) -> FracFixed:
    """{F(n)}, each term {a_j n^j} by j successive exact multiplications mod 1."""
    _check_arg(F, n)
    acc = 0
    for j, c in enumerate(F.coeffs, start=1):
        t = c.raw
        for _ in range(j):
            t = t * n % SCALE
        acc = (acc + t) & _MASK
    return FracFixed(acc)


def phase_exp(F: PolyPhase, n: int) -> complex:
    """e(F(n)) = exp(2 pi i {F(n)}); modulus 1 up to float rounding."""
    return complex(np.exp(2j * np.pi * frac_eval(F, n).to_float()))


def frac_raw_values(F: PolyPhase, N: int) -> list[int]:
    """Raw fixed-point {F(n)} for n = 0..N.

    Values advance through a degree-d forward-difference table, exact
    over Z/2^128: d big-int additions per n, no drift.
    """
    _check_arg(F, max(1, N))
    d = F.degree
    diffs = [0] + [frac_eval(F, n).raw for n in range(1, d + 1)]
    for level in range(1, d + 1):
        for t in range(d, level - 1, -1):
            diffs[t] = (diffs[t] - diffs[t - 1]) % SCALE
    out = [0] * (N + 1)
    for n in range(N + 1):
        out[n] = diffs[0]
        for t in range(d):
            diffs[t] = (diffs[t] + diffs[t + 1]) & _MASK
    return out


def frac_values(F: PolyPhase, N: int) -> np.ndarray:
    """{F(n)} for n = 0..N as float64 (rounded view of frac_raw_values)."""
    raws = frac_raw_values(F, N)
    return np.asarray([r / SCALE for r in raws], dtype=np.float64)


def phase_values(F: PolyPhase, N: int) -> np.ndarray:
    """e(F(n)) for n = 0..N as complex128 (index 0 is padding with value 1)."""
    return np.exp(2j * np.pi * frac_values(F, N))


@dataclass(frozen=True)
class RationalApprox:
    """A certified Dirichlet approximation: q <= R and |alpha - a/q| <= 1/(qR)."""

    ell: int
    a: int
    q: int
    R: float
    err: float
    residual_beta: float
    err_exact: Fraction = field(repr=False, default=Fraction(0))
    R_exact: Fraction = field(repr=False, default=Fraction(0))


def _to_fraction(alpha) -> Fraction:
    if isinstance(alpha, FracFixed):
        return alpha.as_fraction()
    if isinstance(alpha, str):
        return FracFixed.coerce(alpha).as_fraction()
    return Fraction(alpha)


def dirichlet_approx(alpha, R, ell: int = 1) -> RationalApprox:
    """Last continued-fraction convergent a/q of alpha with q <= R.

    The next denominator exceeds R, which certifies |alpha - a/q| <= 1/(qR);
    if alpha is rational with denominator <= R the error is exactly 0.
    """
    R_exact = Fraction(R)
    if R_exact < 2:
        raise ParameterError(f"dirichlet_approx needs R >= 2, got {R}")
    x = _to_fraction(alpha)
    a0 = math.floor(x)
    p0, q0 = 1, 0
    p1, q1 = a0, 1
    num, den = (x - a0).numerator, (x - a0).denominator
    while num != 0:
        a_i = den // num
        p2, q2 = a_i * p1 + p0, a_i * q1 + q0
        if q2 > R_exact:
            break
        p0, q0, p1, q1 = p1, q1, p2, q2
        num, den = den - a_i * num, num
    a, q = p1, q1
    g = math.gcd(a, q)
    if g > 1:
        a, q = a // g, q // g
    err_exact = abs(x - Fraction(a, q))
    beta = x - Fraction(a, q)
    return RationalApprox(
        ell=ell,
        a=int(a),
        q=int(q),
        R=float(R),
        err=float(err_exact),
        residual_beta=float(beta),
        err_exact=err_exact,
        R_exact=R_exact,
    )


@dataclass(frozen=True)
class ArcClassification:
    """Per-coefficient approximation certificates plus the arc label."""

    approxes: tuple[RationalApprox, ...]
    label: str
    q_threshold: float


def classify_arc(F: PolyPhase, N: int, B: float) -> ArcClassification:
    """Approximate each coefficient with radius R = N^ell / (log N)^B.

    The label is "minor" when some denominator reaches (log N)^B, else
    "major".  All d certificates are returned; callers pick the index
    they need.
    """
    if N < 16:
        raise ParameterError(f"classify_arc needs N >= 16, got {N}")
    if B <= 0:
        raise ParameterError(f"classify_arc needs B > 0, got {B}")
    thresh = math.log(N) ** B
    approxes = []
    for ell in range(1, F.degree + 1):
        R = float(N) ** ell / thresh
        if R < 2:
            raise ParameterError(
                f"approximation radius N^{ell}/(log N)^B = {R:.3g} < 2; lower B"
            )
        approxes.append(dirichlet_approx(F.coeffs[ell - 1], R, ell=ell))
    label = "minor" if any(ap.q >= thresh for ap in approxes) else "major"
    return ArcClassification(approxes=tuple(approxes), label=label, q_threshold=thresh)


_TERM_RE = re.compile(
    r"""^
    (?:(?P<coef>[^x]+)\*)?          # optional coefficient followed by '*'
    x
    (?:\^(?P<pow>\d+))?             # optional power
    (?:/(?P<div>\d+))?              # optional integer divisor
    $""",
    re.VERBOSE,
)


def _coef_fraction(text: str) -> Fraction:
    if text in CONSTANT_TOKENS:
        return Fraction(CONSTANT_TOKENS[text])
    if re.fullmatch(r"[+-]?\d+/\d+", text):
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    if not re.fullmatch(r"[+-]?\d+(?:\.\d*)?", text):
        raise ParameterError(f"cannot parse phase coefficient {text!r}")
    return Fraction(text)


def parse_phase(expr: str) -> PolyPhase:
    """Parse 'sqrt:2*x^2+golden*x', 'x/2', '0.25*x^3-1/3*x', ...

    Coefficients are decimal literals, fractions a/b, or the tokens
    sqrt:2, sqrt:3, sqrt:5, golden, pi.  Arithmetic on each coefficient
    happens at exact-rational precision and is converted to 128-bit fixed
    point once, so parsing is deterministic across platforms.
    """
    s = expr.replace(" ", "")
    if not s:
        raise ParameterError("empty phase expression")
    pieces = []
    term = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "*^/:+-":
            pieces.append(term)
            term = ch
        else:
            term += ch
    pieces.append(term)
    acc: dict[int, Fraction] = {}
    for piece in pieces:
        if not piece:
            continue
        sign = 1
        if piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:]
        m = _TERM_RE.match(piece)
        if not m:
            raise ParameterError(f"cannot parse phase term {piece!r}")
        coef = _coef_fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        power = int(m.group("pow") or 1)
        if m.group("div"):
            div = int(m.group("div"))
            if div < 1:
                raise ParameterError("phase divisor must be a positive integer")
            coef /= div
        acc[power] = acc.get(power, Fraction(0)) + sign * coef
    d = max(acc)
    return PolyPhase(
        tuple(FracFixed.from_fraction(acc.get(j, Fraction(0)))
              for j in range(1, d + 1))
    )
