"""Certified continued fractions [0; d_1, d_2, ...] with d_n = 1 + (⌊nθ⌋ mod k).

θ = Σ digit_r 10^(-r) is never materialized as a float.  It is held as the
closed rational interval [S/10^D, (S+1)/10^D], which contains θ because every
remaining digit is at most 9, and D is raised until ⌊n·low⌋ and ⌊n·high⌋
agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .errors import DomainError, ExtendQuotientsError, PrecisionCeilingError, UsageError
from .streams import DigitStream

__all__ = [
    "ThetaEnclosure",
    "ContinuedFraction",
    "floor_n_theta",
    "abd_quotients",
    "AlphaDecimals",
    "alpha_decimals",
]


class ThetaEnclosure:
    def __init__(self, stream, ceiling: int | None = None):
        # anything with prefix(n) works as a digit source
        self.stream = stream if hasattr(stream, "prefix") else DigitStream(stream)
        self.ceiling = config.PRECISION_CEILING if ceiling is None else ceiling
        self.D = 0
        # low = S / 10^D
        self.S = 0

    @property
    def low(self) -> Fraction:
        return Fraction(self.S, 10**self.D)

    @property
    def width(self) -> Fraction:
        return Fraction(1, 10**self.D)

    @property
    def high(self) -> Fraction:
        return Fraction(self.S + 1, 10**self.D)

    def refine_to(self, D: int) -> None:
        if D <= self.D:
            return
        if D > self.ceiling:
            raise PrecisionCeilingError(None, D)
        digits = self.stream.prefix(D)[self.D :]
        S = self.S
        for d in digits:
            S = 10 * S + d
        self.S, self.D = S, D

    def __repr__(self):
        return f"ThetaEnclosure({self.stream!r}, D={self.D})"


def floor_n_theta(enc: ThetaEnclosure, n: int, step: int = 4) -> tuple[int, int]:
    """⌊nθ⌋ and the precision D at which it became unambiguous.

    The precision grows as D <- max(D + step, ⌈log10 n⌉ + step) until both
    ends of the enclosure give the same floor.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if step < 1:
        raise UsageError("step must be >= 1")
    ceil_log10 = len(str(n - 1)) if n > 1 else 0
    while True:
        if enc.D > 0:
            scale = 10**enc.D
            lo = n * enc.S // scale
            if lo == n * (enc.S + 1) // scale:
                return lo, enc.D
        target = max(enc.D + step, ceil_log10 + step)
        if target > enc.ceiling:
            if enc.D < enc.ceiling:
                target = enc.ceiling
            else:
                raise PrecisionCeilingError(n, enc.D)
        enc.refine_to(target)


@dataclass
class ContinuedFraction:
    """[0; d_1, ..., d_n] with convergents p_i/q_i.

    ``p`` and ``q`` include the seeds: p = [1, 0, p_1, ...], q = [0, 1, q_1, ...],
    so p_i is ``p[i + 1]``.  ``finite`` marks a complete expansion rather than
    a prefix of an infinite one.
    """

    k: int | None = None
    quotients: list[int] = field(default_factory=list)
    p: list[int] = field(default_factory=lambda: [1, 0])
    q: list[int] = field(default_factory=lambda: [0, 1])
    finite: bool = False

    @classmethod
    def from_quotients(cls, quotients, k=None, finite=True) -> ContinuedFraction:
        cf = cls(k=k, finite=finite)
        for d in quotients:
            cf.append(d)
        return cf

    def append(self, d: int) -> None:
        if d < 1 or (self.k is not None and d > self.k):
            raise DomainError(f"partial quotient {d} outside [1, {self.k}]")
        self.quotients.append(d)
        self.p.append(d * self.p[-1] + self.p[-2])
        self.q.append(d * self.q[-1] + self.q[-2])

    def __len__(self):
        return len(self.quotients)

    def p_n(self, i: int) -> int:
        return self.p[i + 1]

    def q_n(self, i: int) -> int:
        return self.q[i + 1]

    def convergent(self, i: int) -> Fraction:
        return Fraction(self.p_n(i), self.q_n(i))

    @property
    def convergents(self) -> list[Fraction]:
        return [self.convergent(i) for i in range(1, len(self) + 1)]


def abd_quotients(enc: ThetaEnclosure, k: int, count: int, step: int = 4,
                  max_k: int | None = None) -> ContinuedFraction:
    """First ``count`` partial quotients d_n = 1 + (⌊nθ⌋ mod k)."""
    max_k = config.MAX_CF_K if max_k is None else max_k
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if k > max_k:
        raise DomainError(f"k={k} exceeds the configured bound {max_k}")
    if count < 1:
        raise UsageError(f"count must be >= 1, got {count}")
    cf = ContinuedFraction(k=k)
    for n in range(1, count + 1):
        value, _ = floor_n_theta(enc, n, step)
        cf.append(1 + value % k)
    return cf


@dataclass(frozen=True)
class AlphaDecimals:
    text: str
    digits: int
    n: int
    p_n: int
    q_n: int
    q_next: int | None
    # 1/(q_n q_{n+1}) < 10^(-bound_exponent); None for an exact value
    bound_exponent: int | None

    def certificate(self):
        return {"n": self.n, "bound_exponent": self.bound_exponent}


def _truncate(x: Fraction, digits: int) -> str:
    scaled = x.numerator * 10**digits // x.denominator
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}." + str(frac).zfill(digits) if digits else f"{whole}"


def _fib_index(threshold: int) -> int:
    # smallest n with F_{n+1} F_{n+2} > threshold; q_n >= F_{n+1} always
    a, b, n = 1, 2, 1
    while a * b <= threshold:
        a, b, n = b, a + b, n + 1
    return n


def alpha_decimals(cf: ContinuedFraction, digits: int) -> AlphaDecimals:
    """Decimal expansion of α = [0; d_1, d_2, ...] truncated to ``digits`` places.

    For an infinite expansion α lies strictly between consecutive convergents,
    so the digits are emitted only when both p_n/q_n and p_{n+1}/q_{n+1}
    truncate identically and 1/(q_n q_{n+1}) < 10^(-digits-2).  The smallest
    such n is used, which makes the output independent of how many extra
    quotients were computed.
    """
    if digits < 1:
        raise UsageError(f"digits must be >= 1, got {digits}")
    if len(cf) == 0:
        raise ExtendQuotientsError(0, 1)
    if cf.finite:
        n = len(cf)
        value = cf.convergent(n)
        return AlphaDecimals(_truncate(value, digits), digits, n, cf.p_n(n), cf.q_n(n), None, None)

    threshold = 10 ** (digits + 2)
    for n in range(1, len(cf)):
        qq = cf.q_n(n) * cf.q_n(n + 1)
        if qq <= threshold:
            continue
        a = _truncate(cf.convergent(n), digits)
        b = _truncate(cf.convergent(n + 1), digits)
        if a != b:
            continue
        exponent = len(str(qq)) - 1
        if qq == 10**exponent:
            exponent -= 1
        return AlphaDecimals(a, digits, n, cf.p_n(n), cf.q_n(n), cf.q_n(n + 1), exponent)
    raise ExtendQuotientsError(len(cf), max(_fib_index(threshold) + 1, len(cf) + 1))
