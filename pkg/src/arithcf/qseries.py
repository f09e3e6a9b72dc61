"""Truncated integer power series, the Δ expansion and Eisenstein coefficients."""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .arith import EISENSTEIN_SCALE, TAU_MODULI, sieve_range, sigma_k
from .errors import DomainError, ResourceError, UsageError

__all__ = [
    "TruncatedIntSeries",
    "series_mul",
    "series_pow",
    "euler_product",
    "delta_expansion",
    "eisenstein_coeff",
    "eisenstein_series",
    "CongruenceReport",
    "verify_tau_congruences",
]

# Below this many coefficients products use schoolbook convolution.  Above
# it both operands are packed into one big integer each (Kronecker
# substitution) and multiplied with CPython's Karatsuba; the result is
# exact either way.
SCHOOLBOOK_THRESHOLD = 48


@dataclass(frozen=True)
class TruncatedIntSeries:
    """Σ coeffs[i] q^i modulo q^(N+1)."""

    coeffs: tuple[int, ...]
    truncation_order: int

    def __post_init__(self):
        if self.truncation_order < 0:
            raise UsageError("truncation order must be >= 0")
        if len(self.coeffs) != self.truncation_order + 1:
            raise UsageError(
                f"expected {self.truncation_order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs, order: int) -> TruncatedIntSeries:
        """Truncate or zero-pad ``coeffs`` to ``order``."""
        c = list(coeffs[: order + 1])
        c.extend([0] * (order + 1 - len(c)))
        return cls(tuple(c), order)

    @classmethod
    def one(cls, order: int) -> TruncatedIntSeries:
        return cls.from_coeffs([1], order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other):
        if not isinstance(other, TruncatedIntSeries):
            return NotImplemented
        if other.truncation_order != self.truncation_order:
            raise UsageError(
                f"truncation orders differ: {self.truncation_order} vs {other.truncation_order}"
            )
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedIntSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.truncation_order
        )

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedIntSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.truncation_order
        )

    def __neg__(self):
        return TruncatedIntSeries(tuple(-a for a in self.coeffs), self.truncation_order)

    def __mul__(self, other):
        return series_mul(self, other)

    def __pow__(self, e):
        return series_pow(self, e)

    def shift(self, k: int) -> TruncatedIntSeries:
        """Multiply by q^k (k >= 0), keeping the truncation order."""
        return TruncatedIntSeries.from_coeffs([0] * k + list(self.coeffs), self.truncation_order)


def _schoolbook(a, b, size):
    out = [0] * size
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b[: size - i]):
            out[i + j] += x * y
    return out


def _pack(coeffs, nbytes):
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a, b, size):
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if ma == 0 or mb == 0:
        return [0] * size
    bound = ma * mb * min(len(a), len(b))
    # one spare bit for the sign bias, one for safety
    nbytes = (bound.bit_length() + 2 + 7) // 8
    width = 8 * nbytes
    product = _pack(a, nbytes) * _pack(b, nbytes)
    count = len(a) + len(b) - 1
    half = 1 << (width - 1)
    # adding `half` to every slot makes each slot non-negative and carry-free
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    raw = (product + bias).to_bytes(nbytes * count, "little")
    out = [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(min(size, count))
    ]
    out.extend([0] * (size - len(out)))
    return out


def series_mul(a: TruncatedIntSeries, b: TruncatedIntSeries) -> TruncatedIntSeries:
    if a.truncation_order != b.truncation_order:
        raise UsageError(
            f"truncation orders differ: {a.truncation_order} vs {b.truncation_order}"
        )
    size = a.truncation_order + 1
    if size <= SCHOOLBOOK_THRESHOLD:
        out = _schoolbook(a.coeffs, b.coeffs, size)
    else:
        out = _kronecker(a.coeffs, b.coeffs, size)
    return TruncatedIntSeries(tuple(out), a.truncation_order)


def series_pow(a: TruncatedIntSeries, e: int) -> TruncatedIntSeries:
    """a**e by binary exponentiation (e >= 1)."""
    if e < 1:
        raise UsageError(f"series_pow needs a positive exponent, got {e}")
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def euler_product(N: int) -> TruncatedIntSeries:
    """∏_{n>=1} (1 - q^n) mod q^(N+1) via Euler's pentagonal number theorem."""
    if N < 0:
        raise UsageError("truncation order must be >= 0")
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        first = k * (3 * k - 1) // 2
        if first > N:
            break
        coeffs[first] += sign
        second = k * (3 * k + 1) // 2
        if second <= N:
            coeffs[second] += sign
        k += 1
    return TruncatedIntSeries(tuple(coeffs), N)


_tau_cache: list[int] = []


def delta_expansion(N: int) -> list[int]:
    """[τ(1), ..., τ(N)] from Δ = q ∏ (1 - q^n)^24."""
    global _tau_cache
    if N < 1:
        raise UsageError(f"delta_expansion needs N >= 1, got {N}")
    if N > config.SERIES_BUDGET:
        raise ResourceError(f"delta_expansion({N}) exceeds the series budget {config.SERIES_BUDGET}")
    if len(_tau_cache) < N:
        eta24 = series_pow(euler_product(N - 1), 24)
        _tau_cache = list(eta24.coeffs)
    return _tau_cache[:N]


def eisenstein_coeff(weight: int, n: int) -> int:
    """n-th q-coefficient of the normalized Eisenstein series of the given weight."""
    if weight not in EISENSTEIN_SCALE:
        raise DomainError(
            f"weight must be one of {sorted(EISENSTEIN_SCALE)} (weight 12 is handled by Δ)"
        )
    if n < 1:
        raise DomainError(f"eisenstein_coeff needs n >= 1, got {n}")
    return EISENSTEIN_SCALE[weight] * sigma_k(n, weight - 1)


def eisenstein_series(weight: int, N: int) -> TruncatedIntSeries:
    if weight not in EISENSTEIN_SCALE:
        raise DomainError(f"weight must be one of {sorted(EISENSTEIN_SCALE)}")
    coeffs = [1]
    if N >= 1:
        coeffs += sieve_range(f"eis{weight}", 1, N)
    return TruncatedIntSeries(tuple(coeffs), N)


@dataclass
class CongruenceReport:
    N: int
    checked: dict[int, int]
    violations: dict[int, list[tuple[int, int, int]]]
    # last (n, τ(n) mod m, rhs mod m) compared per modulus
    last: dict[int, tuple[int, int, int] | None]

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def to_dict(self):
        return {
            "N": self.N,
            "ok": self.ok,
            "moduli": [
                {
                    "m": m,
                    "checked": self.checked[m],
                    "violations": [list(v) for v in self.violations[m]],
                    "last": list(self.last[m]) if self.last[m] else None,
                }
                for m in sorted(self.checked)
            ],
        }


def verify_tau_congruences(N: int, moduli=TAU_MODULI) -> CongruenceReport:
    """Compare the exact Δ expansion against the classical τ congruences for n <= N."""
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    for m in moduli:
        if m not in TAU_MODULI:
            raise DomainError(f"no tau congruence for modulus {m}")
    tau = delta_expansion(N)
    s1 = sieve_range("sigma", 1, N)
    s3 = sieve_range("sigma3", 1, N, 7) if 7 in moduli else None
    s11 = sieve_range("sigma11", 1, N, 691) if 691 in moduli else None

    def rhs(m, n):
        if m == 5:
            return n * s1[n - 1]
        if m == 7:
            return n * s3[n - 1]
        if m == 8:
            return s1[n - 1]
        if m == 9:
            return n * n * s1[n - 1]
        return s11[n - 1]

    checked = {}
    violations = {}
    last = {}
    for m in moduli:
        bad = []
        count = 0
        sample = None
        for n in range(1, N + 1):
            if m == 8 and n % 2 == 0:
                continue
            lhs, r = tau[n - 1] % m, rhs(m, n) % m
            count += 1
            sample = (n, lhs, r)
            if lhs != r:
                bad.append(sample)
        checked[m] = count
        violations[m] = bad
        last[m] = sample
    return CongruenceReport(N, checked, violations, last)
