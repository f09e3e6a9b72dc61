"""Exact and modular evaluation of the arithmetic functions.

Function tags are short strings:

=====================  =====================================================
``mobius``             Möbius function
``sigma``/``sigma<k>`` divisor power sum σ_k (``sigma`` is σ_1)
``phi``                Euler totient
``jordan<k>``          Jordan totient J_k, k odd and at least 3
``unitary_phi``        unitary totient φ*, product of (p^a - 1)
``sigma_conv_phi``     Dirichlet convolution σ∗φ
``nathanson_phi``      Σ_{d|n} μ(d) 2^{n/d}
``half_nathanson_phi`` the above halved (``half_phi`` is accepted too)
``nathanson_g``        Σ_{d<=n} μ(d) (2^{⌊n/d⌋} - 1)
``tau``                Ramanujan τ (exact through the Δ expansion; modular
                       through the classical congruences)
``eis<w>``             n-th coefficient of the normalized Eisenstein series
                       E_w, w in {4, 6, 8, 10, 14}
=====================  =====================================================
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod

from . import config
from .errors import DomainError, ResourceError, UnsupportedCongruenceError, UsageError
from .primes import certification, factor_with_spf, factorize, is_prime, smallest_prime_factors

__all__ = [
    "EISENSTEIN_SCALE",
    "TAU_MODULI",
    "FactoredInteger",
    "ModulusContext",
    "parse_fn",
    "mobius",
    "sigma_k",
    "euler_phi",
    "jordan_totient",
    "unitary_phi",
    "sigma_conv_phi",
    "nathanson_phi",
    "half_nathanson_phi",
    "nathanson_g",
    "evaluate",
    "mod_eval",
    "sieve_range",
]

# E_w = 1 + c_w Σ σ_{w-1}(n) q^n
EISENSTEIN_SCALE = {4: 240, 6: -504, 8: 480, 10: -264, 14: -24}
TAU_MODULI = (5, 7, 8, 9, 691)

# exact 2**n beyond this exponent is refused
_EXACT_POW2_LIMIT = 1 << 22


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"FactoredInteger needs n >= 1, got {self.n}")
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise DomainError("primes must be strictly increasing")
            if e < 1:
                raise DomainError(f"exponent of {p} must be >= 1")
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
            last = p
        if prod(p**e for p, e in self.factors) != self.n:
            raise DomainError(f"factors do not multiply to {self.n}")

    @classmethod
    def of(cls, n: int) -> FactoredInteger:
        if n < 1:
            raise DomainError(f"expected a positive integer, got {n}")
        return cls(n, tuple(factorize(n)))

    @classmethod
    def from_factors(cls, factors) -> FactoredInteger:
        merged: dict[int, int] = {}
        for p, e in factors:
            merged[p] = merged.get(p, 0) + e
        items = tuple(sorted(merged.items()))
        return cls(prod(p**e for p, e in items), items)

    @property
    def certification(self) -> str:
        if any(certification(p) == "probabilistic" for p, _ in self.factors):
            return "probabilistic"
        return "deterministic"

    def __int__(self):
        return self.n


@dataclass(frozen=True)
class ModulusContext:
    m: int
    k_of_m: int | None = None

    def __post_init__(self):
        if self.m < 2:
            raise DomainError(f"modulus must be >= 2, got {self.m}")
        if self.k_of_m is not None and self.k_of_m < 1:
            raise DomainError(f"K(m) must be >= 1, got {self.k_of_m}")


_TAG_RE = re.compile(r"^(sigma|jordan|eis)_?(\d+)$")
_PLAIN = {
    "mobius", "phi", "unitary_phi", "sigma_conv_phi", "nathanson_phi",
    "half_nathanson_phi", "nathanson_g", "tau",
}
_ALIASES = {"sigma": ("sigma", 1), "half_phi": ("half_nathanson_phi", None),
            "tau_mod": ("tau", None), "euler_phi": ("phi", None)}


def parse_fn(tag: str, order: int | None = None) -> tuple[str, int | None]:
    """Normalize a function tag into ``(name, order)``.

    ``order`` supplies k for ``sigma_k``/``jordan`` or the weight for ``eis``
    when it is not embedded in the tag.
    """
    tag = tag.strip().lower()
    if tag in ("sigma_k", "jordan", "eis"):
        if order is None:
            raise UsageError(f"{tag} needs an order (e.g. --k)")
        name, k = tag.removesuffix("_k"), order
    elif tag in _ALIASES:
        name, k = _ALIASES[tag]
    elif tag in _PLAIN:
        name, k = tag, None
    else:
        match = _TAG_RE.match(tag)
        if not match:
            raise UsageError(f"unknown function {tag!r}")
        name, k = match.group(1), int(match.group(2))
    if name == "sigma" and k < 0:
        raise DomainError("sigma_k needs k >= 0")
    if name == "jordan" and (k < 3 or k % 2 == 0):
        raise DomainError(f"jordan totient needs odd k >= 3, got {k}")
    if name == "eis" and k not in EISENSTEIN_SCALE:
        raise DomainError(f"Eisenstein weight must be one of {sorted(EISENSTEIN_SCALE)}, got {k}")
    return name, k


def _pp(name, k, p, e, m):
    """Value at the prime power p**e, reduced mod m when m is given."""
    if m:
        def pw(b, x):
            return pow(b, x, m)
    else:
        def pw(b, x):
            return b**x

    if name == "sigma":
        t = pw(p, k)
        total = cur = 1
        for _ in range(e):
            cur = cur * t % m if m else cur * t
            total += cur
    elif name == "phi":
        total = pw(p, e - 1) * (p - 1)
    elif name == "jordan":
        total = pw(p, k * (e - 1)) * (pw(p, k) - 1)
    elif name == "unitary_phi":
        total = pw(p, e) - 1
    elif name == "sigma_conv_phi":
        # Σ_{i=0}^{e} σ(p^i) φ(p^{e-i})
        sig = [1]
        for i in range(1, e + 1):
            sig.append(sig[-1] + pw(p, i))
        total = sig[e]
        for i in range(e):
            total += sig[i] * pw(p, e - i - 1) * (p - 1)
    elif name == "mobius":
        total = -1 if e == 1 else 0
    else:
        raise AssertionError(name)
    return total % m if m else total


_MULTIPLICATIVE = {"sigma", "phi", "jordan", "unitary_phi", "sigma_conv_phi", "mobius"}


def _multiplicative(name, k, factors, m=None):
    acc = 1
    for p, e in factors:
        acc *= _pp(name, k, p, e, m)
        if m:
            acc %= m
    return acc % m if m else acc


def _nathanson_phi(n, factors, m=None):
    # sum over squarefree d | n
    primes = [p for p, _ in factors]
    total = 0
    for mask in range(1 << len(primes)):
        d = 1
        bits = 0
        for i, p in enumerate(primes):
            if mask >> i & 1:
                d *= p
                bits += 1
        if m:
            term = pow(2, n // d, m)
        else:
            if n // d > _EXACT_POW2_LIMIT:
                raise ResourceError(f"exact 2**{n // d} refused; pass a modulus")
            term = 1 << (n // d)
        total += -term if bits & 1 else term
    return total % m if m else total


def _tau_congruence(n, factors, m):
    if m == 5:
        return n * _multiplicative("sigma", 1, factors, 5) % 5
    if m == 7:
        return n * _multiplicative("sigma", 3, factors, 7) % 7
    if m == 8:
        if n % 2 == 0:
            raise DomainError("the mod 8 congruence for tau only holds for odd n")
        return _multiplicative("sigma", 1, factors, 8)
    if m == 9:
        return n * n * _multiplicative("sigma", 1, factors, 9) % 9
    if m == 691:
        return _multiplicative("sigma", 11, factors, 691)
    raise UnsupportedCongruenceError(
        f"tau mod {m} has no congruence available; supported moduli {TAU_MODULI}"
    )


# ---------------------------------------------------------------- Möbius / Mertens

_mu_table: list[int] = [0, 1]
_mertens_table: list[int] = [0, 1]


def _mobius_sieve(limit):
    mu = [1] * (limit + 1)
    mu[0] = 0
    flags = bytearray([1]) * (limit + 1)
    for p in range(2, limit + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
            for j in range(p, limit + 1, p):
                mu[j] = -mu[j]
            sq = p * p
            for j in range(sq, limit + 1, sq):
                mu[j] = 0
    return mu


def _ensure_mertens(limit):
    global _mu_table, _mertens_table
    if len(_mu_table) > limit:
        return
    size = max(limit, 2 * (len(_mu_table) - 1), 1024)
    mu = _mobius_sieve(size)
    mertens = [0] * (size + 1)
    acc = 0
    for i in range(1, size + 1):
        acc += mu[i]
        mertens[i] = acc
    _mu_table, _mertens_table = mu, mertens


def _g_blocked(n, m=None):
    """Σ_{d<=n} μ(d)(2^{⌊n/d⌋} - 1), grouping d by the value of ⌊n/d⌋."""
    M = _mertens_table
    total = 0
    d = 1
    while d <= n:
        q = n // d
        hi = n // q
        weight = M[hi] - M[d - 1]
        if weight:
            total += weight * ((pow(2, q, m) if m else 1 << q) - 1)
        d = hi + 1
    return total % m if m else total


# ---------------------------------------------------------------- single values

def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    return _multiplicative("mobius", None, factorize(n))


def sigma_k(n: int, k: int = 1) -> int:
    """Σ_{d|n} d^k."""
    if n < 1:
        raise DomainError(f"sigma_k needs n >= 1, got {n}")
    if k < 0:
        raise DomainError("sigma_k needs k >= 0")
    return _multiplicative("sigma", k, factorize(n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"phi needs n >= 1, got {n}")
    return _multiplicative("phi", None, factorize(n))


def jordan_totient(k: int, n: int) -> int:
    """J_k(n) = n^k ∏_{p|n} (1 - p^{-k}); only odd k >= 3 are supported."""
    _, k = parse_fn("jordan", k)
    if n < 1:
        raise DomainError(f"jordan totient needs n >= 1, got {n}")
    return _multiplicative("jordan", k, factorize(n))


def unitary_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"unitary_phi needs n >= 1, got {n}")
    return _multiplicative("unitary_phi", None, factorize(n))


def sigma_conv_phi(n: int) -> int:
    """(σ∗φ)(n) = Σ_{d|n} σ(d) φ(n/d)."""
    if n < 1:
        raise DomainError(f"sigma_conv_phi needs n >= 1, got {n}")
    return _multiplicative("sigma_conv_phi", None, factorize(n))


def nathanson_phi(n: int) -> int:
    """Σ_{d|n} μ(d) 2^{n/d}.

    The formula is used for every n >= 1, so nathanson_phi(1) == 2 even though
    counting subsets of {1} would give 1.
    """
    if n < 1:
        raise DomainError(f"nathanson_phi needs n >= 1, got {n}")
    return _nathanson_phi(n, factorize(n))


def half_nathanson_phi(n: int) -> int:
    return nathanson_phi(n) // 2


def nathanson_g(n: int) -> int:
    """Number of nonempty subsets of {1..n} with gcd 1, by Möbius inversion."""
    if n < 1:
        raise DomainError(f"nathanson_g needs n >= 1, got {n}")
    if n > config.SIEVE_BUDGET:
        raise ResourceError(f"nathanson_g({n}) needs a Möbius table beyond the sieve budget")
    _ensure_mertens(n)
    return _g_blocked(n)


def evaluate(f: str, n: int, order: int | None = None) -> int:
    """Exact value of any tagged function at n."""
    name, k = parse_fn(f, order)
    if n < 1:
        raise DomainError(f"{f} needs n >= 1, got {n}")
    if name == "tau":
        from .qseries import delta_expansion

        return delta_expansion(n)[n - 1]
    if name == "eis":
        return EISENSTEIN_SCALE[k] * sigma_k(n, k - 1)
    if name == "nathanson_g":
        return nathanson_g(n)
    if name == "nathanson_phi":
        return nathanson_phi(n)
    if name == "half_nathanson_phi":
        return half_nathanson_phi(n)
    return _multiplicative(name, k, factorize(n))


def _as_factored(x) -> FactoredInteger:
    if isinstance(x, FactoredInteger):
        return x
    return FactoredInteger.of(int(x))


def _as_ctx(ctx) -> ModulusContext:
    if isinstance(ctx, ModulusContext):
        return ctx
    return ModulusContext(int(ctx))


def mod_eval(f: str, x, ctx, order: int | None = None) -> int:
    """Residue of f(x) in [0, m), using the known factorization of x.

    ``x`` may be a :class:`FactoredInteger` (required for integers too large
    to factor) or a plain int.  ``tau`` is evaluated through the congruences
    τ(n) ≡ nσ(n) (5), nσ_3(n) (7), σ(n) (8, odd n), n²σ(n) (9), σ_11(n) (691)
    and is therefore limited to those moduli.
    """
    name, k = parse_fn(f, order)
    x = _as_factored(x)
    m = _as_ctx(ctx).m
    return _mod_eval(name, k, x.n, x.factors, m)


def _mod_eval(name, k, n, factors, m):
    if name in _MULTIPLICATIVE:
        return _multiplicative(name, k, factors, m)
    if name == "nathanson_phi":
        return _nathanson_phi(n, factors, m)
    if name == "half_nathanson_phi":
        return _nathanson_phi(n, factors, 2 * m) // 2
    if name == "tau":
        return _tau_congruence(n, factors, m)
    if name == "eis":
        return EISENSTEIN_SCALE[k] * _multiplicative("sigma", k - 1, factors, m) % m
    if name == "nathanson_g":
        if n > config.SIEVE_BUDGET:
            raise ResourceError(f"nathanson_g at n={n} exceeds the sieve budget")
        _ensure_mertens(n)
        return _g_blocked(n, m)
    raise AssertionError(name)


# ---------------------------------------------------------------- bulk

def sieve_range(f: str, lo: int, hi: int, ctx=None, order: int | None = None) -> list[int]:
    """Values (or residues when ``ctx`` is given) of f at lo..hi inclusive."""
    name, k = parse_fn(f, order)
    if lo < 1 or hi < lo:
        raise UsageError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    # tables are indexed up to hi, so the budget bounds hi itself
    if hi > config.SIEVE_BUDGET:
        raise ResourceError(f"range {lo}..{hi} exceeds the sieve budget ({config.SIEVE_BUDGET})")
    m = _as_ctx(ctx).m if ctx is not None else None

    if name == "tau":
        # the Δ expansion is exact for every modulus, unlike the congruences
        from .qseries import delta_expansion

        values = delta_expansion(hi)[lo - 1 : hi]
        return [v % m for v in values] if m else values
    if name == "nathanson_g":
        _ensure_mertens(hi)
        return [_g_blocked(n, m) for n in range(lo, hi + 1)]
    if name == "mobius":
        _ensure_mertens(hi)
        mu = _mu_table
        return [mu[n] % m if m else mu[n] for n in range(lo, hi + 1)]

    spf = smallest_prime_factors(hi)
    out = []
    for n in range(lo, hi + 1):
        factors = factor_with_spf(n, spf)
        if name in _MULTIPLICATIVE:
            out.append(_multiplicative(name, k, factors, m))
        elif name == "eis":
            s = _multiplicative("sigma", k - 1, factors, m)
            out.append(EISENSTEIN_SCALE[k] * s % m if m else EISENSTEIN_SCALE[k] * s)
        elif name == "nathanson_phi":
            out.append(_nathanson_phi(n, factors, m))
        elif name == "half_nathanson_phi":
            out.append(_nathanson_phi(n, factors, 2 * m) // 2 if m else _nathanson_phi(n, factors) // 2)
        else:
            raise AssertionError(name)
    return out
