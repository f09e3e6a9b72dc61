"""Primality, small-prime sieves and factorization."""

from __future__ import annotations

import random

from .config import MR_ROUNDS

# Bases that make Miller-Rabin deterministic for every n < 2**64.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_LIMIT = 1 << 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int | None = None) -> bool:
    """Miller-Rabin test.

    Exact below 2**64.  Above that, the fixed bases are followed by
    ``rounds`` extra random bases drawn from a generator seeded by ``n``, so
    the answer for a given n never changes between runs.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _DETERMINISTIC_BASES:
        if not _strong_probable_prime(n, a, d, s):
            return False
    if n < DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    for _ in range(MR_ROUNDS if rounds is None else rounds):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1), d, s):
            return False
    return True


def certification(n: int) -> str:
    """How strongly ``is_prime(n) == True`` is backed."""
    return "deterministic" if n < DETERMINISTIC_LIMIT else "probabilistic"


def smallest_prime_factors(limit: int) -> list[int]:
    """spf[i] = least prime dividing i, for 2 <= i <= limit (spf[0] = spf[1] = 0)."""
    spf = list(range(limit + 1))
    if limit >= 0:
        spf[0] = 0
    if limit >= 1:
        spf[1] = 0
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    i = 2
    while i * i <= limit:
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
        i += 1
    return [i for i, f in enumerate(flags) if f]


def factor_with_spf(n: int, spf: list[int]) -> list[tuple[int, int]]:
    out = []
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


_TRIAL_LIMIT = 1 << 16


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as a sorted list of (prime, exponent)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n and p < _TRIAL_LIMIT:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n == 1:
        return out
    if n < p * p or is_prime(n):
        out.append((n, 1))
        return out
    # large composite cofactor
    from sympy import factorint

    out.extend(sorted(factorint(n).items()))
    return sorted(out)
