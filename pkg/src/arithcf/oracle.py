"""Brute-force reference implementations for tests.

Nothing here calls into the rest of the package.
"""

from math import gcd

from .errors import UsageError

__all__ = [
    "subset_gcds",
    "brute_g",
    "brute_nathanson_phi",
    "brute_divisor_sum",
    "brute_convolution",
    "brute_phi",
    "brute_mobius",
    "brute_jordan",
    "brute_unitary_phi",
]

SUBSET_LIMIT = 22


def subset_gcds(n):
    """gcd of every subset of {1..n}, indexed by bitmask (empty set -> 0).

    Adding element x to the subsets already listed doubles the list, and the
    gcd of A ∪ {x} is gcd(gcd(A), x).
    """
    gcds = [0]
    for x in range(1, n + 1):
        gcds += [gcd(g, x) for g in gcds]
    return gcds


def brute_g(n):
    """Count nonempty A ⊆ {1..n} with gcd(A) = 1."""
    if not 1 <= n <= SUBSET_LIMIT:
        raise UsageError(f"brute_g needs 1 <= n <= {SUBSET_LIMIT}, got {n}")
    return subset_gcds(n).count(1)


def brute_nathanson_phi(n):
    """Count nonempty A ⊆ {1..n} with gcd(gcd(A), n) = 1."""
    if not 2 <= n <= SUBSET_LIMIT:
        raise UsageError(f"brute_nathanson_phi needs 2 <= n <= {SUBSET_LIMIT}, got {n}")
    return sum(1 for g in subset_gcds(n) if g and gcd(g, n) == 1)


def brute_divisor_sum(n, k):
    if not 1 <= n <= 10**6:
        raise UsageError("brute_divisor_sum needs 1 <= n <= 10**6")
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def brute_convolution(f, g, n):
    """(f ∗ g)(n) = Σ_{d|n} f(d) g(n/d) by trial division."""
    if not 1 <= n <= 10**6:
        raise UsageError("brute_convolution needs 1 <= n <= 10**6")
    return sum(f(d) * g(n // d) for d in range(1, n + 1) if n % d == 0)


def brute_phi(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def brute_mobius(n):
    sign = 1
    p = 2
    while n > 1:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    return sign


def brute_jordan(k, n):
    """Number of k-tuples mod n whose entries share no factor with n."""
    count = 0

    def rec(depth, g):
        nonlocal count
        if depth == k:
            count += g == 1
            return
        for a in range(n):
            rec(depth + 1, gcd(g, a))

    rec(0, n)
    return count


def brute_unitary_phi(n):
    """Σ over unitary divisors d of n of (-1)^ω(d) · n/d."""
    total = 0
    for d in range(1, n + 1):
        if n % d or gcd(d, n // d) != 1:
            continue
        omega = sum(1 for p in range(2, d + 1) if d % p == 0 and all(p % r for r in range(2, p)))
        total += (-1) ** omega * (n // d)
    return total
