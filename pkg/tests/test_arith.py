import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithcf import arith, config
from arithcf.arith import (
    FactoredInteger,
    ModulusContext,
    euler_phi,
    evaluate,
    jordan_totient,
    mobius,
    mod_eval,
    nathanson_g,
    nathanson_phi,
    parse_fn,
    sieve_range,
    sigma_conv_phi,
    sigma_k,
    unitary_phi,
)
from arithcf.errors import DomainError, ResourceError, UnsupportedCongruenceError, UsageError
from arithcf.oracle import (
    brute_convolution,
    brute_divisor_sum,
    brute_g,
    brute_jordan,
    brute_mobius,
    brute_nathanson_phi,
    brute_phi,
    brute_unitary_phi,
)
from arithcf.primes import primes_up_to
from arithcf.qseries import delta_expansion


@pytest.mark.parametrize(
    "call, expected",
    [
        (lambda: mobius(1), 1),
        (lambda: mobius(4), 0),
        (lambda: mobius(6), 1),
        (lambda: sigma_k(1, 7), 1),
        (lambda: sigma_k(6, 1), 12),
        (lambda: sigma_k(2, 11), 2049),
        (lambda: euler_phi(10), 4),
        (lambda: jordan_totient(3, 2), 7),
        (lambda: unitary_phi(12), 6),
        (lambda: sigma_conv_phi(3), 6),
        (lambda: nathanson_phi(2), 2),
        (lambda: nathanson_phi(4), 12),
        (lambda: nathanson_phi(7), 126),
        (lambda: nathanson_g(1), 1),
        (lambda: nathanson_g(3), 5),
        (lambda: nathanson_g(4), 11),
    ],
)
def test_examples(call, expected):
    assert call() == expected


def test_nathanson_phi_at_one_follows_formula():
    assert nathanson_phi(1) == 2
    assert arith.half_nathanson_phi(1) == 1


@pytest.mark.parametrize("k", [1, 2, 4, -3])
def test_jordan_rejects_k(k):
    with pytest.raises(DomainError):
        jordan_totient(k, 5)


def test_sigma_negative_k_rejected():
    with pytest.raises(DomainError):
        sigma_k(5, -1)


def test_parse_fn():
    assert parse_fn("sigma") == ("sigma", 1)
    assert parse_fn("sigma11") == ("sigma", 11)
    assert parse_fn("sigma_k", 3) == ("sigma", 3)
    assert parse_fn("jordan", 5) == ("jordan", 5)
    assert parse_fn("eis14") == ("eis", 14)
    assert parse_fn("half_phi") == ("half_nathanson_phi", None)
    assert parse_fn("tau_mod") == ("tau", None)
    with pytest.raises(UsageError):
        parse_fn("carmichael")
    with pytest.raises(DomainError):
        parse_fn("eis12")
    with pytest.raises(UsageError):
        parse_fn("jordan")


# ---------------------------------------------------------------- oracles

def test_against_brute_force_small_n():
    for n in range(1, 301):
        assert mobius(n) == brute_mobius(n)
        assert euler_phi(n) == brute_phi(n)
        assert unitary_phi(n) == brute_unitary_phi(n)
        for k in (0, 1, 3, 11):
            assert sigma_k(n, k) == brute_divisor_sum(n, k)
        assert sigma_conv_phi(n) == brute_convolution(lambda d: brute_divisor_sum(d, 1), brute_phi, n)


def test_jordan_counts_tuples():
    for n in range(1, 25):
        assert jordan_totient(3, n) == brute_jordan(3, n)
    for n in range(1, 10):
        assert jordan_totient(5, n) == brute_jordan(5, n)


def test_nathanson_functions_match_subset_counts():
    for n in range(2, 21):
        assert nathanson_phi(n) == brute_nathanson_phi(n)
        assert nathanson_g(n) == brute_g(n)
    assert nathanson_g(1) == brute_g(1)


# ---------------------------------------------------------------- invariants

_MULT = ["sigma", "sigma0", "sigma3", "phi", "jordan3", "jordan5", "unitary_phi", "sigma_conv_phi"]


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 1000), st.integers(1, 1000))
def test_multiplicativity(a, b):
    if gcd(a, b) != 1:
        return
    for f in _MULT:
        assert evaluate(f, a * b) == evaluate(f, a) * evaluate(f, b), f


def test_multiplicativity_exhaustive_sample():
    rng = random.Random(20261018)
    pairs = 0
    while pairs < 2000:
        a, b = rng.randint(1, 1000), rng.randint(1, 1000)
        if gcd(a, b) != 1:
            continue
        pairs += 1
        for f in _MULT:
            assert evaluate(f, a * b) == evaluate(f, a) * evaluate(f, b), (f, a, b)


def test_phi_prime_divides_phi_multiple():
    values = sieve_range("nathanson_phi", 1, 2000)
    for p in primes_up_to(31):
        assert values[p - 1] == 2**p - 2
        for n in range(p, 2001, p):
            assert values[n - 1] % values[p - 1] == 0, (p, n)


def test_g_increment_is_half_phi():
    g = sieve_range("nathanson_g", 1, 2001)
    phi = sieve_range("nathanson_phi", 1, 2001)
    for n in range(1, 2001):
        assert 2 * (g[n] - g[n - 1]) == phi[n]


def test_nathanson_phi_even():
    assert all(v % 2 == 0 for v in sieve_range("nathanson_phi", 2, 2000))


def test_single_value_g_matches_bulk():
    bulk = sieve_range("nathanson_g", 1, 400)
    assert [nathanson_g(n) for n in range(1, 401)] == bulk


# ---------------------------------------------------------------- mod_eval

def test_mod_eval_examples():
    assert mod_eval("phi", FactoredInteger.of(14), ModulusContext(3)) == 0
    assert mod_eval("tau_mod", FactoredInteger.of(2), ModulusContext(5)) == 1
    assert mod_eval("half_nathanson_phi", FactoredInteger.of(3), ModulusContext(5)) == 3


_MOD_FUNCS = ["sigma", "sigma3", "sigma11", "phi", "jordan3", "unitary_phi", "sigma_conv_phi",
              "nathanson_phi", "half_nathanson_phi", "eis4", "eis6", "eis14"]
_MODULI = (3, 5, 7, 8, 9, 10, 691)


@pytest.fixture(scope="module")
def factored_upto_10k():
    return [FactoredInteger.of(n) for n in range(1, 10_001)]


@pytest.mark.parametrize("f", _MOD_FUNCS)
def test_mod_eval_agrees_with_exact(f, factored_upto_10k):
    if f == "nathanson_phi":
        exact = [evaluate(f, n) for n in range(1, 10_001)]
    else:
        exact = sieve_range(f, 1, 10_000)
    for m in _MODULI:
        ctx = ModulusContext(m)
        assert [mod_eval(f, x, ctx) for x in factored_upto_10k] == [v % m for v in exact], m
        assert sieve_range(f, 1, 10_000, ctx) == [v % m for v in exact], m


def test_tau_mod_congruences_agree_with_delta():
    tau = delta_expansion(10_000)
    for m in (5, 7, 9, 691):
        for n in range(1, 10_001):
            assert mod_eval("tau", n, m) == tau[n - 1] % m
    for n in range(1, 10_001, 2):
        assert mod_eval("tau", n, 8) == tau[n - 1] % 8


def test_tau_mod_errors():
    with pytest.raises(UnsupportedCongruenceError):
        mod_eval("tau", 7, 6)
    with pytest.raises(DomainError):
        mod_eval("tau", 4, 8)


def test_mod_eval_large_factored_input():
    p, q = 2**61 - 1, 2**89 - 1
    x = FactoredInteger.from_factors([(p, 1), (q, 1)])
    assert x.certification == "probabilistic"
    m = 1009
    assert mod_eval("phi", x, m) == (p - 1) * (q - 1) % m
    assert mod_eval("sigma", x, m) == (p + 1) * (q + 1) % m
    phi_val = pow(2, p * q, 2 * m) - pow(2, q, 2 * m) - pow(2, p, 2 * m) + 2
    assert mod_eval("nathanson_phi", x, m) == phi_val % m


def test_factored_integer_validation():
    assert FactoredInteger.of(360).factors == ((2, 3), (3, 2), (5, 1))
    with pytest.raises(DomainError):
        FactoredInteger(12, ((2, 2), (3, 2)))
    with pytest.raises(DomainError):
        FactoredInteger(12, ((3, 1), (2, 2)))
    with pytest.raises(DomainError):
        FactoredInteger(16, ((4, 2),))
    with pytest.raises(DomainError):
        ModulusContext(1)
    with pytest.raises(DomainError):
        ModulusContext(5, 0)


# ---------------------------------------------------------------- sieve_range

def test_sieve_examples():
    assert sieve_range("phi", 1, 5) == [1, 1, 2, 2, 4]
    assert sieve_range("sigma", 1, 1) == [1]
    assert sieve_range("nathanson_phi", 2, 4, ModulusContext(5)) == [2, 1, 2]


@pytest.mark.parametrize("f", ["mobius", "sigma", "phi", "jordan3", "unitary_phi", "sigma_conv_phi",
                               "nathanson_phi", "nathanson_g", "eis10", "tau"])
def test_sieve_matches_single_values(f):
    lo, hi = 37, 260
    assert sieve_range(f, lo, hi) == [evaluate(f, n) for n in range(lo, hi + 1)]


def test_sieve_budget(monkeypatch):
    monkeypatch.setattr(config, "SIEVE_BUDGET", 100)
    with pytest.raises(ResourceError):
        sieve_range("phi", 1, 101)
    with pytest.raises(UsageError):
        sieve_range("phi", 5, 4)
