from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithcf.errors import DomainError, ResourceError, UsageError
from arithcf.primes import primes_up_to
from arithcf.qseries import (
    TruncatedIntSeries,
    delta_expansion,
    eisenstein_coeff,
    eisenstein_series,
    euler_product,
    series_mul,
    series_pow,
    verify_tau_congruences,
)


def naive(a, b):
    """Reference convolution straight from the definition."""
    n = len(a)
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def S(coeffs, order=None):
    order = len(coeffs) - 1 if order is None else order
    return TruncatedIntSeries.from_coeffs(coeffs, order)


def test_small_products():
    assert series_mul(S([1, 1, 0]), S([1, -1, 0])).coeffs == (1, 0, -1)
    assert series_pow(S([1, 1, 0]), 2).coeffs == (1, 2, 1)
    assert series_pow(euler_product(5), 3)[1] == -3


def test_mismatched_orders():
    with pytest.raises(UsageError):
        series_mul(S([1, 1]), S([1, 1, 1]))
    with pytest.raises(UsageError):
        S([1, 2]) + S([1, 2, 3])
    with pytest.raises(UsageError):
        TruncatedIntSeries((1, 2), 3)


coeff = st.integers(-(2**64), 2**64)


@st.composite
def series_triple(draw):
    n = draw(st.integers(0, 64))
    return tuple(S(draw(st.lists(coeff, min_size=n + 1, max_size=n + 1))) for _ in range(3))


@settings(max_examples=150, deadline=None)
@given(series_triple())
def test_ring_laws(abc):
    a, b, c = abc
    assert (a * b).coeffs == tuple(naive(a.coeffs, b.coeffs))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(st.integers(50, 200), st.integers(1, 30), st.data())
def test_kronecker_path_against_naive(n, e, data):
    a = S(data.draw(st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1)))
    expected = [1] + [0] * n
    for _ in range(e):
        expected = naive(expected, list(a.coeffs))
    assert list(series_pow(a, e).coeffs) == expected


def test_euler_product_matches_direct_product():
    N = 120
    direct = [1] + [0] * N
    for n in range(1, N + 1):
        factor = [0] * (N + 1)
        factor[0] = 1
        factor[n] = -1
        direct = naive(direct, factor)
    assert list(euler_product(N).coeffs) == direct


def test_delta_examples():
    assert delta_expansion(5) == [1, -24, 252, -1472, 4830]
    assert delta_expansion(6)[5] == -6048 == (-24) * 252
    assert delta_expansion(1) == [1]


def test_delta_from_eisenstein_series():
    # Δ = (E_4^3 - E_6^2) / 1728, an identity independent of the eta product
    N = 300
    e4 = list(eisenstein_series(4, N).coeffs)
    e6 = list(eisenstein_series(6, N).coeffs)
    num = [x - y for x, y in zip(naive(naive(e4, e4), e4), naive(e6, e6))]
    assert all(c % 1728 == 0 for c in num)
    assert num[0] == 0
    assert [c // 1728 for c in num[1:]] == delta_expansion(N)


def test_prefix_stability():
    big = delta_expansion(3000)
    for M in (1, 2, 17, 500, 2999):
        from arithcf import qseries

        qseries._tau_cache = []
        assert delta_expansion(M) == big[:M]


def test_tau_multiplicative_and_hecke():
    N = 4000
    tau = [None] + delta_expansion(N)
    for a in range(2, 64):
        for b in range(a + 1, N // a + 1):
            if gcd(a, b) == 1:
                assert tau[a * b] == tau[a] * tau[b], (a, b)
    # τ(p^2) = τ(p)^2 - p^11
    for p in primes_up_to(63):
        assert tau[p * p] == tau[p] ** 2 - p**11


def test_delta_budget(monkeypatch):
    from arithcf import config

    monkeypatch.setattr(config, "SERIES_BUDGET", 10)
    with pytest.raises(ResourceError):
        delta_expansion(11)


@pytest.mark.parametrize(
    "w, n, expected", [(4, 1, 240), (6, 1, -504), (8, 1, 480), (10, 1, -264), (14, 1, -24),
                       (14, 2, -196632), (4, 2, 240 * 9)]
)
def test_eisenstein_coeff(w, n, expected):
    assert eisenstein_coeff(w, n) == expected


@pytest.mark.parametrize("w", [2, 12, 16])
def test_eisenstein_weight_rejected(w):
    with pytest.raises(DomainError):
        eisenstein_coeff(w, 1)


def test_e8_is_e4_squared():
    N = 100
    e4 = list(eisenstein_series(4, N).coeffs)
    assert naive(e4, e4) == list(eisenstein_series(8, N).coeffs)


def test_congruence_examples():
    report = verify_tau_congruences(2)
    assert report.ok
    assert report.last[5] == (2, 1, 1)
    assert report.last[691] == (2, 667, 667)
    assert verify_tau_congruences(3, moduli=(7,)).last[7] == (3, 0, 0)
    assert verify_tau_congruences(1).ok


def test_congruences_to_10k():
    report = verify_tau_congruences(10_000)
    assert report.ok
    assert report.checked == {5: 10_000, 7: 10_000, 8: 5_000, 9: 10_000, 691: 10_000}
