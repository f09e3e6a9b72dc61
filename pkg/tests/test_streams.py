import random
from math import gcd

import pytest

from arithcf.arith import evaluate
from arithcf.errors import DomainError, UsageError
from arithcf.qseries import delta_expansion
from arithcf.streams import (
    HALF_NESTED,
    NESTED,
    DigitStream,
    StreamSpec,
    digit_at,
    parse_stream,
    residue_sequence,
    scaled_stream,
    covered_streams,
)


def test_examples():
    assert digit_at("tau%5", 4) == 3
    assert digit_at("phi%3", 1) == 1
    assert digit_at("nathanson_phi%7>dec", 4) == 5
    assert scaled_stream("phi%5", 2).digit(3) == 4
    with pytest.raises(DomainError):
        scaled_stream("phi%5", 5)


@pytest.mark.parametrize("spec", covered_streams(), ids=str)
def test_digits_in_range_and_block_independent(spec):
    ref = DigitStream(spec).prefix(10_000)
    assert all(0 <= d <= 9 for d in ref)
    small = DigitStream(spec, block=97)
    small.prefix(5)
    small.prefix(300)
    assert small.prefix(10_000) == ref


@pytest.mark.parametrize("spec", covered_streams(), ids=str)
def test_digit_at_matches_stream(spec):
    stream = DigitStream(spec)
    rng = random.Random(spec.text())
    for r in [1, 2, 3, 97] + rng.sample(range(1, 3000), 15):
        assert digit_at(spec, r) == stream.digit(r)


def test_digits_follow_definition():
    tau = delta_expansion(1000)
    for m in (5, 7, 8, 9):
        assert DigitStream(f"tau%{m}").prefix(1000) == [t % m for t in tau]
    for r in range(1, 200):
        phi = evaluate("nathanson_phi", r)
        assert digit_at("nathanson_phi%9>dec", r) == phi % 9 % 10
        assert digit_at("half_phi%11>dec", r) == phi // 2 % 11 % 10
        assert digit_at("nathanson_g%7>dec", r) == evaluate("nathanson_g", r) % 7
        assert digit_at("jordan3%10", r) == evaluate("jordan3", r) % 10


def test_text_round_trip():
    for spec in covered_streams():
        assert parse_stream(spec.text()) == spec
    assert parse_stream("half_phi%9>dec").variant == HALF_NESTED
    assert parse_stream("nathanson_g%5>dec").variant == NESTED
    assert parse_stream("phi%5*2").text() == "phi%5*2"


@pytest.mark.parametrize(
    "text, exc",
    [
        ("tau%6", DomainError),
        ("tau%691", DomainError),
        ("eis4%5", DomainError),
        ("nathanson_phi%7", DomainError),
        ("nathanson_phi%13>dec", DomainError),
        ("nathanson_phi%8>dec", DomainError),
        ("half_phi%9", DomainError),
        ("phi%11", DomainError),
        ("sigma%6", DomainError),
        ("jordan2%5", DomainError),
        ("phi%6*3", DomainError),
        ("carmichael%5", DomainError),
        ("tau5", UsageError),
        ("phi3%5", UsageError),
    ],
)
def test_invalid_specs(text, exc):
    with pytest.raises(exc):
        parse_stream(text)


def test_bad_index():
    with pytest.raises(DomainError):
        digit_at("phi%5", 0)
    with pytest.raises(DomainError):
        DigitStream("phi%5").digit(0)


def test_scaling_is_a_bijection_on_residues():
    rng = random.Random(7)
    specs = covered_streams()
    for spec in rng.sample(specs, 20):
        lam = rng.choice([u for u in range(2, spec.m) if gcd(u, spec.m) == 1])
        base = residue_sequence(spec.fn_tag, spec.m, 1000)
        scaled = scaled_stream(spec, lam).prefix(1000)
        assert scaled == [spec.to_digit(lam * x) for x in base]
        # digits determine residues for direct streams, and λ acts injectively
        if spec.variant == "direct":
            inv = pow(lam, -1, spec.m)
            assert [inv * d % spec.m for d in scaled] == [x % spec.m for x in base]


def test_covered_streams_span_families():
    texts = {s.text() for s in covered_streams()}
    for t in ("tau%8", "eis14%7", "half_phi%5>dec", "nathanson_g%11>dec", "sigma_conv_phi%10",
              "jordan3%3", "unitary_phi%10"):
        assert t in texts
    assert not any(s.m == 13 for s in covered_streams(odd_moduli=(13,)))
    assert StreamSpec("jordan", 5, v=5).text() == "jordan5%5"
