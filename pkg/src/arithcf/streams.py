"""Decimal digit streams built from residues of arithmetic functions.

A stream spec has the canonical text form ``<source>%<m>[>dec][*<scale>]``:

    tau%5               τ(r) mod 5
    eis10%7             r-th coefficient of E_10, mod 7
    nathanson_phi%7>dec (Φ(r) mod 7) mod 10
    half_phi%9>dec      (Φ(r)/2 mod 9) mod 10
    jordan3%8           J_3(r) mod 8
    phi%5*2             2φ(r) mod 5

Only the function/modulus combinations for which the digit sum
θ = Σ digit_r 10^(-r) is known to be irrational are accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from math import gcd

from . import config
from .arith import FactoredInteger, mod_eval, sieve_range
from .errors import DomainError, UsageError

__all__ = [
    "DIRECT",
    "NESTED",
    "HALF_NESTED",
    "StreamSpec",
    "DigitStream",
    "parse_stream",
    "digit_at",
    "scaled_stream",
    "residue_sequence",
    "covered_streams",
]

DIRECT = "direct"
NESTED = "nested_mod_10"
HALF_NESTED = "half_then_nested"

_EIS_MODULI = {"eis4": (7,), "eis6": (5,), "eis8": (7,), "eis10": (5, 7), "eis14": (5, 7)}
_SMALL_RANGE = {"phi": 3, "unitary_phi": 3, "jordan": 3, "sigma": 7, "sigma_conv_phi": 7}


def _odd_not_3_mod_10(m):
    return m >= 5 and m % 2 == 1 and m % 10 != 3


@dataclass(frozen=True)
class StreamSpec:
    source: str
    m: int
    variant: str = DIRECT
    scale: int = 1
    v: int | None = None

    def __post_init__(self):
        src, m, variant = self.source, self.m, self.variant
        if variant not in (DIRECT, NESTED, HALF_NESTED):
            raise DomainError(f"unknown variant {variant!r}")
        if src == "jordan":
            if self.v is None or self.v < 3 or self.v % 2 == 0:
                raise DomainError(f"jordan stream needs an odd order v >= 3, got {self.v}")
        elif self.v is not None:
            raise DomainError(f"{src} takes no order")

        if src == "tau":
            ok = variant == DIRECT and m in (5, 7, 8, 9)
        elif src in _EIS_MODULI:
            ok = variant == DIRECT and m in _EIS_MODULI[src]
        elif src == "nathanson_phi":
            ok = variant in (NESTED, HALF_NESTED) and _odd_not_3_mod_10(m)
        elif src == "nathanson_g":
            ok = variant == NESTED and _odd_not_3_mod_10(m)
        elif src in _SMALL_RANGE:
            ok = variant == DIRECT and _SMALL_RANGE[src] <= m <= 10
        else:
            raise DomainError(f"unknown stream source {src!r}")
        if not ok:
            raise DomainError(f"stream {self.text()} is outside the supported constructions")
        if self.scale < 1 or gcd(self.scale, m) != 1:
            raise DomainError(f"scale {self.scale} must be a positive unit mod {m}")

    @property
    def fn_tag(self) -> str:
        """Tag of the underlying function in :mod:`arithcf.arith`."""
        if self.variant == HALF_NESTED:
            return "half_nathanson_phi"
        if self.source == "jordan":
            return f"jordan{self.v}"
        return self.source

    def text(self) -> str:
        if self.variant == HALF_NESTED:
            head = "half_phi"
        elif self.source == "jordan":
            head = f"jordan{self.v}"
        else:
            head = self.source
        out = f"{head}%{self.m}"
        if self.variant != DIRECT:
            out += ">dec"
        if self.scale != 1:
            out += f"*{self.scale}"
        return out

    __str__ = text

    def to_digit(self, residue: int) -> int:
        r = self.scale * residue % self.m
        return r if self.variant == DIRECT else r % 10


_SPEC_RE = re.compile(r"^(?P<head>[a-z_]+?)(?P<num>\d*)%(?P<m>\d+)(?P<dec>>dec)?(?:\*(?P<scale>\d+))?$")


def parse_stream(text: str) -> StreamSpec:
    match = _SPEC_RE.match(text.strip().lower())
    if not match:
        raise UsageError(f"cannot parse stream spec {text!r}")
    head, num = match.group("head"), match.group("num")
    m = int(match.group("m"))
    dec = match.group("dec") is not None
    scale = int(match.group("scale") or 1)
    v = None
    if head == "half_phi" and not num:
        source, variant = "nathanson_phi", HALF_NESTED
        if not dec:
            raise DomainError("half_phi streams are always reduced mod 10; write half_phi%m>dec")
    else:
        if head == "eis" and num:
            source = f"eis{num}"
        elif head == "jordan" and num:
            source, v = "jordan", int(num)
        elif num:
            raise UsageError(f"cannot parse stream spec {text!r}")
        else:
            source = head
        variant = NESTED if dec else DIRECT
    return StreamSpec(source, m, variant, scale, v)


def _as_spec(spec) -> StreamSpec:
    return spec if isinstance(spec, StreamSpec) else parse_stream(spec)


def digit_at(spec, r: int) -> int:
    """r-th decimal digit of θ for the stream, evaluated on its own."""
    spec = _as_spec(spec)
    if r < 1:
        raise DomainError(f"digit index must be >= 1, got {r}")
    if spec.source == "tau":
        from .qseries import delta_expansion

        residue = delta_expansion(r)[r - 1] % spec.m
    elif spec.source == "nathanson_g":
        residue = mod_eval("nathanson_g", r, spec.m)
    else:
        residue = mod_eval(spec.fn_tag, FactoredInteger.of(r), spec.m)
    return spec.to_digit(residue)


class DigitStream:
    """Memoized, block-extended digit sequence d_1, d_2, ... of a stream spec."""

    def __init__(self, spec, block: int | None = None):
        self.spec = _as_spec(spec)
        self.block = block or config.STREAM_BLOCK
        self._digits: list[int] = []

    def __repr__(self):
        return f"DigitStream({self.spec.text()!r}, materialized={len(self._digits)})"

    def __len__(self):
        return len(self._digits)

    def extend_to(self, n: int) -> None:
        have = len(self._digits)
        if have >= n:
            return
        # geometric growth, capped at one block per extension
        target = max(n, min(max(2 * have, 256), have + self.block))
        residues = sieve_range(self.spec.fn_tag, have + 1, target, self.spec.m)
        self._digits.extend(self.spec.to_digit(x) for x in residues)

    def digit(self, r: int) -> int:
        if r < 1:
            raise DomainError(f"digit index must be >= 1, got {r}")
        self.extend_to(r)
        return self._digits[r - 1]

    def prefix(self, n: int) -> list[int]:
        self.extend_to(n)
        return self._digits[:n]


def scaled_stream(spec, scale: int | None = None) -> DigitStream:
    """Stream of (λ f(r) mod m), nested per the variant; λ must be a unit mod m."""
    spec = _as_spec(spec)
    if scale is not None:
        if gcd(scale, spec.m) != 1:
            raise DomainError(f"gcd({scale}, {spec.m}) != 1")
        spec = replace(spec, scale=scale)
    return DigitStream(spec)


def residue_sequence(f: str, m: int, length: int, order: int | None = None) -> list[int]:
    """f(1..length) mod m, with no digit encoding."""
    return sieve_range(f, 1, length, m, order)


def covered_streams(odd_moduli=(5, 7, 9, 11), jordan_orders=(3,)) -> list[StreamSpec]:
    """Every stream family of the transcendence construction, instantiated.

    The Φ/g families admit infinitely many moduli; ``odd_moduli`` picks the
    ones to instantiate (values violating the family's constraint are skipped).
    """
    specs = [StreamSpec("tau", m) for m in (5, 7, 8, 9)]
    specs += [StreamSpec(src, m) for src, ms in _EIS_MODULI.items() for m in ms]
    for m in odd_moduli:
        if _odd_not_3_mod_10(m):
            specs.append(StreamSpec("nathanson_phi", m, NESTED))
            specs.append(StreamSpec("nathanson_phi", m, HALF_NESTED))
            specs.append(StreamSpec("nathanson_g", m, NESTED))
    specs += [StreamSpec("phi", m) for m in range(3, 11)]
    specs += [StreamSpec("sigma", m) for m in range(7, 11)]
    specs += [StreamSpec("sigma_conv_phi", m) for m in range(7, 11)]
    specs += [StreamSpec("jordan", m, v=v) for v in jordan_orders for m in range(3, 11)]
    specs += [StreamSpec("unitary_phi", m) for m in range(3, 11)]
    return specs
