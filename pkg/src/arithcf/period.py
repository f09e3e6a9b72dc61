"""Eventual-period scans and constructive non-periodicity witnesses.

A sequence a_1, a_2, ... is eventually periodic with parameters (N, L) when
a_{n+L} = a_n for every n >= N.  On a finite prefix this can only be
checked up to the end of the prefix, so reports are always relative to it.

Witnesses refute one fixed (N, L) for a residue sequence f(n) mod m.  Two
arguments are available, both driven by primes in arithmetic progressions:

* ``divisibility``: f(p) | f(n) whenever p | n, m | f(p) for every prime
  p ≡ 1 (mod K), and m ∤ f(p) on some other residue class of primes.
* ``multiplicative``: f is multiplicative on squarefree integers,
  f(p) ≡ r1 (mod m) for p ≡ 1 (mod m), f(p) ≡ r2 on some class, and
  r2 ≢ r1 r2 (mod m).

In both cases the search picks the least prime p ≥ N in the chosen class,
then the least j' with q = 1 + K j' p L prime (K = m for the multiplicative
argument), and sets n1 = p, n2 = p q.  Then n2 - n1 = K j' p² L is a
multiple of L, yet f(n1) ≢ f(n2) (mod m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from . import config
from .arith import FactoredInteger, ModulusContext, euler_phi, mod_eval, parse_fn
from .errors import DomainError, UsageError, WitnessNotFound
from .primes import certification, is_prime

__all__ = [
    "PeriodReport",
    "scan_period",
    "minimal_period_oracle",
    "Hypothesis",
    "hypothesis",
    "supported_criteria",
    "WITNESS_MATRIX",
    "Witness",
    "witness_violation",
]

PERIODIC = "periodic"
NO_PERIOD = "no_period_up_to"


@dataclass(frozen=True)
class PeriodReport:
    outcome: str
    N: int | None = None
    L: int | None = None
    n_max: int | None = None
    l_max: int | None = None
    prefix_len: int = 0

    @classmethod
    def periodic(cls, N, L, n_max, l_max, prefix_len):
        return cls(PERIODIC, N, L, n_max, l_max, prefix_len)

    @classmethod
    def none_found(cls, n_max, l_max, prefix_len):
        return cls(NO_PERIOD, None, None, n_max, l_max, prefix_len)

    @property
    def is_periodic(self) -> bool:
        return self.outcome == PERIODIC

    def to_dict(self):
        out = {"outcome": self.outcome, "N_max": self.n_max, "L_max": self.l_max,
               "prefix_len": self.prefix_len}
        if self.is_periodic:
            out.update(N=self.N, L=self.L)
        return out

    def __str__(self):
        if self.is_periodic:
            return f"periodic(N={self.N}, L={self.L})"
        return f"no_period_up_to(N_max={self.n_max}, L_max={self.l_max}, prefix_len={self.prefix_len})"


def scan_period(seq, n_max: int, l_max: int) -> PeriodReport:
    """Minimal (L, N), lexicographically, with N <= n_max and L <= l_max.

    For each L the smallest admissible N is one past the last index where
    a_n != a_{n+L}, so walking backwards from the end of the prefix finds it
    directly.
    """
    seq = list(seq)
    size = len(seq)
    if n_max < 1 or l_max < 1:
        raise UsageError("n_max and l_max must be positive")
    if size < n_max + 2 * l_max:
        raise UsageError(
            f"prefix of length {size} is shorter than n_max + 2*l_max = {n_max + 2 * l_max}"
        )
    for L in range(1, l_max + 1):
        # 0-based i pairs seq[i] with seq[i+L]; 1-based start is i+1
        i = size - L - 1
        while i >= 0 and seq[i] == seq[i + L]:
            i -= 1
        start = i + 2
        if start <= n_max:
            return PeriodReport.periodic(start, L, n_max, l_max, size)
    return PeriodReport.none_found(n_max, l_max, size)


def minimal_period_oracle(seq) -> PeriodReport:
    """Reference for :func:`scan_period`: tries every (L, N) with bounds len/3."""
    seq = list(seq)
    size = len(seq)
    bound = size // 3
    for L in range(1, bound + 1):
        for N in range(1, bound + 1):
            if all(seq[n - 1] == seq[n - 1 + L] for n in range(N, size - L + 1)):
                return PeriodReport.periodic(N, L, bound, bound, size)
    return PeriodReport.none_found(bound, bound, size)


# ---------------------------------------------------------------- hypotheses

@dataclass(frozen=True)
class Hypothesis:
    """Data one of the two non-periodicity arguments needs for (f, m).

    ``modulus`` is K for the divisibility argument and m for the
    multiplicative one; primes p_N are drawn from ``residue_class`` mod it.
    """

    criterion: str
    f: str
    m: int
    modulus: int
    residue_class: int
    r1: int | None = None
    r2: int | None = None
    # multiplicative function the r1/r2 data refer to, when f is a unit
    # multiple of it (Eisenstein coefficients)
    base: str | None = None
    scale: int = 1


DIVISIBILITY = "divisibility"
MULTIPLICATIVE = "multiplicative"
CRITERIA = (DIVISIBILITY, MULTIPLICATIVE)

# class of p for τ mod m, and τ(p) mod m on it
_TAU_CLASS = {5: (2, 1), 7: (2, 4), 8: (3, 4), 9: (2, 3), 691: (2, 667)}
# weight: (normalizing constant, σ index)
_EIS = {4: (240, 3), 6: (-504, 5), 8: (480, 7), 10: (-264, 9), 14: (-24, 13)}
# moduli excluded beyond gcd(m, c) = 1 because 2^{k} + 1 ≡ 0 there
_EIS_EXCLUDED = {4: (), 6: (11,), 8: (43,), 10: (19,), 14: (2731,)}


def _least_unit_class(m):
    """Smallest r in [2, m-2] with gcd(r, m) = 1."""
    for r in range(2, m - 1):
        if gcd(r, m) == 1:
            return r
    raise DomainError(f"no residue class r in [2, {m - 2}] coprime to {m}")


def supported_criteria(f: str, order: int | None = None) -> tuple[str, ...]:
    name, _ = parse_fn(f, order)
    if name in ("phi", "jordan", "unitary_phi"):
        return CRITERIA
    if name == "nathanson_phi":
        return (DIVISIBILITY,)
    if name in ("tau", "sigma", "sigma_conv_phi", "eis"):
        return (MULTIPLICATIVE,)
    return ()


def hypothesis(f: str, m: int, criterion: str | None = None, order: int | None = None) -> Hypothesis:
    """Look up the argument that refutes eventual periodicity of f mod m.

    Raises :class:`DomainError` when (f, m) is not covered.
    """
    name, k = parse_fn(f, order)
    tag = f"{name}{k}" if name in ("jordan", "eis") or (name == "sigma" and k != 1) else name
    options = supported_criteria(tag)
    if not options:
        raise DomainError(f"no non-periodicity argument is catalogued for {tag}")
    if criterion is None:
        criterion = options[0]
    if criterion not in CRITERIA:
        raise UsageError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    if criterion not in options:
        raise DomainError(f"no {criterion} argument available for {tag}")

    def refuse():
        return DomainError(f"({tag}, m={m}) is not covered by the {criterion} argument")

    if name in ("phi", "jordan", "unitary_phi"):
        # f(p) ≡ 0 for p ≡ 1 and f(p) ≡ -2 for p ≡ -1 (mod m); J_k needs k odd
        if m < 3:
            raise refuse()
        if criterion == DIVISIBILITY:
            return Hypothesis(criterion, tag, m, m, m - 1)
        return Hypothesis(criterion, tag, m, m, m - 1, r1=0, r2=m - 2)
    if name == "nathanson_phi":
        # 2^p - 2 ≡ 0 for p ≡ 1 (mod φ(m)); ≡ (m-3)/2 for p ≡ -1 (mod φ(m))
        if m < 5 or m % 2 == 0:
            raise refuse()
        K = euler_phi(m)
        return Hypothesis(criterion, tag, m, K, K - 1)
    if name == "tau":
        if m not in _TAU_CLASS:
            raise refuse()
        cls_, r2 = _TAU_CLASS[m]
        return Hypothesis(criterion, tag, m, m, cls_, r1=2, r2=r2)
    if name == "sigma" and k == 1:
        # σ(p) = p + 1: 2 on p ≡ 1, r + 1 on p ≡ r
        if m < 7:
            raise refuse()
        r = _least_unit_class(m)
        return Hypothesis(criterion, tag, m, m, r, r1=2, r2=(r + 1) % m)
    if name == "sigma_conv_phi":
        # (σ∗φ)(p) = 2p
        if m < 7:
            raise refuse()
        r = _least_unit_class(m)
        return Hypothesis(criterion, tag, m, m, r, r1=2, r2=2 * r % m)
    if name == "eis":
        c, j = _EIS[k]
        if m < 3 or gcd(m, c) != 1 or m in _EIS_EXCLUDED[k]:
            raise refuse()
        # σ_j(p) = p^j + 1: 2 on p ≡ 1, 2^j + 1 on p ≡ 2
        return Hypothesis(criterion, tag, m, m, 2, r1=2, r2=(2**j + 1) % m,
                          base=f"sigma{j}", scale=c)
    raise refuse()


# pairs exercised by the witness suite: every function/modulus combination
# for which non-periodicity is established, restricted to small moduli
WITNESS_MATRIX: tuple[tuple[str, int], ...] = (
    tuple(("tau", m) for m in (5, 7, 8, 9, 691))
    + (("eis4", 7), ("eis6", 5), ("eis8", 7), ("eis10", 5), ("eis10", 7),
       ("eis14", 5), ("eis14", 7))
    + tuple(("nathanson_phi", m) for m in (5, 7, 9))
    + tuple(("phi", m) for m in range(3, 11))
    + tuple(("sigma", m) for m in range(7, 11))
    + tuple(("sigma_conv_phi", m) for m in range(7, 11))
    + tuple(("jordan3", m) for m in range(3, 11))
    + tuple(("unitary_phi", m) for m in range(3, 11))
)


# ---------------------------------------------------------------- witnesses

@dataclass
class Witness:
    criterion: str
    f: str
    m: int
    L: int
    N: int
    K: int
    p_N: int
    j_prime: int
    q: int
    n1: int
    n2: int
    value1: int
    value2: int
    r1: int | None = None
    r2: int | None = None
    residue_class: int = 0
    certification: str = "deterministic"
    search_steps: dict = field(default_factory=dict)

    def check(self) -> list[str]:
        """Re-derive every invariant from scratch; returns the failures."""
        problems = []
        if self.n1 != self.p_N or self.p_N < self.N:
            problems.append("n1 must equal p_N >= N")
        if not is_prime(self.p_N):
            problems.append("p_N is not prime")
        if not is_prime(self.q):
            problems.append("q is not prime")
        if self.q != 1 + self.K * self.j_prime * self.p_N * self.L:
            problems.append("q != 1 + K j' p_N L")
        if self.q % self.K != 1 % self.K:
            problems.append("q is not 1 mod K")
        if self.p_N % self.K != self.residue_class % self.K:
            problems.append("p_N is not in the required class")
        if self.n2 != self.p_N * self.q:
            problems.append("n2 != p_N q")
        if (self.n2 - self.n1) % self.L:
            problems.append("L does not divide n2 - n1")
        if not problems:
            x1 = FactoredInteger.from_factors([(self.p_N, 1)])
            x2 = FactoredInteger.from_factors([(self.p_N, 1), (self.q, 1)])
            v1 = mod_eval(self.f, x1, self.m)
            v2 = mod_eval(self.f, x2, self.m)
            if v1 != self.value1 or v2 != self.value2:
                problems.append("recorded residues disagree with re-evaluation")
            if v1 == v2:
                problems.append("f(n1) ≡ f(n2): no contradiction")
        return problems

    @property
    def verified(self) -> bool:
        return not self.check()

    def to_dict(self):
        out = {
            "criterion": self.criterion,
            "f": self.f,
            "m": self.m,
            "L": self.L,
            "N": self.N,
            "K": self.K,
            "residue_class": self.residue_class,
            "p_N": str(self.p_N),
            "j_prime": self.j_prime,
            "q": str(self.q),
            "n1": str(self.n1),
            "n2": str(self.n2),
            "value1": self.value1,
            "value2": self.value2,
            "certification": self.certification,
            "search_steps": dict(self.search_steps),
        }
        if self.criterion == MULTIPLICATIVE:
            out["r1"] = self.r1
            out["r2"] = self.r2
        out["verified"] = self.verified
        return out


def witness_violation(
    f: str,
    m: int,
    L: int,
    N: int,
    criterion: str | None = None,
    *,
    order: int | None = None,
    p_budget: int | None = None,
    j_budget: int | None = None,
) -> Witness:
    """Build explicit n1 ≡ n2 (mod L), n1 >= N, with f(n1) ≢ f(n2) (mod m)."""
    if L < 1 or N < 1:
        raise UsageError("L and N must be positive")
    hyp = hypothesis(f, m, criterion, order)
    p_budget = config.P_BUDGET if p_budget is None else p_budget
    j_budget = config.J_BUDGET if j_budget is None else j_budget
    ctx = ModulusContext(m, hyp.modulus)
    K = hyp.modulus

    # (1) least prime p >= N in the class with f(p) ≢ 0, resp. ≡ r2
    p = max(N, 2)
    p += (hyp.residue_class - p) % K
    p_steps = 0
    while True:
        if p_steps >= p_budget:
            raise WitnessNotFound(f"no suitable prime p_N within {p_budget} candidates")
        p_steps += 1
        if is_prime(p):
            v1 = mod_eval(hyp.f, FactoredInteger.from_factors([(p, 1)]), ctx)
            base = (mod_eval(hyp.base, FactoredInteger.from_factors([(p, 1)]), ctx)
                    if hyp.base else v1)
            if (hyp.criterion == DIVISIBILITY and v1 != 0) or (
                hyp.criterion == MULTIPLICATIVE and base == hyp.r2
            ):
                break
        p += K

    # (2) least j' making q = 1 + K j' p L prime, and (3) the contradiction
    step = K * p * L
    for j in range(1, j_budget + 1):
        q = 1 + j * step
        if not is_prime(q):
            continue
        v2 = mod_eval(hyp.f, FactoredInteger.from_factors([(p, 1), (q, 1)]), ctx)
        if v2 == v1:
            # cannot happen for a genuine prime q; a probable prime that is
            # secretly composite lands here and the search moves on
            continue
        return Witness(
            criterion=hyp.criterion, f=hyp.f, m=m, L=L, N=N, K=K, p_N=p, j_prime=j,
            q=q, n1=p, n2=p * q, value1=v1, value2=v2, r1=hyp.r1, r2=hyp.r2,
            residue_class=hyp.residue_class, certification=certification(q),
            search_steps={"p_candidates": p_steps, "j_candidates": j},
        )
    raise WitnessNotFound(f"no prime q = 1 + {step} j' for j' <= {j_budget}")
