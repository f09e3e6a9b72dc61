"""Global budgets.  Environment variables set the defaults; CLI flags override."""

import os

__all__ = ["env_int", "SIEVE_BUDGET", "SERIES_BUDGET", "PRECISION_CEILING",
           "P_BUDGET", "J_BUDGET", "MR_ROUNDS", "MAX_CF_K", "STREAM_BLOCK"]


def env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}")


# max hi - lo + 1 for sieve_range
SIEVE_BUDGET = env_int("ARITHCF_SIEVE_BUDGET", 5_000_000)
# max truncation order for q-expansions
SERIES_BUDGET = env_int("ARITHCF_SERIES_BUDGET", 200_000)
# max digits of theta an enclosure may consume
PRECISION_CEILING = env_int("ARITHCF_PRECISION_CEILING", 1_000_000)
P_BUDGET = env_int("ARITHCF_P_BUDGET", 100_000)
J_BUDGET = env_int("ARITHCF_J_BUDGET", 100_000)
MR_ROUNDS = env_int("ARITHCF_MR_ROUNDS", 64)
MAX_CF_K = env_int("ARITHCF_MAX_K", 256)
STREAM_BLOCK = env_int("ARITHCF_STREAM_BLOCK", 1 << 16)
