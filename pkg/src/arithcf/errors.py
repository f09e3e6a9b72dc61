"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ArithCFError(Exception):
    exit_code = 1


class UsageError(ArithCFError, ValueError):
    """Malformed input: bad spec text, mismatched series orders, short prefixes."""

    exit_code = 2


class DomainError(ArithCFError, ValueError):
    """Input outside the mathematical domain an operation is defined on."""

    exit_code = 3


class UnsupportedCongruenceError(DomainError):
    """τ mod m requested for a modulus with no known congruence."""


class ResourceError(ArithCFError):
    """A configured memory or size budget would be exceeded."""

    exit_code = 4


class PrecisionCeilingError(ArithCFError):
    exit_code = 5

    def __init__(self, n, digits):
        super().__init__(
            f"floor({n}*theta) still ambiguous at {digits} digits (precision ceiling)"
        )
        self.n = n
        self.digits = digits


class WitnessNotFound(ArithCFError):
    """Search budget ran out.  Says nothing about existence."""

    exit_code = 6


class ExtendQuotientsError(ArithCFError):
    exit_code = 7

    def __init__(self, have, required):
        super().__init__(
            f"extend quotients: {have} available, need at least n={required}"
        )
        self.have = have
        self.required = required
