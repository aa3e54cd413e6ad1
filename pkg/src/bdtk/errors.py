"""Exception hierarchy for algebra-level failures.

Malformed input is reported with the usual ValueError/TypeError; subclasses of
BdtkError mean the input was well formed but the requested computation is
mathematically impossible or could not be certified.
"""


class BdtkError(Exception):
    code = "ERROR"


class NotInvertibleError(BdtkError):
    code = "NOT_INVERTIBLE"


class ToleranceUnreachableError(BdtkError):
    code = "TOLERANCE_UNREACHABLE"


class NotFredholmError(BdtkError):
    code = "NOT_FREDHOLM"


class UnstableIndexError(BdtkError):
    code = "UNSTABLE"


class ReconstructionMismatchError(BdtkError):
    code = "RECONSTRUCTION_MISMATCH"


class UnsupportedDerivationError(BdtkError):
    code = "UNSUPPORTED"


class MembershipError(BdtkError):
    code = "MEMBERSHIP"
