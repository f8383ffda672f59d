"""Exception types.

Every error carries a stable ``kind`` string; the CLI reports it verbatim
under ``error.kind``.
"""


class HypError(Exception):
    kind = "HypError"

    def __init__(self, message="", pos=None):
        super().__init__(message)
        self.pos = pos

    def to_json(self):
        out = {"kind": self.kind, "message": str(self)}
        if self.pos is not None:
            out["pos"] = self.pos
        return out


class InvalidInput(HypError, ValueError):
    kind = "InvalidInput"


class NotInvertible(HypError, ZeroDivisionError):
    kind = "NotInvertible"


class OnDiagonal(HypError, ValueError):
    kind = "OnDiagonal"


class MaxTermsExceeded(HypError, ArithmeticError):
    kind = "MaxTermsExceeded"


class EvaluationDomain(HypError, ValueError):
    kind = "EvaluationDomain"


class NullTangent(HypError, ValueError):
    kind = "NullTangent"


class QuadratureFailure(HypError, ArithmeticError):
    kind = "QuadratureFailure"


class PvNonconvergent(HypError, ArithmeticError):
    kind = "PvNonconvergent"


class Inconclusive(HypError, ArithmeticError):
    kind = "Inconclusive"


class BranchUnavailable(HypError, ValueError):
    kind = "BranchUnavailable"


class SignatureMismatch(HypError, ValueError):
    kind = "SignatureMismatch"


class NotGradeOne(HypError, ValueError):
    kind = "NotGradeOne"


class GridTooSmall(HypError, ValueError):
    kind = "GridTooSmall"


class ZeroArgument(HypError, ValueError):
    kind = "ZeroArgument"


class UsageError(HypError, ValueError):
    """Malformed command line or unreadable command input."""

    kind = "UsageError"


class SuiteFailure(HypError):
    kind = "SuiteFailure"


class ExprSyntaxError(HypError, ValueError):
    """Parse failure; ``pos`` is the byte offset, ``expected`` the token set."""

    kind = "SyntaxError"

    def __init__(self, message, pos=None, expected=()):
        super().__init__(message, pos)
        self.expected = tuple(sorted(expected))

    def to_json(self):
        out = super().to_json()
        out["expected"] = list(self.expected)
        return out
