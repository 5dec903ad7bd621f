"""
Exceptions raised by the tiltcell core. The CLI maps them to exit codes.
"""


class TiltcellError(Exception):
    exit_code = 1
    kind = "error"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class InvalidConfigError(TiltcellError, ValueError):
    """bad user input: unknown type, l <= h, non-dominant weights, ..."""

    exit_code = 2
    kind = "invalid-config"


class InconclusiveTruncationError(TiltcellError):
    """the answer depends on elements outside the computed ball."""

    exit_code = 3
    kind = "inconclusive-truncation"

    def __init__(self, message: str, truncation: int = None):
        super().__init__(message)
        self.truncation = truncation

    def to_dict(self) -> dict:
        res = super().to_dict()
        res["L"] = self.truncation
        return res


class InvariantViolationError(TiltcellError):
    """an internal consistency check failed; results would be wrong."""

    exit_code = 4
    kind = "invariant-violation"
