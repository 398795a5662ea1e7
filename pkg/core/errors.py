"""
Exception hierarchy for the triangle estimation system
"""

from typing import Optional


class FurlError(Exception):
    """Base class for all errors raised by this package"""


class RejectedEdgeError(FurlError, ValueError):
    """An edge that may not enter a stream (self-loop, strict-mode duplicate)"""


class EdgeParseError(FurlError, ValueError):
    """Malformed line in an edge-list file"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class BufferContractError(FurlError, RuntimeError):
    """A sample buffer operation was called outside its precondition"""


class MetricError(FurlError, ValueError):
    """A metric cannot be computed for the given inputs"""


class ProbeInvalidError(FurlError, ValueError):
    """The probe stream does not isolate the probed triangle"""


class ProbeUnsupportedError(FurlError, ValueError):
    """No closed-form prediction exists for this configuration"""
