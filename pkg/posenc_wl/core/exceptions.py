"""Custom exception classes for the library and CLI."""

from typing import Any, Dict, Optional


class PosEncError(Exception):
    """Base exception class for posenc-wl."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Error body used by the CLI on the error stream."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class GraphValidationError(PosEncError):
    """Raised when a graph violates its construction invariants."""

    pass


class EdgeListParseError(GraphValidationError):
    """Raised when edge-list text cannot be parsed."""

    def __init__(self, message: str, line: int, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"line {line}: {message}", {"line": line, **(details or {})})
        self.line = line


class GraphGenerationError(PosEncError):
    """Raised when generator parameters are invalid."""

    pass


class OracleScaleExceeded(PosEncError):
    """Raised when the brute-force isomorphism oracle is asked beyond its limit."""

    pass


class NotATreeError(PosEncError):
    """Raised when a tree operation receives a non-tree."""

    pass


class SpectralError(PosEncError):
    """Raised when a spectral operation receives an invalid matrix."""

    pass


class NonFiniteSpectralValueError(SpectralError):
    """Raised when a spectral function is not finite on some eigenvalue."""

    def __init__(self, eigenvalue: float, function: str = ""):
        super().__init__(
            f"spectral function {function or '<anonymous>'} is not finite at eigenvalue {eigenvalue!r}",
            {"eigenvalue": eigenvalue, "function": function},
        )
        self.eigenvalue = eigenvalue


class EncodingError(PosEncError):
    """Raised when a positional encoding cannot be computed or combined."""

    pass


class TokenOverflowError(EncodingError):
    """Raised when a value divided by its quantization step leaves the integer range."""

    pass


class RefinementError(PosEncError):
    """Raised when a WL engine receives inconsistent inputs."""

    pass


class TransformerConfigError(PosEncError):
    """Raised when transformer dimensions or maps are inconsistent."""

    pass


class CorpusError(PosEncError):
    """Raised when a corpus spec string or corpus file is invalid."""

    pass


class VerificationError(PosEncError):
    """Raised when a theorem verifier is unknown or misused."""

    pass


class CliUsageError(PosEncError):
    """Raised when command-line flags fail validation."""

    pass
