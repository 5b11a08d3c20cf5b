# src/exceptions.py
"""
Exception hierarchy shared by all modules.
"""


class MotifVarError(Exception):
    """Base class for every error raised by this package."""


class MotifError(MotifVarError):
    """Bad motif literal, unknown alias, unsupported size or disconnected motif."""


class TauError(MotifVarError):
    """Exponent tau not parsable or outside the open interval (2, 3)."""


class AssignmentError(MotifVarError):
    """Degree-exponent label outside the candidate set of the mode."""


class ModelParameterError(MotifVarError):
    """Invalid hidden-variable model parameters."""


class CountingError(MotifVarError):
    """Motif outside the range supported by the counting engine."""


class EdgeListParseError(MotifVarError):
    """Malformed edge-list line."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class FitError(MotifVarError):
    """Degree tail too small or degenerate for the exponent fit."""


class ExperimentConfigError(MotifVarError):
    """Degenerate size grid or too few samples."""


class ConsistencyError(MotifVarError):
    """An internal cross-check between two derivations failed."""
