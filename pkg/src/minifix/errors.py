"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(Exception):
    """Malformed MiniImp source; carries the offending position."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class DimensionMismatch(ValueError):
    """Vectors built at different q or over different alphabets."""


class CfMismatch(ValueError):
    """Block alignment called on programs with different control flow."""


class EmptyCandidates(Exception):
    """No corpus entry shares the query's control-flow signature."""


class NoCandidates(Exception):
    """Pipeline-level failure: control-flow mismatch against the corpus."""

    exit_code = 2


class ExceedsThreshold(Exception):
    """No passing fix subset within the cardinality cutoff."""

    exit_code = 3


class InvalidCandidate(Exception):
    """Applying the full fix set does not repair the program."""


class ConflictingFixes(ValueError):
    """Two ungrouped fixes target the same anchor."""
