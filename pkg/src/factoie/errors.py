"""Exception types shared across the toolkit.

Every error that originates from a file or a JSON document carries a
``location`` (a line number rendered as ``"line N"`` or a JSON path such as
``"$.sentences[0].tokens[2]"``) so callers can point users at the offending
spot.
"""

from __future__ import annotations


class FactoieError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{message} [{location}]"
        super().__init__(message)


# -- shorthand parsing ------------------------------------------------------

class UnbalancedBrackets(FactoieError):
    """Bracket syntax error in slot shorthand: unclosed, unopened, or empty."""


class EmptyAlternative(FactoieError):
    """A '|'-separated alternative contains no words."""


class TokenNotInSentence(FactoieError):
    """A shorthand word cannot be aligned to any remaining sentence token."""


class AllOptional(FactoieError):
    """An alternative has no required token, so it could expand to nothing."""


class VariantLimitExceeded(FactoieError):
    """Expansion would produce more variants than the configured limit."""

    def __init__(self, message: str, would_be_count: int):
        self.would_be_count = would_be_count
        super().__init__(f"{message} (would produce {would_be_count} variants)")


# -- scoring ----------------------------------------------------------------

class UnknownSentence(FactoieError):
    """An extraction references a sentence id absent from the benchmark."""


# -- file formats -----------------------------------------------------------

class MalformedInput(FactoieError):
    """Input bytes do not follow the expected file grammar."""


class DuplicateId(FactoieError):
    """Two sentences share the same id."""


class EmptyInput(FactoieError):
    """The input file contains no sentences."""


class SchemaViolation(FactoieError):
    """A JSON document does not match the expected schema."""


class VersionUnsupported(FactoieError):
    """The JSON document declares a format version this build cannot read."""


class ConfidenceOutOfRange(FactoieError):
    """An extraction confidence falls outside [0, 1]."""


# -- tagging ----------------------------------------------------------------

class EmptyText(FactoieError):
    """Text to tokenize is empty or whitespace-only."""


class TokenizationMismatch(FactoieError):
    """Pre-tagged tokens are inconsistent with the raw sentence text."""


class GoldOverlapWarning(UserWarning):
    """Two fact synsets of one sentence expand to a shared triple."""
