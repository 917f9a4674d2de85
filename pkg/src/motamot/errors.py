"""Exception types shared across the toolkit."""


class MotamotError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(MotamotError, ValueError):
    """Caller supplied a value that violates an operation's preconditions."""


class NotFoundError(MotamotError, KeyError):
    """An entry, sense or volume id did not resolve."""

    def __str__(self) -> str:  # KeyError quotes its payload; keep plain text
        return self.args[0] if self.args else ""


class MalformedLineError(MotamotError, ValueError):
    """A source-dictionary line is not TAB-separated into two columns."""


class AlignmentError(MotamotError, ValueError):
    """Sense counts differ between the two columns of a source line."""

    def __init__(self, french_count: int, khmer_count: int, line: str = ""):
        super().__init__(
            f"sense count mismatch: {french_count} French vs {khmer_count} Khmer"
        )
        self.french_count = french_count
        self.khmer_count = khmer_count
        self.line = line


class InvalidArticleError(MotamotError, ValueError):
    """A tagged article does not follow the expected shape."""


class UntranslatableGraphemeError(MotamotError, ValueError):
    """A grapheme has no row in the generation table."""

    def __init__(self, grapheme: str, offset: int):
        super().__init__(f"no generation rule for grapheme {grapheme!r} at token {offset}")
        self.grapheme = grapheme
        self.offset = offset


class ConflictError(MotamotError):
    """Optimistic revision check failed; the caller should reload and retry."""

    def __init__(self, entry_id: str, expected: int, actual: int):
        super().__init__(
            f"revision conflict on {entry_id}: expected {expected}, stored {actual}"
        )
        self.entry_id = entry_id
        self.expected = expected
        self.actual = actual


class ImportError_(MotamotError, ValueError):
    """A volume import was rejected (duplicate id, malformed XML...)."""
