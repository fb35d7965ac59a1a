"""Exception hierarchy shared by every module in the package.

The command line maps any :class:`PivotAlignError` to exit code 2; the
HTTP service maps request-side failures to 400 and pipeline stage
failures to 422.
"""


class PivotAlignError(Exception):
    """Base class for all errors raised by this package."""


class OntologyError(PivotAlignError):
    """An ontology value violates an invariant (unknown IRI, bad reference)."""


class OntologyLoadError(OntologyError):
    """A document parsed, but its content is not a valid ontology.

    Raised for subclass cycles, conflicting declarations, duplicate
    labels for one language, and axioms whose predicate resolved to a
    non-property entity.
    """


class TurtleParseError(OntologyError):
    """Syntax error in a Turtle document, carrying a 1-based location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message, line, column)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class LexiconError(PivotAlignError):
    """A glossary, synonym, or stopword resource is missing or malformed."""


class MatchError(PivotAlignError):
    """A matcher precondition failed (missing pivot label, bad weights)."""


class AlignmentError(PivotAlignError):
    """An alignment value or alignment operation is invalid."""


class AlignmentFormatError(AlignmentError):
    """An alignment TSV document does not follow the expected format."""


class EvaluationError(PivotAlignError):
    """Evaluation or competency-check preconditions failed."""


class ConfigError(PivotAlignError):
    """A configuration document contains unknown keys or bad values."""


class StageError(PivotAlignError):
    """A pipeline stage failed; carries the stage name for reporting."""

    def __init__(self, stage: str, message: str):
        super().__init__(stage, message)
        self.stage = stage
        self.message = message

    def __str__(self) -> str:
        return f"{self.stage}: {self.message}"
