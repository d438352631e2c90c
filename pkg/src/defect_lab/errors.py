"""Exception types shared across the library."""


class DefectLabError(Exception):
    """Base class for all library errors."""


class FormatError(DefectLabError, ValueError):
    """Malformed input text (graph6 or the native multipole format)."""


class NonCubicError(DefectLabError, ValueError):
    """A graph that was required to be cubic is not."""


class PreconditionError(DefectLabError, ValueError):
    """An operation was called outside its documented preconditions."""


class NoPerfectMatchingError(DefectLabError, ValueError):
    """The graph has no perfect matching, so the requested quantity is undefined."""


class NoCycleSeparatingCutError(DefectLabError, ValueError):
    """The graph does not contain two vertex-disjoint circuits."""


class ConsistencyError(DefectLabError, RuntimeError):
    """A computation contradicted a verified structural fact.

    Raised when an internal cross-check fails, e.g. a colouring count that
    should be divisible by 18 is not, or a reduction step does not preserve
    defect 3.  These indicate a bug (or a genuine mathematical discovery),
    never bad user input.
    """
