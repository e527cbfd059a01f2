class DagcatError(Exception):
    """Base class for errors raised by dagcat."""


class BoundaryError(DagcatError, ValueError):
    """Morphisms whose domains/codomains do not fit together."""


class BackendError(DagcatError, ValueError):
    """Morphisms from different backends were combined."""


class LawError(DagcatError):
    """A structure did not satisfy a law required as a precondition."""


class ExtractionError(DagcatError):
    """A Frobenius monoid in Rel could not be decoded into a groupoid."""
