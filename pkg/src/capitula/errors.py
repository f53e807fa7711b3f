"""Exception hierarchy shared by all capitula modules.

The command line maps these onto exit codes: ValidationError and
HypothesisError (and their subclasses) exit with 2, ResourceError with 3,
anything malformed on the way in (bad JSON, bad flags) with 1.
"""


class CapitulaError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CapitulaError):
    """Input data violates a structural invariant (bad matrix shape,
    inconsistent local data, malformed homomorphism)."""


class HypothesisError(CapitulaError):
    """A calculator was invoked outside the hypotheses of the statement
    it implements (e.g. a cyclic-only formula on a non-cyclic group)."""


class InconsistencyError(CapitulaError):
    """Supplied quantities contradict an exact identity they must satisfy."""


class DegenerateExtensionError(ValidationError):
    """The defining data describes a split (trivial) extension."""


class UnsupportedError(CapitulaError):
    """The request is well-formed but outside the implemented range."""


class ResourceError(CapitulaError):
    """A configured resource cap was exceeded."""
