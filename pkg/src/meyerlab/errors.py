"""Exception types shared across the package."""


class MeyerlabError(Exception):
    """Base class for all package errors."""


class ConfigError(MeyerlabError):
    """Malformed or inconsistent system configuration."""


class ContextMismatchError(MeyerlabError):
    """Arithmetic between scalars attached to different generator contexts."""


class PrecisionError(MeyerlabError):
    """A certified numeric decision could not be made at the precision cap."""


class NonExpansiveError(MeyerlabError):
    """The expansion map has an eigenvalue of modulus <= 1."""


class OverlapError(MeyerlabError):
    """Disjointness of the substitution unions failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WindowError(MeyerlabError):
    """A window/radius precondition was violated."""


class RankError(MeyerlabError):
    """A generator family does not span the ambient space."""


class NotPisotError(MeyerlabError):
    """An operation requiring a Pisot number received something else."""


class GenerationError(MeyerlabError):
    """Patch generation could not proceed (e.g. no generating cluster)."""
