"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ModulusMismatchError(ValueError):
    """Two residues with different moduli were combined."""


class InternalError(RuntimeError):
    """A checked mathematical fact failed; indicates a bug, never bad input."""


class OracleDisagreement(InternalError):
    """A congruence verdict contradicts the baseline primality oracle."""


class CheckpointError(RuntimeError):
    """A scan checkpoint is unreadable or inconsistent with its report file."""
