"""Exception types raised by relbell."""


class RelBellError(Exception):
    """Base class for library errors."""


class DomainError(RelBellError, ValueError):
    """Input outside the physical or numerical domain (e.g. |beta| >= 1)."""


class DegenerateDirectionError(RelBellError, ValueError):
    """A direction vector is too short to normalize."""


class UnsupportedScenarioError(RelBellError, NotImplementedError):
    """No closed form exists for the requested scenario/state combination."""


class InvalidOperatorError(RelBellError, ValueError):
    """Operator is not Hermitian within tolerance."""
