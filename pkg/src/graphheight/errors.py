"""Exception taxonomy shared by the library, service, and CLI.

Each error carries an ``exit_code`` so the CLI can map failures onto its
documented process exit codes without string matching.
"""


class GraphHeightError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class GraphInputError(GraphHeightError):
    """Malformed or invalid graph/scheme/PL input (bad syntax, dangling ids, ...)."""

    exit_code = 2


class DomainError(GraphHeightError):
    """Structurally valid input outside the operation's domain, e.g. a target
    height below the base of the achievable set."""

    exit_code = 3


class OracleBoundError(GraphHeightError):
    """An exhaustive oracle was asked to run past its configured bound."""

    exit_code = 4


class CircleInputError(GraphHeightError):
    """Raised by combinatorial operations that require a non-circle input.

    The circle's transformation group is not shadowed by a finite cell family,
    so callers must branch before invoking the automorphism engine.
    """

    exit_code = 2
