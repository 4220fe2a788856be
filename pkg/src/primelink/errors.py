"""Shared exception types."""


class Infeasible(RuntimeError):
    """A search or enumeration would exceed its configured budget or guard.

    Distinct from a negative result: raising Infeasible means the question
    was not decided at all.
    """


class RouteDisagreement(RuntimeError):
    """Two independent decision routes returned different answers.

    This is the strongest internal-consistency alarm the library has; it
    should never fire on a correct build.
    """
