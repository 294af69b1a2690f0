"""Exception taxonomy.

Input problems and solver refusals are kept apart so callers (the CLI
maps them to exit codes 2 and 3) can tell a bad file from a solver that
declined to run.
"""


class InputError(ValueError):
    """Malformed or invalid input (instance, strategy, certificate)."""


class SolverError(RuntimeError):
    """A solver could not produce a result for a well-formed input."""


class StateSpaceExceeded(SolverError):
    """Dynamic-programming state space above the configured cap."""


class BudgetExceeded(SolverError):
    """Brute-force enumeration would exceed its sequence/state budget."""


class AssumptionViolated(SolverError):
    """Structured solver preconditions (item ordering assumptions) fail."""


class OddSum(InputError):
    """Partition source multiset has an odd total."""


class NotTripletCount(InputError):
    """3-partition source multiset size is not 3*m."""
