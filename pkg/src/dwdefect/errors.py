"""Exception hierarchy shared by the library and the command line front end."""


class DWError(Exception):
    """Base class for every error raised on purpose by this package."""

    exit_code = 3


class InputError(DWError, ValueError):
    """Malformed or inconsistent input data (bad tables, bad words, bad JSON)."""

    exit_code = 2


class ValidationError(InputError):
    """A structure failed one of its defining invariants at construction."""


class BudgetError(DWError):
    """An enumeration would exceed the configured work budget."""

    exit_code = 2


class ConsistencyError(DWError):
    """A numerical or combinatorial self-check failed during a computation."""

    exit_code = 3


class UnsupportedGroupError(DWError):
    """No built-in irreducible representation table covers this group."""

    exit_code = 3
