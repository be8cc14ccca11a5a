"""Process-wide numeric settings: work budget and floating tolerances."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, InputError

DEFAULT_BUDGET = 10**8


@dataclass
class Settings:
    budget: int = DEFAULT_BUDGET
    # matrix comparisons (projector idempotence, naturality, invariance)
    tol: float = 1e-9
    # rounding slack when a complex average must be an integer
    int_tol: float = 1e-6


settings = Settings()


def configure(budget: int | None = None, tol: float | None = None) -> None:
    if budget is not None:
        if budget < 10**4:
            raise InputError(f"budget must be at least 10^4, got {budget}")
        settings.budget = int(budget)
    if tol is not None:
        if not 1e-12 <= tol <= 1e-3:
            raise InputError(f"tolerance must lie in [1e-12, 1e-3], got {tol}")
        settings.tol = float(tol)


def resolve_budget(budget: int | None) -> int:
    return settings.budget if budget is None else int(budget)


def charge(used: int, budget: int | None, what: str) -> None:
    """Raise BudgetError when `used` elementary steps exceed the budget."""
    limit = resolve_budget(budget)
    if used > limit:
        raise BudgetError(f"{what}: {used} steps exceed the work budget of {limit}")
