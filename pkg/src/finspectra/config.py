"""Caps, budgets, and the exceptions they raise.

Caps keep every construction at desk scale: the dimension cap bounds the
dimension of any simplicial set a product/smash is allowed to produce, and
the level cap bounds how far a truncated spectrum may be extended freely.
Both can be overridden through environment variables so batch runs can be
tightened without touching code.
"""

import os

DIM_CAP_ENV = "FINSPECTRA_DIM_CAP"
LEVEL_CAP_ENV = "FINSPECTRA_LEVEL_CAP"
BUDGET_ENV = "FINSPECTRA_BUDGET"

_DEFAULT_DIM_CAP = 10
_DEFAULT_LEVEL_CAP = 6
_DEFAULT_BUDGET = 200_000


class CapError(ValueError):
    """A construction would exceed the configured dimension or level cap."""


class BudgetError(RuntimeError):
    """An exhaustive enumeration exceeded its search budget.

    Raised instead of silently truncating; carries the number of search
    nodes explored when the budget ran out.
    """

    def __init__(self, message, explored=None):
        super().__init__(message)
        self.explored = explored


class InvalidInput(ValueError):
    """Malformed or contract-violating input (unpointed set, bad table, ...)."""


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{name} must be an integer, got {raw!r}")


def dim_cap():
    return _env_int(DIM_CAP_ENV, _DEFAULT_DIM_CAP)


def level_cap():
    return _env_int(LEVEL_CAP_ENV, _DEFAULT_LEVEL_CAP)


def default_budget():
    return _env_int(BUDGET_ENV, _DEFAULT_BUDGET)


def check_dim(d, what="construction"):
    if d > dim_cap():
        raise CapError(f"{what} would have dimension {d} > cap {dim_cap()}")


def check_level(n, what="spectrum level"):
    if n > level_cap():
        raise CapError(f"{what} {n} exceeds level cap {level_cap()}")
