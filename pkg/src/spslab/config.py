"""Run-wide limits.

``budget`` caps the number of subsets (or subset pairs) any exhaustive loop may
visit.  The default admits full enumeration of the power set for up to 16
states; ``SPSLAB_BUDGET`` overrides it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_BUDGET = 1 << 16
ENV_BUDGET = "SPSLAB_BUDGET"


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"{what}: needs {needed} enumeration steps, budget is {budget}; "
            "use the on-demand closure operations or raise --budget"
        )


@dataclass(frozen=True)
class Limits:
    budget: int = DEFAULT_BUDGET
    seed: int | None = None

    @classmethod
    def from_env(cls, budget: int | None = None, seed: int | None = None) -> "Limits":
        if budget is None:
            raw = os.environ.get(ENV_BUDGET)
            budget = int(raw) if raw else DEFAULT_BUDGET
        return cls(budget=budget, seed=seed)

    def allows(self, steps: int) -> bool:
        return steps <= self.budget

    def require(self, what: str, steps: int) -> None:
        if steps > self.budget:
            raise BudgetExceeded(what, steps, self.budget)


DEFAULT = Limits()
