"""Time and size budgets shared by the exhaustive searches."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class BudgetExceeded(RuntimeError):
    """A search hit its configured limit before finishing.

    Never means "no"; callers report it as a typed status.
    """

    def __init__(self, what: str, limit):
        super().__init__(f"{what} budget exceeded (limit {limit})")
        self.what = what
        self.limit = limit


@dataclass
class Budget:
    seconds: float | None = None
    max_vertices: int = 200
    max_group_cap: int = 64
    max_search_space: float = 1e8
    max_hamiltonian_vertices: int = 24
    _start: float = field(default_factory=time.monotonic, repr=False)

    def restart(self) -> "Budget":
        self._start = time.monotonic()
        return self

    def check_time(self) -> None:
        if self.seconds is not None and time.monotonic() - self._start > self.seconds:
            raise BudgetExceeded("time", self.seconds)

    def remaining(self) -> float | None:
        if self.seconds is None:
            return None
        return max(0.0, self.seconds - (time.monotonic() - self._start))

    def check_vertices(self, n: int) -> None:
        if n > self.max_vertices:
            raise BudgetExceeded("vertex", self.max_vertices)


DEFAULT = Budget()
