"""Search-size guard shared by all brute-force procedures."""

from contextlib import contextmanager
from contextvars import ContextVar

from .errors import BoundExceeded

DEFAULT_MAX_CANDIDATES = 10**6

_limit: ContextVar[int] = ContextVar("max_candidates", default=DEFAULT_MAX_CANDIDATES)


def max_candidates() -> int:
    return _limit.get()


@contextmanager
def candidate_limit(n: int):
    """Temporarily change the search bound for the current context."""
    token = _limit.set(int(n))
    try:
        yield
    finally:
        _limit.reset(token)


class Budget:
    """Counts visited search nodes; raises BoundExceeded past the limit."""

    __slots__ = ("what", "limit", "count")

    def __init__(self, what: str, limit: int | None = None):
        self.what = what
        self.limit = max_candidates() if limit is None else limit
        self.count = 0

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.count > self.limit:
            raise BoundExceeded(self.what, self.count, self.limit)

    def check_raw(self, n: int) -> None:
        if n > self.limit:
            raise BoundExceeded(self.what, n, self.limit)
