"""Cooperative time limits for long computations."""
from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar

_deadline: ContextVar[float | None] = ContextVar("hkcalc_deadline", default=None)


class TaskTimeout(TimeoutError):
    """The computation ran past its deadline; partial results are discarded."""


def check_deadline() -> None:
    d = _deadline.get()
    if d is not None and time.monotonic() > d:
        raise TaskTimeout("time limit exceeded")


@contextmanager
def time_limit(seconds: float | None):
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)
