"""Counted arithmetic.

Methods in the lab call ``tally`` next to the arithmetic they perform. The
numbers themselves are ordinary floats, so a counted run and an uncounted run
give bit-identical results; only the tallies differ.

Set ``PERCOR_COUNT_OPS=0`` to turn ``tally`` into a no-op.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Any, Callable, Iterator

COUNT_OPS = os.getenv("PERCOR_COUNT_OPS", "1") != "0"


@dataclass
class OpCounter:
    """Non-negative tallies of the four operation kinds."""

    label: str = ""
    divisions: int = 0
    multiplications: int = 0
    additions: int = 0
    comparisons: int = 0

    def merge(self, other: "OpCounter") -> None:
        self.divisions += other.divisions
        self.multiplications += other.multiplications
        self.additions += other.additions
        self.comparisons += other.comparisons

    def __add__(self, other: "OpCounter") -> "OpCounter":
        total = OpCounter(self.label)
        total.merge(self)
        total.merge(other)
        return total

    def is_zero(self) -> bool:
        return not (self.divisions or self.multiplications or self.additions or self.comparisons)

    def as_dict(self) -> dict[str, int]:
        return {
            "divs": self.divisions,
            "muls": self.multiplications,
            "adds": self.additions,
            "cmps": self.comparisons,
        }


_active: ContextVar[OpCounter | None] = ContextVar("percor_op_counter", default=None)


def tally(div: int = 0, mul: int = 0, add: int = 0, cmp: int = 0) -> None:
    """Record operations against the innermost open scope, if any."""
    if not COUNT_OPS:
        return
    counter = _active.get()
    if counter is None:
        return
    counter.divisions += div
    counter.multiplications += mul
    counter.additions += add
    counter.comparisons += cmp


@contextmanager
def counting(label: str = "") -> Iterator[OpCounter]:
    """Open a counting scope. On exit the scope's totals are added to its parent."""
    parent = _active.get()
    counter = OpCounter(label)
    token = _active.set(counter)
    try:
        yield counter
    finally:
        _active.reset(token)
        if parent is not None:
            parent.merge(counter)


def counted_scope(label: str, body: Callable[..., Any], *args: Any, **kwargs: Any) -> tuple[Any, OpCounter]:
    """Run ``body`` inside a counting scope and return (result, counter)."""
    with counting(label) as counter:
        result = body(*args, **kwargs)
    return result, counter
