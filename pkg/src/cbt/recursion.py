"""Explicit-stack driver for memoized recursive computations.

A task is a generator that yields the keys whose values it needs and
receives each value back through ``send``.  The driver keeps its own stack,
so recursion depth is bounded by memory rather than the interpreter.
"""

from __future__ import annotations

from typing import Any, Generator, Hashable, Protocol

__all__ = ["AlgorithmError", "Memoized", "drive"]


class AlgorithmError(RuntimeError):
    """An internal invariant failed; indicates a bug rather than bad input."""


class Memoized(Protocol):
    def _lookup(self, key: Hashable) -> Any | None: ...

    def _task(self, key: Hashable) -> Generator: ...

    def _store(self, key: Hashable, value: Any) -> Any: ...


def drive(owner: Memoized, root: Generator) -> Any:
    stack: list[tuple[Hashable | None, Generator]] = [(None, root)]
    active: set = set()
    value = None
    while True:
        key, gen = stack[-1]
        try:
            request = gen.send(value)
        except StopIteration as stop:
            stack.pop()
            value = stop.value
            if key is not None:
                active.discard(key)
                value = owner._store(key, value)
            if not stack:
                return value
            continue
        hit = owner._lookup(request)
        if hit is not None:
            value = hit
            continue
        if request in active:
            raise AlgorithmError(f"cyclic dependency while computing {request!r}")
        active.add(request)
        stack.append((request, owner._task(request)))
        value = None
