"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GraphError(ValueError):
    """Invalid graph, map or partition."""


class PreconditionError(ValueError):
    """An operation was called on inputs outside its domain."""


class DisconnectedError(PreconditionError):
    """A connected graph was required."""


class SizeGuardError(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, what: str, bound: int, cap: int):
        self.what = what
        self.bound = bound
        self.cap = cap
        super().__init__(f"{what}: search space {bound} exceeds cap {cap}")
