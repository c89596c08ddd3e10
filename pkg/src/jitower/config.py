"""Computation caps and the errors they raise.

Caps are configuration, not math: breaching one is always surfaced, either as
a CapExceeded error from the primitive or as a skipped-with-reason verdict in
a verification report.  Enlarging a cap can only turn skips into verdicts,
never flip pass and fail.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Caps", "DEFAULT_CAPS", "CapExceeded", "InvalidHom"]


@dataclass(frozen=True)
class Caps:
    """Size limits for lattice and subgroup enumeration work."""

    max_order: int = 1_000_000
    max_subgroup_order: int = 10_000
    enumeration_cap: int = 100_000

    def replace(self, **kw) -> "Caps":
        from dataclasses import replace

        return replace(self, **kw)


DEFAULT_CAPS = Caps()


class CapExceeded(RuntimeError):
    """A configured cap was breached; carries what was attempted."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


class InvalidHom(ValueError):
    """Generator images do not extend to a homomorphism."""
