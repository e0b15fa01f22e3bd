"""Size caps and the exception hierarchy shared by every module."""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace


class CorrError(Exception):
    """Base class for all errors raised by the package."""


class CategoryError(CorrError):
    """Structurally malformed input (unknown ids, missing identities, bad typing)."""


class CompositionError(CorrError):
    """Attempt to compose a non-composable pair or a pair missing from the table."""


class MissingLimit(CorrError):
    """A pullback, product or terminal object required by an operation is absent."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(CorrError):
    """A construction would exceed the configured size caps."""


@dataclass(frozen=True)
class Limits:
    # caps for categories that come from user input or fixtures
    max_objects: int = 64
    max_morphisms: int = 4096
    max_level: int = 4
    # caps for categories built internally (functor categories, slices, totals)
    max_derived_objects: int = 20000
    max_derived_morphisms: int = 400000


_LIMITS: ContextVar[Limits] = ContextVar("corrcat_limits", default=Limits())


def current_limits() -> Limits:
    return _LIMITS.get()


@contextmanager
def limits(**overrides):
    """Temporarily override size caps, e.g. ``with limits(max_objects=128): ...``."""
    token = _LIMITS.set(replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)
