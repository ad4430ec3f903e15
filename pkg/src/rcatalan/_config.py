"""Enumeration budgets and the exceptions raised when they are exceeded.

Every budget can be overridden from the environment (``MAX_WEYL``,
``MAX_POINTS``, ``MAX_DEGREE``, ``MAX_MACDONALD``, ``MAX_PARKING``,
``MAX_DYCK``) or per call.
"""
from __future__ import annotations

import os


class BudgetError(ValueError):
    """A requested enumeration is larger than the configured budget."""


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def max_weyl() -> int:
    return _env_int("MAX_WEYL", 10**7)


def max_points() -> int:
    return _env_int("MAX_POINTS", 10**8)


def max_degree() -> int:
    return _env_int("MAX_DEGREE", 9)


def max_macdonald() -> int:
    return _env_int("MAX_MACDONALD", 8)


def max_parking() -> int:
    return _env_int("MAX_PARKING", 8)


def max_dyck() -> int:
    return _env_int("MAX_DYCK", 12)
