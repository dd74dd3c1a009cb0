"""Configurable caps, overridable through environment variables."""

from __future__ import annotations

import os

_PREFIX = "QUIVERCOVER_"

DEFAULT_SUBEXPR_CAP = 20
DEFAULT_NODE_CAP = 500
DEFAULT_REP_CAP = 4
DEFAULT_TIETZE_BUDGET = 200


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(_PREFIX + name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{_PREFIX + name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{_PREFIX + name} must be positive, got {value}")
    return value


def subexpr_cap() -> int:
    """Largest support size subexpression iteration will expand (2^n subsets)."""
    return _env_int("SUBEXPR_CAP", DEFAULT_SUBEXPR_CAP)


def node_cap() -> int:
    """Largest number of relation-graph nodes built before a capacity error."""
    return _env_int("NODE_CAP", DEFAULT_NODE_CAP)


def rep_cap() -> int:
    """Representative ideals retained per relation-graph node."""
    return _env_int("REP_CAP", DEFAULT_REP_CAP)


def tietze_budget() -> int:
    """Default elimination steps allowed to simplify_presentation."""
    return _env_int("TIETZE_BUDGET", DEFAULT_TIETZE_BUDGET)
