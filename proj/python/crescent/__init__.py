"""Crescent configuration search."""

import json

from crescent._core import (
    BudgetExceeded,
    InvalidArgument,
    Overflow,
    __version__,
    count_matrices,
    s_allowed,
    verify,
)
from crescent import _core


def classify(n, jobs=1):
    """Classification report for n points."""
    return json.loads(_core.classify_json(n, jobs))


def realize(n, seed=42, starts=200, jobs=1):
    """Realizable census for n points."""
    return json.loads(_core.realize_json(n, seed, starts, jobs))


def rigidity(census):
    """Rigidity reports for a census returned by realize()."""
    return json.loads(_core.rigidity_json(json.dumps(census)))


__all__ = [
    "BudgetExceeded",
    "InvalidArgument",
    "Overflow",
    "__version__",
    "classify",
    "count_matrices",
    "realize",
    "rigidity",
    "s_allowed",
    "verify",
]
