"""The weight order on paths and the induced order on bypasses.

The weight of an arrow is the number of its bypasses; path weight adds arrow
weights.  Paths compare by weight first, then lexicographically on their
composition strings read right to left (the reverse of traversal order), with
a proper prefix preceding its extensions.  Bypasses compare by arrow first
(as length-one paths), then by bypass path.

Public comparisons require an acyclic quiver without multiple arrows.  The
same construction doubles as the internal basis order of the Groebner engine,
where it is used without the multiplicity gate.
"""

from __future__ import annotations

from .errors import DomainError
from .quiver import Bypass, Path, Quiver


def path_weight_key(q: Quiver, u: Path):
    """Ungated sort key realizing the weight order (ascending)."""
    weight = sum(q.arrow_weight(label) for label in u.arrows)
    reversed_indices = tuple(q.order_index(label) for label in reversed(u.arrows))
    return (weight, reversed_indices)


def bypass_weight_key(q: Quiver, b: Bypass):
    return (path_weight_key(q, q.arrow_path(b.arrow)), path_weight_key(q, b.path))


def weight(q: Quiver, u: Path) -> int:
    """Total weight of a nontrivial path."""
    q._require_simple()
    if u.is_stationary:
        raise DomainError("stationary paths have no weight")
    return sum(q.arrow_weight(label) for label in u.arrows)


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def compare_paths(q: Quiver, u: Path, v: Path) -> int:
    """-1, 0 or 1 according to the weight order on nontrivial paths."""
    q._require_simple()
    if u.is_stationary or v.is_stationary:
        raise DomainError("the path order compares nontrivial paths only")
    return _sign(path_weight_key(q, u), path_weight_key(q, v))


def compare_bypasses(q: Quiver, a: Bypass, b: Bypass) -> int:
    q._require_simple()
    return _sign(bypass_weight_key(q, a), bypass_weight_key(q, b))


def sorted_bypasses(q: Quiver) -> list[Bypass]:
    """All bypasses of the quiver, ascending."""
    q._require_simple()
    return sorted(q.bypasses(), key=lambda b: bypass_weight_key(q, b))
