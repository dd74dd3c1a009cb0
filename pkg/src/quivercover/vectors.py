"""Exact linear combinations of parallel paths.

A PathVector is an element of one hom-space of the path algebra over the
rationals: a finite map from parallel paths to nonzero Fraction coefficients.
Terms are kept sorted descending in the weight order, so the largest support
path is always the first one read.  Scalars are exact; floats are rejected.
"""

from __future__ import annotations

from fractions import Fraction

from . import config
from .errors import CapacityError, DomainError
from .order import path_weight_key
from .quiver import Path, Quiver, concat_paths


def as_scalar(value) -> Fraction:
    if isinstance(value, float):
        raise DomainError("floating point scalars are not accepted")
    return Fraction(value)


class PathVector:
    """An immutable rational combination of parallel paths."""

    __slots__ = ("quiver", "source", "target", "_terms")

    def __init__(self, quiver: Quiver, source: str, target: str, terms: dict):
        self.quiver = quiver
        self.source = source
        self.target = target
        ordered = sorted(
            terms.items(), key=lambda item: path_weight_key(quiver, item[0]), reverse=True
        )
        self._terms = {path: coeff for path, coeff in ordered if coeff}

    # -- construction --------------------------------------------------------

    @classmethod
    def build(cls, quiver: Quiver, terms, source=None, target=None) -> "PathVector":
        """Normal form of a list of (scalar, path) terms; merges and drops zeros."""
        acc: dict[Path, Fraction] = {}
        for scalar, path in terms:
            scalar = as_scalar(scalar)
            if source is None:
                source, target = path.source, path.target
            elif (path.source, path.target) != (source, target):
                raise DomainError("terms of a vector must be parallel")
            acc[path] = acc.get(path, Fraction(0)) + scalar
        if source is None:
            raise DomainError("a zero vector needs explicit endpoints")
        return cls(quiver, source, target, acc)

    @classmethod
    def zero(cls, quiver: Quiver, source: str, target: str) -> "PathVector":
        return cls(quiver, str(source), str(target), {})

    @classmethod
    def unit(cls, quiver: Quiver, vertex: str) -> "PathVector":
        e = quiver.stationary(vertex)
        return cls(quiver, e.source, e.target, {e: Fraction(1)})

    @classmethod
    def single(cls, quiver: Quiver, scalar, path: Path) -> "PathVector":
        return cls(quiver, path.source, path.target, {path: as_scalar(scalar)})

    # -- inspection ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self):
        """(path, coefficient) pairs, descending in the weight order."""
        return tuple(self._terms.items())

    def support(self) -> tuple[Path, ...]:
        return tuple(self._terms)

    def coefficient(self, path: Path) -> Fraction:
        return self._terms.get(path, Fraction(0))

    def max_support(self) -> Path:
        if not self._terms:
            raise DomainError("the zero vector has no support")
        return next(iter(self._terms))

    def min_length(self) -> int:
        return min((p.length for p in self._terms), default=0)

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "PathVector") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise DomainError("vectors live in different hom-spaces")

    def __add__(self, other: "PathVector") -> "PathVector":
        self._check_compatible(other)
        acc = dict(self._terms)
        for path, coeff in other._terms.items():
            acc[path] = acc.get(path, Fraction(0)) + coeff
        return PathVector(self.quiver, self.source, self.target, acc)

    def __sub__(self, other: "PathVector") -> "PathVector":
        return self + (-other)

    def __neg__(self) -> "PathVector":
        return self.scaled(Fraction(-1))

    def scaled(self, scalar) -> "PathVector":
        scalar = as_scalar(scalar)
        if not scalar:
            return PathVector.zero(self.quiver, self.source, self.target)
        return PathVector(
            self.quiver,
            self.source,
            self.target,
            {path: coeff * scalar for path, coeff in self._terms.items()},
        )

    def __rmul__(self, scalar) -> "PathVector":
        return self.scaled(scalar)

    def then(self, other: "PathVector") -> "PathVector":
        """Concatenation product: ``self`` crossed first, then ``other``."""
        if self.target != other.source:
            raise DomainError("vectors do not compose")
        acc: dict[Path, Fraction] = {}
        for p, c in self._terms.items():
            for qq, d in other._terms.items():
                joined = concat_paths(p, qq)
                acc[joined] = acc.get(joined, Fraction(0)) + c * d
        return PathVector(self.quiver, self.source, other.target, acc)

    def restricted(self, paths) -> "PathVector":
        """The subexpression carried by the given support paths."""
        keep = set(paths)
        return PathVector(
            self.quiver,
            self.source,
            self.target,
            {p: c for p, c in self._terms.items() if p in keep},
        )

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PathVector)
            and self.quiver is other.quiver
            and (self.source, self.target) == (other.source, other.target)
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PathVector(0: {self.source}->{self.target})"
        bits = []
        for path, coeff in self._terms.items():
            word = "e_" + path.source if path.is_stationary else "".join(reversed(path.arrows))
            bits.append(f"{coeff}*{word}")
        return "PathVector(" + " + ".join(bits) + ")"


def normal_form(quiver: Quiver, terms, source=None, target=None) -> PathVector:
    return PathVector.build(quiver, terms, source, target)


def coefficient(r: PathVector, u: Path) -> Fraction:
    return r.coefficient(u)


def concatenate(r: PathVector, s: PathVector) -> PathVector:
    return r.then(s)


def subexpressions(r: PathVector, cap: int | None = None):
    """All subexpressions of ``r``: one per subset of its support.

    Iterates subset bitmasks over the support sorted ascending in the weight
    order, so the first item is the zero vector and the last is ``r`` itself.
    """
    if cap is None:
        cap = config.subexpr_cap()
    support = sorted(r.support(), key=lambda p: path_weight_key(r.quiver, p))
    if len(support) > cap:
        raise CapacityError(
            f"support of size {len(support)} exceeds the subexpression cap {cap}"
        )
    for mask in range(1 << len(support)):
        keep = [p for i, p in enumerate(support) if mask >> i & 1]
        yield r.restricted(keep)
