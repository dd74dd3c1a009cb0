"""Vertex-fixing algebra automorphisms given by arrow substitutions.

An arrow substitution sends every arrow to a vector parallel to it and
extends multiplicatively to paths.  Transvections add a scalar multiple of a
bypass path to one arrow; dilatations rescale arrows.  Every product of
transvections has arrow images of the shape "arrow + longer terms", and such
a substitution is rewritten canonically as a decreasing product: factors
strictly increasing in the bypass order, applied smallest first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    HypothesisError,
    NotInvertibleError,
    NotTransvectionProductError,
)
from .order import bypass_weight_key
from .quiver import Bypass, Path, Quiver
from .vectors import PathVector, as_scalar


class ArrowSubstitution:
    """A vertex-fixing endomorphism determined by parallel arrow images.

    On quivers without multiple arrows a nonzero diagonal coefficient on every
    arrow certifies invertibility, and the constructor enforces it.  With
    multiple arrows that check is neither sufficient nor necessary, so it is
    left to :meth:`invert`, which solves each hom-space exactly.
    """

    __slots__ = ("quiver", "images")

    def __init__(self, quiver: Quiver, images: dict):
        quiver._require_acyclic()
        complete = {}
        for arrow in quiver.arrows:
            image = images.get(arrow.label)
            if image is None:
                image = PathVector.single(quiver, 1, quiver.arrow_path(arrow.label))
            if (image.source, image.target) != (arrow.source, arrow.target):
                raise DomainError(f"image of {arrow.label} is not parallel to it")
            complete[arrow.label] = image
        if not quiver.has_multiple_arrows:
            for arrow in quiver.arrows:
                if not complete[arrow.label].coefficient(quiver.arrow_path(arrow.label)):
                    raise NotInvertibleError(
                        f"image of {arrow.label} has zero coefficient on the arrow"
                    )
        self.quiver = quiver
        self.images = complete

    @classmethod
    def identity(cls, quiver: Quiver) -> "ArrowSubstitution":
        return cls(quiver, {})

    @property
    def is_identity(self) -> bool:
        return all(
            self.images[a.label] == PathVector.single(self.quiver, 1, self.quiver.arrow_path(a.label))
            for a in self.quiver.arrows
        )

    # -- action ---------------------------------------------------------------

    def apply_path(self, path: Path) -> PathVector:
        acc = PathVector.unit(self.quiver, path.source)
        for label in path.arrows:
            acc = acc.then(self.images[label])
        return acc

    def apply(self, r: PathVector) -> PathVector:
        out = PathVector.zero(self.quiver, r.source, r.target)
        for path, coeff in r.terms():
            out = out + self.apply_path(path).scaled(coeff)
        return out

    def compose(self, other: "ArrowSubstitution") -> "ArrowSubstitution":
        """self after other: (self . other)(x) = self(other(x))."""
        if self.quiver is not other.quiver:
            raise DomainError("substitutions live on different quivers")
        images = {
            a.label: self.apply(other.images[a.label]) for a in self.quiver.arrows
        }
        return ArrowSubstitution(self.quiver, images)

    def invert(self) -> "ArrowSubstitution":
        """Exact inverse, solving each hom-space that contains an arrow."""
        q = self.quiver
        images: dict[str, PathVector] = {}
        solved: dict[tuple[str, str], dict[str, PathVector]] = {}
        for arrow in q.arrows:
            hom = (arrow.source, arrow.target)
            if hom not in solved:
                solved[hom] = self._invert_hom(hom)
            images[arrow.label] = solved[hom][arrow.label]
        inverse = ArrowSubstitution(q, images)
        for arrow in q.arrows:
            image = self.apply(inverse.images[arrow.label])
            if image != PathVector.single(q, 1, q.arrow_path(arrow.label)):
                raise NotInvertibleError("substitution is not invertible")
        return inverse

    def _invert_hom(self, hom) -> dict[str, PathVector]:
        q = self.quiver
        basis = [p for p in q.paths_between(*hom) if not p.is_stationary]
        index = {p: i for i, p in enumerate(basis)}
        n = len(basis)
        # Column j holds the image of basis path j; augment with the identity.
        matrix = [[Fraction(0)] * n for _ in range(n)]
        for j, p in enumerate(basis):
            for path, coeff in self.apply_path(p).terms():
                matrix[index[path]][j] = coeff
        aug = [row + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(matrix)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise NotInvertibleError("substitution is singular on a hom-space")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            scale = aug[col][col]
            aug[col] = [x / scale for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
        out = {}
        for arrow in q.arrows:
            if (arrow.source, arrow.target) != hom:
                continue
            j = index[q.arrow_path(arrow.label)]
            terms = [(aug[i][n + j], basis[i]) for i in range(n) if aug[i][n + j]]
            out[arrow.label] = PathVector.build(q, terms, hom[0], hom[1])
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ArrowSubstitution)
            and self.quiver is other.quiver
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.images.items()))

    def __repr__(self) -> str:
        nontrivial = {
            label: image
            for label, image in self.images.items()
            if image != PathVector.single(self.quiver, 1, self.quiver.arrow_path(label))
        }
        return f"ArrowSubstitution({nontrivial or 'identity'})"


def transvection(q: Quiver, bypass, tau) -> ArrowSubstitution:
    """arrow -> arrow + tau * bypass path; tau = 0 yields the identity."""
    if not isinstance(bypass, Bypass):
        bypass = q.bypass(*bypass)
    else:
        bypass = q.bypass(bypass.arrow, bypass.path)
    tau = as_scalar(tau)
    image = PathVector.build(
        q, [(Fraction(1), q.arrow_path(bypass.arrow)), (tau, bypass.path)]
    )
    return ArrowSubstitution(q, {bypass.arrow: image})


def dilatation(q: Quiver, scales: dict) -> ArrowSubstitution:
    """Rescale arrows by nonzero scalars; unlisted arrows keep scale one."""
    images = {}
    for label, scale in scales.items():
        scale = as_scalar(scale)
        if not scale:
            raise DomainError("dilatation scales must be nonzero")
        images[label] = PathVector.single(q, scale, q.arrow_path(label))
    return ArrowSubstitution(q, images)


def apply(psi: ArrowSubstitution, r: PathVector) -> PathVector:
    return psi.apply(r)


def compose(psi: ArrowSubstitution, chi: ArrowSubstitution) -> ArrowSubstitution:
    return psi.compose(chi)


def invert(psi: ArrowSubstitution) -> ArrowSubstitution:
    return psi.invert()


def evaluate_word(q: Quiver, factors) -> ArrowSubstitution:
    """Evaluate a transvection word written leftmost-first; the rightmost
    factor acts first.  Factors are (Bypass, scalar) pairs or (arrow, path,
    scalar) triples."""
    acc = ArrowSubstitution.identity(q)
    for factor in factors:
        if len(factor) == 2:
            bypass, tau = factor
        else:
            arrow, path, tau = factor
            bypass = q.bypass(arrow, path)
        acc = acc.compose(transvection(q, bypass, tau))
    return acc


@dataclass(frozen=True)
class DecreasingProduct:
    """A product of transvections, factors strictly increasing in the bypass
    order and listed in application order (smallest factor acts first)."""

    quiver: Quiver
    factors: tuple[tuple[Bypass, Fraction], ...]

    def __post_init__(self):
        q = self.quiver
        q._require_simple()
        for b, _ in self.factors:
            q.bypass(b.arrow, b.path)
        keys = [bypass_weight_key(q, b) for b, _ in self.factors]
        if any(second <= first for first, second in zip(keys, keys[1:])):
            raise DomainError("factors must be strictly increasing in the bypass order")
        if any(not tau for _, tau in self.factors):
            raise DomainError("factors must carry nonzero scalars")

    def as_substitution(self) -> ArrowSubstitution:
        acc = ArrowSubstitution.identity(self.quiver)
        for bypass, tau in self.factors:
            acc = transvection(self.quiver, bypass, tau).compose(acc)
        return acc

    def triples(self) -> tuple[tuple[str, Path, Fraction], ...]:
        return tuple((b.arrow, b.path, tau) for b, tau in self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def decreasing_normal_form(q: Quiver, psi) -> DecreasingProduct:
    """Canonical decreasing product equal to ``psi``.

    ``psi`` may be an ArrowSubstitution, a DecreasingProduct, or a
    leftmost-first transvection word as accepted by :func:`evaluate_word`.
    Raises NotTransvectionProductError when the images are not of the shape
    arrow + combination of longer parallel paths with unit diagonal.
    """
    q._require_simple()
    if isinstance(psi, DecreasingProduct):
        psi = psi.as_substitution()
    elif not isinstance(psi, ArrowSubstitution):
        psi = evaluate_word(q, psi)
    harvested = []
    for label in q.arrow_order:
        image = psi.images[label]
        arrow_path = q.arrow_path(label)
        if image.coefficient(arrow_path) != 1:
            raise NotTransvectionProductError(
                f"image of {label} has diagonal coefficient {image.coefficient(arrow_path)}"
            )
        for path, coeff in image.terms():
            if path == arrow_path:
                continue
            if path.length < 2:
                raise NotTransvectionProductError(
                    f"image of {label} carries the parallel arrow term {path!r}"
                )
            harvested.append((Bypass(label, path), coeff))
    harvested.sort(key=lambda item: bypass_weight_key(q, item[0]))
    product = DecreasingProduct(q, tuple(harvested))
    if product.as_substitution() != psi:
        raise NotTransvectionProductError(
            "images are not realized by any product of transvections"
        )
    return product
