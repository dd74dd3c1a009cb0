"""Admissible ideals, reduced Groebner bases, and canonical transvection products.

An admissible ideal is stored as one reduced basis per hom-space: elements are
monic on their leading path (the largest support path in the weight order),
leading paths are pairwise distinct, and no leading path occurs in another
basis element.  That basis is unique, so ideal equality is table equality, and
membership reads coordinates directly off leading-path coefficients.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import config
from .autos import ArrowSubstitution, DecreasingProduct, decreasing_normal_form, transvection
from .errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    HypothesisError,
    NotConjugateError,
    SeedError,
)
from .order import bypass_weight_key, path_weight_key
from .quiver import Bypass, Path, Quiver, replace_arrow, derivation_order
from .vectors import PathVector


class AdmissibleIdeal:
    """A two-sided ideal of the path algebra spanned by length >= 2 relations."""

    __slots__ = ("quiver", "generators", "_tables")

    def __init__(self, quiver: Quiver, generators, tables):
        self.quiver = quiver
        self.generators = tuple(generators)
        self._tables = tables

    @classmethod
    def from_generators(cls, quiver: Quiver, generators) -> "AdmissibleIdeal":
        """Close the given relations under multiplication by arrows on both sides."""
        quiver._require_acyclic()
        gens = []
        for g in generators:
            if not isinstance(g, PathVector):
                raise DomainError("generators must be path vectors")
            if g.is_zero:
                continue
            if g.min_length() < 2:
                raise DomainError("admissible generators combine paths of length >= 2")
            gens.append(g)
        tables: dict[tuple[str, str], dict[Path, PathVector]] = {}
        pending = deque(gens)
        while pending:
            vec = pending.popleft()
            if _insert(quiver, tables, vec):
                for arrow in quiver.out_arrows(vec.target):
                    pending.append(vec.then(PathVector.single(quiver, 1, quiver.arrow_path(arrow.label))))
                for arrow in quiver.in_arrows(vec.source):
                    pending.append(PathVector.single(quiver, 1, quiver.arrow_path(arrow.label)).then(vec))
        return cls(quiver, gens, tables)

    # -- inspection ----------------------------------------------------------

    def hom_table(self, source: str, target: str) -> dict:
        return self._tables.get((str(source), str(target)), {})

    def hom_keys(self):
        return sorted(self._tables, key=self.quiver._hom_key)

    def basis(self):
        """All reduced-basis elements, hom-spaces in vertex order, leads ascending."""
        out = []
        for key in self.hom_keys():
            table = self._tables[key]
            leads = sorted(table, key=lambda p: path_weight_key(self.quiver, p))
            out.extend(table[lead] for lead in leads)
        return out

    def dimensions(self) -> dict:
        return {key: len(self._tables[key]) for key in self.hom_keys()}

    @property
    def is_zero(self) -> bool:
        return not self._tables

    @property
    def is_monomial(self) -> bool:
        """True when the ideal is spanned by the paths it contains."""
        return all(
            len(vec.support()) == 1
            for table in self._tables.values()
            for vec in table.values()
        )

    def monomial_paths(self) -> set[Path]:
        if not self.is_monomial:
            raise DomainError("ideal is not monomial")
        return {lead for table in self._tables.values() for lead in table}

    # -- membership ----------------------------------------------------------

    def reduce(self, r: PathVector) -> PathVector:
        """Residual of ``r`` after subtracting its leading-path coordinates."""
        table = self._tables.get((r.source, r.target), {})
        residual = r
        for lead, vec in table.items():
            coeff = r.coefficient(lead)
            if coeff:
                residual = residual - vec.scaled(coeff)
        return residual

    def membership(self, r: PathVector):
        """(member, coordinates); coordinates pair each leading path with the
        coefficient of ``r`` on it, nonzero entries only."""
        table = self._tables.get((r.source, r.target), {})
        coords = []
        residual = r
        for lead in sorted(table, key=lambda p: path_weight_key(self.quiver, p)):
            coeff = r.coefficient(lead)
            if coeff:
                coords.append((lead, coeff))
                residual = residual - table[lead].scaled(coeff)
        if residual.is_zero:
            return True, tuple(coords)
        return False, None

    def contains(self, r: PathVector) -> bool:
        return self.membership(r)[0]

    # -- transforms ----------------------------------------------------------

    def transformed(self, psi: ArrowSubstitution) -> "AdmissibleIdeal":
        """Image ideal under an automorphism; the basis images already span it,
        so no two-sided closure pass is needed."""
        tables: dict[tuple[str, str], dict[Path, PathVector]] = {}
        for vec in self.basis():
            _insert(self.quiver, tables, psi.apply(vec))
        return AdmissibleIdeal(
            self.quiver, tuple(psi.apply(g) for g in self.generators), tables
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AdmissibleIdeal)
            and self.quiver is other.quiver
            and self._tables == other._tables
        )

    def __hash__(self) -> int:
        return hash(
            frozenset((key, frozenset(table.items())) for key, table in self._tables.items())
        )

    def __repr__(self) -> str:
        gens = ", ".join(repr(g) for g in self.generators)
        return f"AdmissibleIdeal<{gens}>"


def _insert(quiver: Quiver, tables, vec: PathVector) -> bool:
    """Reduce ``vec`` against the table and insert when independent."""
    if vec.is_zero:
        return False
    if vec.min_length() < 2:
        raise DomainError("ideal insertion produced a short relation")
    key = (vec.source, vec.target)
    table = tables.setdefault(key, {})
    changed = True
    while changed:
        changed = False
        for path in vec.support():
            hit = table.get(path)
            if hit is not None:
                vec = vec - hit.scaled(vec.coefficient(path))
                changed = True
                break
    if vec.is_zero:
        if not table:
            del tables[key]
        return False
    lead = vec.max_support()
    vec = vec.scaled(1 / vec.coefficient(lead))
    for other_lead, other in list(table.items()):
        coeff = other.coefficient(lead)
        if coeff:
            table[other_lead] = other - vec.scaled(coeff)
    table[lead] = vec
    return True


def ideal_from_generators(quiver: Quiver, generators) -> AdmissibleIdeal:
    return AdmissibleIdeal.from_generators(quiver, generators)


def membership(ideal: AdmissibleIdeal, r: PathVector):
    return ideal.membership(r)


def is_monomial(ideal: AdmissibleIdeal) -> bool:
    return ideal.is_monomial


@dataclass(frozen=True)
class MinimalRelation:
    vector: PathVector

    @property
    def is_monomial(self) -> bool:
        return len(self.vector.support()) == 1


def minimal_relations(ideal: AdmissibleIdeal, r: PathVector, cap: int | None = None):
    """Decompose a member of the ideal into minimal relations with pairwise
    disjoint supports.  Greedy: repeatedly split off the smallest-support
    subexpression lying in the ideal (such a piece cannot itself decompose)."""
    if cap is None:
        cap = config.subexpr_cap()
    if not ideal.contains(r):
        raise DomainError("element does not belong to the ideal")
    parts = []
    remaining = r
    while not remaining.is_zero:
        support = sorted(
            remaining.support(), key=lambda p: path_weight_key(ideal.quiver, p)
        )
        if len(support) > cap:
            raise CapacityError(
                f"support of size {len(support)} exceeds the subexpression cap {cap}"
            )
        piece = None
        for size in range(1, len(support) + 1):
            for subset in combinations(support, size):
                candidate = remaining.restricted(subset)
                if ideal.contains(candidate):
                    piece = candidate
                    break
            if piece is not None:
                break
        if piece is None:
            raise ConsistencyError("ideal member admits no minimal subexpression")
        parts.append(MinimalRelation(piece))
        remaining = remaining - piece
    return parts


def is_minimal_relation(ideal: AdmissibleIdeal, r: PathVector, cap: int | None = None) -> bool:
    """True when ``r`` is a nonzero member with no proper nonzero subexpression
    in the ideal."""
    if r.is_zero or not ideal.contains(r):
        return False
    if cap is None:
        cap = config.subexpr_cap()
    support = sorted(r.support(), key=lambda p: path_weight_key(ideal.quiver, p))
    if len(support) > cap:
        raise CapacityError(
            f"support of size {len(support)} exceeds the subexpression cap {cap}"
        )
    for size in range(1, len(support)):
        for subset in combinations(support, size):
            if ideal.contains(r.restricted(subset)):
                return False
    return True


def seed_relations(ideal: AdmissibleIdeal):
    """A generating family of minimal relations: the reduced-basis elements.

    Cross-elimination makes every basis element minimal, and any minimal
    relation's support stays inside one connected component of the basis
    supports, so these elements seed the same homotopy closure as the full
    (exponentially large) set of minimal relations.
    """
    return [MinimalRelation(vec) for vec in ideal.basis()]


def groebner_structure(monomial_ideal: AdmissibleIdeal, ideal: AdmissibleIdeal) -> dict:
    """For an image of a monomial ideal under a transvection product, the map
    leading-path -> basis element is a bijection from the monomial paths, and
    every lower support path is derived of its lead.  Returns {lead: element}
    and raises NotConjugateError when the structure fails."""
    q = monomial_ideal.quiver
    q._require_simple()
    if not monomial_ideal.is_monomial:
        raise DomainError("reference ideal must be monomial")
    if q is not ideal.quiver:
        raise DomainError("ideals live on different quivers")
    reference = monomial_ideal.monomial_paths()
    leads = {vec.max_support() for vec in ideal.basis()}
    if leads != reference:
        missing = sorted(reference - leads, key=lambda p: path_weight_key(q, p))
        extra = sorted(leads - reference, key=lambda p: path_weight_key(q, p))
        raise NotConjugateError(
            f"leading paths differ from the monomial ideal (missing {missing}, extra {extra})"
        )
    table = {}
    for vec in ideal.basis():
        lead = vec.max_support()
        for path in vec.support():
            if path == lead:
                continue
            order = derivation_order(q, lead, path)
            if not order:
                raise NotConjugateError(
                    f"support path {path!r} is not derived of the lead {lead!r}"
                )
        table[lead] = vec
    return table


def preserves_monomial_ideal(monomial_ideal: AdmissibleIdeal, bypass: Bypass) -> bool:
    """Whether transvections along the bypass fix the monomial ideal; this does
    not depend on the scalar, so it is checked by splicing each monomial."""
    if not monomial_ideal.is_monomial:
        raise DomainError("ideal is not monomial")
    q = monomial_ideal.quiver
    bypass = q.bypass(bypass.arrow, bypass.path)
    paths = monomial_ideal.monomial_paths()
    for path in paths:
        if bypass.arrow in path.arrows:
            if replace_arrow(q, path, bypass.arrow, bypass.path) not in paths:
                return False
    return True


def _as_substitution(q: Quiver, seed) -> ArrowSubstitution:
    if isinstance(seed, DecreasingProduct):
        return seed.as_substitution()
    if isinstance(seed, ArrowSubstitution):
        return seed
    from .autos import evaluate_word

    return evaluate_word(q, seed)


def canonical_transvection_product(
    monomial_ideal: AdmissibleIdeal, seed, target: AdmissibleIdeal | None = None
) -> DecreasingProduct:
    """The canonical decreasing product carrying the monomial ideal onto the
    seed's image, characterized by avoiding every ideal-preserving bypass.

    The seed must be a transvection product mapping the monomial ideal onto
    ``target`` (when given).  Starting from the seed, the largest remaining
    preserving bypass in the arrow images is stripped by composing with its
    inverse transvection; the maximum strictly decreases, so the loop ends.
    """
    q = monomial_ideal.quiver
    q._require_simple()
    if not monomial_ideal.is_monomial:
        raise DomainError("reference ideal must be monomial")
    psi = _as_substitution(q, seed)
    decreasing_normal_form(q, psi)  # validates membership in the transvection group
    image = monomial_ideal.transformed(psi)
    if target is None:
        target = image
    elif image != target:
        raise SeedError("seed does not carry the monomial ideal onto the target")
    for _ in range(len(q.bypasses()) + 1):
        candidates = []
        for label in q.arrow_order:
            arrow_path = q.arrow_path(label)
            for path, coeff in psi.images[label].terms():
                if path == arrow_path:
                    continue
                bypass = Bypass(label, path)
                if preserves_monomial_ideal(monomial_ideal, bypass):
                    candidates.append((bypass, coeff))
        if not candidates:
            result = decreasing_normal_form(q, psi)
            if monomial_ideal.transformed(psi) != target:
                raise ConsistencyError("canonical product no longer reaches the target")
            return result
        bypass, coeff = max(candidates, key=lambda item: bypass_weight_key(q, item[0]))
        psi = psi.compose(transvection(q, bypass, -coeff))
    raise ConsistencyError("preserving-bypass elimination failed to terminate")


@dataclass(frozen=True)
class SeedSearch:
    """Result of :func:`find_seed`: a verified seed, or a reason it is absent.

    ``not_conjugate`` is True only when the absence is proved (dimension or
    leading-structure mismatch); an exhausted search stays inconclusive.
    """

    seed: ArrowSubstitution | None
    reason: str | None = None
    not_conjugate: bool = False

    @property
    def found(self) -> bool:
        return self.seed is not None


def find_seed(monomial_ideal: AdmissibleIdeal, ideal: AdmissibleIdeal) -> SeedSearch:
    """Search for a transvection product carrying the monomial ideal onto
    ``ideal``.

    Candidates have one coefficient per bypass (arrow images arrow + sum of
    coefficient * bypass path); each membership residual is affine-linear in a
    single coefficient once the others are fixed, so coefficients are solved
    one at a time in increasing bypass order, sweeping to a fixed point.
    """
    q = monomial_ideal.quiver
    q._require_simple()
    if not monomial_ideal.is_monomial:
        raise DomainError("reference ideal must be monomial")
    if monomial_ideal.dimensions() != ideal.dimensions():
        return SeedSearch(None, "dimension-mismatch", not_conjugate=True)
    try:
        groebner_structure(monomial_ideal, ideal)
    except NotConjugateError as exc:
        return SeedSearch(None, f"groebner-structure-mismatch: {exc}", not_conjugate=True)
    bypasses = sorted(q.bypasses(), key=lambda b: bypass_weight_key(q, b))
    coeffs = {b: Fraction(0) for b in bypasses}
    monomials = sorted(
        monomial_ideal.monomial_paths(), key=lambda p: path_weight_key(q, p)
    )

    def substitution(values) -> ArrowSubstitution:
        images = {}
        for label in q.arrow_order:
            terms = [(Fraction(1), q.arrow_path(label))]
            terms.extend(
                (values[b], b.path) for b in bypasses if b.arrow == label and values[b]
            )
            images[label] = PathVector.build(q, terms)
        return ArrowSubstitution(q, images)

    def residuals(values):
        psi = substitution(values)
        return [ideal.reduce(psi.apply_path(u)) for u in monomials]

    for _ in range(2 * len(bypasses) + 2):
        if all(res.is_zero for res in residuals(coeffs)):
            return SeedSearch(substitution(coeffs))
        changed = False
        for b in bypasses:
            # Residuals are affine in this coordinate; sample at 0 and 1.
            at_zero = dict(coeffs)
            at_zero[b] = Fraction(0)
            at_one = dict(coeffs)
            at_one[b] = Fraction(1)
            base = residuals(at_zero)
            slope = residuals(at_one)
            candidate = None
            consistent = True
            for r0, r1 in zip(base, slope):
                delta = r1 - r0
                for path in delta.support():
                    t = -r0.coefficient(path) / delta.coefficient(path)
                    if candidate is None:
                        candidate = t
                    elif candidate != t:
                        consistent = False
            # Equations not involving this coordinate constrain other ones;
            # they are ignored here and revisited by later sweeps.
            if consistent and candidate is not None and candidate != coeffs[b]:
                coeffs = dict(coeffs)
                coeffs[b] = candidate
                changed = True
        if not changed:
            break
    if all(res.is_zero for res in residuals(coeffs)):
        return SeedSearch(substitution(coeffs))
    return SeedSearch(None, "search-exhausted", not_conjugate=False)
