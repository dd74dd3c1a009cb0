"""Homotopy relations of bound quivers and fundamental-group presentations.

The homotopy relation of an admissible ideal identifies parallel paths.  It is
generated by the supports of minimal relations and closed under three rules:
equivalence closure, compatibility with composition on either side, and
cancellation of a shared outer arrow.  The closure is kept as a canonical
partition of the path set, which doubles as a hashable node key.

A presentation of the fundamental group is read off a breadth-first spanning
tree: one generator per non-tree arrow, one relator per identified seed pair.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import config
from .autos import transvection
from .errors import (
    ConsistencyError,
    DomainError,
    HypothesisError,
    NotComparableError,
)
from .ideals import AdmissibleIdeal, seed_relations
from .quiver import Bypass, Path, Quiver, concat_paths
from .vectors import as_scalar


class HomotopyRelation:
    """An equivalence on parallel paths, stored as its canonical partition."""

    __slots__ = ("quiver", "seed_pairs", "_root", "_classes")

    def __init__(self, quiver: Quiver, seed_pairs):
        quiver._require_acyclic()
        if not quiver.is_connected:
            raise HypothesisError("homotopy relations need a connected quiver")
        self.quiver = quiver
        self.seed_pairs = frozenset(
            frozenset(pair) for pair in seed_pairs if len(frozenset(pair)) == 2
        )
        self._root = _close(quiver, self.seed_pairs)
        classes: dict[Path, list[Path]] = {}
        for path, root in self._root.items():
            classes.setdefault(root, []).append(path)
        self._classes = frozenset(
            frozenset(members) for members in classes.values() if len(members) > 1
        )

    def key(self) -> frozenset:
        return self._classes

    def classes(self):
        """Nontrivial classes, deterministically ordered."""
        order = lambda p: (p.length, tuple(self.quiver.order_index(x) for x in p.arrows))
        out = [sorted(cls, key=order) for cls in self._classes]
        out.sort(key=lambda cls: order(cls[0]))
        return out

    def identifies(self, u: Path, v: Path) -> bool:
        if u == v:
            return True
        return self._root.get(u) is not None and self._root.get(u) == self._root.get(v)

    def pairs(self):
        """All identified unordered pairs, deterministically ordered."""
        for cls in self.classes():
            for i, u in enumerate(cls):
                for v in cls[i + 1 :]:
                    yield (u, v)

    @property
    def is_trivial(self) -> bool:
        return not self._classes

    def with_pair(self, u: Path, v: Path) -> "HomotopyRelation":
        return HomotopyRelation(self.quiver, set(self.seed_pairs) | {frozenset((u, v))})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomotopyRelation)
            and self.quiver is other.quiver
            and self._classes == other._classes
        )

    def __hash__(self) -> int:
        return hash(self._classes)

    def __repr__(self) -> str:
        size = len(self._classes)
        return f"HomotopyRelation({size} nontrivial class{'es' if size != 1 else ''})"


def _close(q: Quiver, seed_pairs) -> dict[Path, Path]:
    """Fixed point of the closure rules, as a union-find root map."""
    parent: dict[Path, Path] = {}

    def find(p: Path) -> Path:
        root = p
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(p, p) != p:
            parent[p], p = root, parent[p]
        return root

    def union(u: Path, v: Path) -> bool:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        return True

    for pair in seed_pairs:
        u, v = tuple(pair)
        if (u.source, u.target) != (v.source, v.target):
            raise DomainError("identified paths must be parallel")
        union(u, v)
    changed = True
    while changed:
        changed = False
        classes: dict[Path, list[Path]] = {}
        for p in list(parent):
            classes.setdefault(find(p), []).append(p)
        for members in classes.values():
            if find(members[0]) not in members:
                members.append(find(members[0]))
            for i, u in enumerate(members):
                for v in members[i + 1 :]:
                    if u == v:
                        continue
                    for arrow in q.out_arrows(u.target):
                        tail = q.arrow_path(arrow.label)
                        if union(concat_paths(u, tail), concat_paths(v, tail)):
                            changed = True
                    for arrow in q.in_arrows(u.source):
                        head = q.arrow_path(arrow.label)
                        if union(concat_paths(head, u), concat_paths(head, v)):
                            changed = True
                    if (
                        u.length > 1
                        and v.length > 1
                        and u.arrows[-1] == v.arrows[-1]
                    ):
                        end = q.arrow(u.arrows[-1])
                        if union(
                            Path(u.source, end.source, u.arrows[:-1]),
                            Path(v.source, end.source, v.arrows[:-1]),
                        ):
                            changed = True
                    if (
                        u.length > 1
                        and v.length > 1
                        and u.arrows[0] == v.arrows[0]
                    ):
                        start = q.arrow(u.arrows[0])
                        if union(
                            Path(start.target, u.target, u.arrows[1:]),
                            Path(start.target, v.target, v.arrows[1:]),
                        ):
                            changed = True
    out = {p: find(p) for p in list(parent)}
    for root in set(out.values()):
        out[root] = root
    return out


def homotopy_closure(ideal: AdmissibleIdeal) -> HomotopyRelation:
    """The homotopy relation of an admissible ideal, seeded by the support
    cliques of a generating family of minimal relations."""
    seeds = set()
    for rel in seed_relations(ideal):
        support = rel.vector.support()
        for i, u in enumerate(support):
            for v in support[i + 1 :]:
                seeds.add(frozenset((u, v)))
    return HomotopyRelation(ideal.quiver, seeds)


def relations_equal(h1: HomotopyRelation, h2: HomotopyRelation) -> bool:
    return h1 == h2


@dataclass(frozen=True)
class SuccessorProbe:
    """Outcome of transvecting an ideal along a bypass.

    ``case`` is "fixed" (ideal unchanged), "coincide" (pair identified on
    both sides, relations equal), "successor" (pair newly identified, image
    relation generated by the old one plus the pair), or "predecessor" (the
    reverse: the old relation is a direct successor of the image's).
    ``relation`` is the image ideal's homotopy relation, or None for a fixed
    probe classified without computing it."""

    case: str
    image: AdmissibleIdeal
    relation: HomotopyRelation | None


def direct_successor_case(
    ideal: AdmissibleIdeal,
    bypass: Bypass,
    tau,
    relation: HomotopyRelation | None = None,
) -> SuccessorProbe:
    """Classify the transvection of ``ideal`` along ``bypass`` with scalar
    ``tau``, following the trichotomy on whether the pair is identified
    before and after.  ``relation`` may pass a precomputed relation of
    ``ideal``.  Every non-fixed answer is cross-checked against a freshly
    computed closure of the image and fails loudly on disagreement."""
    q = ideal.quiver
    bypass = q.bypass(bypass.arrow, bypass.path)
    tau = as_scalar(tau)
    if not tau:
        return SuccessorProbe("fixed", ideal, relation)
    image = ideal.transformed(transvection(q, bypass, tau))
    if image == ideal:
        return SuccessorProbe("fixed", image, relation)
    if relation is None:
        relation = homotopy_closure(ideal)
    arrow_path = q.arrow_path(bypass.arrow)
    actual = homotopy_closure(image)
    if not relation.identifies(arrow_path, bypass.path):
        generated = relation.with_pair(arrow_path, bypass.path)
        if actual != generated:
            raise ConsistencyError(
                f"successor relation for {bypass!r} disagrees with the closure "
                f"of the image ideal"
            )
        return SuccessorProbe("successor", image, actual)
    if actual == relation:
        return SuccessorProbe("coincide", image, actual)
    if actual.identifies(arrow_path, bypass.path):
        raise ConsistencyError(
            f"pair of {bypass!r} identified on both sides yet the relations differ"
        )
    if actual.with_pair(arrow_path, bypass.path) != relation:
        raise ConsistencyError(
            f"reverse step along {bypass!r} does not regenerate the old relation"
        )
    return SuccessorProbe("predecessor", image, actual)


# -- group presentations ------------------------------------------------------


def reduce_word(word) -> tuple[int, ...]:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word) -> tuple[int, ...]:
    return tuple(-letter for letter in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    """Generators named after non-tree arrows; relators are reduced words over
    signed generator indices (1-based)."""

    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]
    basepoint: str

    def word_str(self, word) -> str:
        if not word:
            return "1"
        bits = []
        for letter in word:
            name = self.generators[abs(letter) - 1]
            bits.append(name if letter > 0 else name + "^-1")
        return "*".join(bits)


def spanning_tree(q: Quiver, basepoint: str) -> tuple[str, ...]:
    """Breadth-first spanning tree from the basepoint, scanning arrows in the
    base order and ignoring orientation."""
    if not q.is_connected:
        raise HypothesisError("spanning tree needs a connected quiver")
    if not q.has_vertex(basepoint):
        raise DomainError(f"unknown basepoint {basepoint!r}")
    seen = {basepoint}
    tree: list[str] = []
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for label in q.arrow_order:
            arrow = q.arrow(label)
            if arrow.source == v and arrow.target not in seen:
                seen.add(arrow.target)
                tree.append(label)
                queue.append(arrow.target)
            elif arrow.target == v and arrow.source not in seen:
                seen.add(arrow.source)
                tree.append(label)
                queue.append(arrow.source)
    return tuple(tree)


def path_word(q: Quiver, generator_index: dict, path: Path) -> tuple[int, ...]:
    return reduce_word(
        generator_index[label] for label in path.arrows if label in generator_index
    )


def pi1_presentation(relation: HomotopyRelation, basepoint: str | None = None) -> GroupPresentation:
    """Present the fundamental group of the quiver bound by the relation."""
    q = relation.quiver
    if basepoint is None:
        basepoint = q.vertices[0]
    tree = set(spanning_tree(q, basepoint))
    generators = tuple(label for label in q.arrow_order if label not in tree)
    generator_index = {label: i + 1 for i, label in enumerate(generators)}
    relators: list[tuple[int, ...]] = []
    pair_key = lambda p: (p.length, tuple(q.order_index(x) for x in p.arrows))
    seed_pairs = sorted(
        (sorted(pair, key=pair_key) for pair in relation.seed_pairs),
        key=lambda pair: (pair_key(pair[0]), pair_key(pair[1])),
    )
    for u, v in seed_pairs:
        word = reduce_word(
            path_word(q, generator_index, u) + invert_word(path_word(q, generator_index, v))
        )
        if word and word not in relators:
            relators.append(word)
    return GroupPresentation(generators, tuple(relators), basepoint)


# -- abelian invariants -------------------------------------------------------


def smith_diagonal(rows: list[list[int]], ncols: int) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix."""
    matrix = [row[:] for row in rows]
    nrows = len(matrix)
    diag: list[int] = []
    top = 0
    while top < min(nrows, ncols):
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if matrix[i][j] and (
                    pivot is None or abs(matrix[i][j]) < abs(matrix[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        matrix[top], matrix[i] = matrix[i], matrix[top]
        for row in matrix:
            row[top], row[j] = row[j], row[top]
        clean = False
        while not clean:
            clean = True
            for i in range(top + 1, nrows):
                if matrix[i][top]:
                    factor = matrix[i][top] // matrix[top][top]
                    matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[top])]
                    if matrix[i][top]:
                        matrix[top], matrix[i] = matrix[i], matrix[top]
                        clean = False
            for j in range(top + 1, ncols):
                if matrix[top][j]:
                    factor = matrix[top][j] // matrix[top][top]
                    for row in matrix:
                        row[j] -= factor * row[top]
                    if matrix[top][j]:
                        for row in matrix:
                            row[top], row[j] = row[j], row[top]
                        clean = False
        # Fold in any entry the pivot does not divide yet, then redo the sweep.
        entry = next(
            (
                (i, j)
                for i in range(top + 1, nrows)
                for j in range(top + 1, ncols)
                if matrix[i][j] % matrix[top][top]
            ),
            None,
        )
        if entry is not None:
            matrix[top] = [x + y for x, y in zip(matrix[top], matrix[entry[0]])]
            continue
        diag.append(abs(matrix[top][top]))
        top += 1
    return diag


def abelian_invariants(presentation: GroupPresentation) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion elementary divisors) of the abelianization."""
    n = len(presentation.generators)
    rows = []
    for word in presentation.relators:
        row = [0] * n
        for letter in word:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    diag = [d for d in smith_diagonal(rows, n) if d]
    return n - len(diag), tuple(d for d in diag if d > 1)


# -- Tietze simplification ----------------------------------------------------


@dataclass(frozen=True)
class SimplifiedPresentation:
    presentation: GroupPresentation
    free_certified: bool
    budget_exhausted: bool


def simplify_presentation(
    presentation: GroupPresentation, budget: int | None = None
) -> SimplifiedPresentation:
    """Eliminate generators that occur exactly once in some relator, greedily
    and deterministically, within a step budget.  Freeness is certified when
    no relators remain."""
    if budget is None:
        budget = config.tietze_budget()
    generators = list(presentation.generators)
    relators = [reduce_word(w) for w in presentation.relators]
    relators = [w for w in relators if w]
    steps = 0
    while steps < budget:
        target = None
        for r_index, word in enumerate(relators):
            for g in range(1, len(generators) + 1):
                if sum(1 for letter in word if abs(letter) == g) == 1:
                    target = (r_index, g)
                    break
            if target:
                break
        if target is None:
            break
        r_index, g = target
        word = relators.pop(r_index)
        pos = next(i for i, letter in enumerate(word) if abs(letter) == g)
        before, after = word[:pos], word[pos + 1 :]
        # word = before g^e after = 1, so g^e = before^-1 after^-1.
        replacement = reduce_word(invert_word(before) + invert_word(after))
        if word[pos] < 0:
            replacement = invert_word(replacement)

        def substitute(w):
            out = []
            for letter in w:
                if abs(letter) == g:
                    out.extend(replacement if letter > 0 else invert_word(replacement))
                else:
                    out.append(letter)
            return reduce_word(out)

        relators = [substitute(w) for w in relators]
        renumber = {}
        for old in range(1, len(generators) + 1):
            if old < g:
                renumber[old] = old
            elif old > g:
                renumber[old] = old - 1
        generators.pop(g - 1)
        relators = [
            reduce_word(
                (renumber[letter] if letter > 0 else -renumber[-letter])
                for letter in w
            )
            for w in relators
        ]
        seen = []
        for w in relators:
            if w and w not in seen:
                seen.append(w)
        relators = seen
        steps += 1
    exhausted = steps >= budget and any(
        sum(1 for letter in word if abs(letter) == g) == 1
        for word in relators
        for g in range(1, len(generators) + 1)
    )
    simplified = GroupPresentation(
        tuple(generators), tuple(relators), presentation.basepoint
    )
    return SimplifiedPresentation(simplified, not relators, exhausted)


# -- comparison of relations ----------------------------------------------------


@dataclass(frozen=True)
class SurjectionWitness:
    """The identity-on-generators surjection between fundamental groups induced
    by a containment of homotopy relations, with both presentations."""

    source: GroupPresentation
    target: GroupPresentation
    generator_map: dict


def surjection_witness(
    h_from: HomotopyRelation, h_to: HomotopyRelation, basepoint: str | None = None
) -> SurjectionWitness:
    """Certify the canonical surjection pi1(from) ->> pi1(to): every seed pair
    of the finer relation must be identified by the coarser one, which puts
    each source relator in the target's normal closure."""
    if h_from.quiver is not h_to.quiver:
        raise DomainError("relations live on different quivers")
    for pair in h_from.seed_pairs:
        u, v = tuple(pair)
        if not h_to.identifies(u, v):
            raise NotComparableError(
                f"pair ({u!r}, {v!r}) is not identified by the coarser relation"
            )
    source = pi1_presentation(h_from, basepoint)
    target = pi1_presentation(h_to, basepoint)
    return SurjectionWitness(source, target, {g: g for g in source.generators})
