"""Finite quivers and their path combinatorics.

A quiver is a finite directed multigraph.  Paths store their arrows in
traversal order (first arrow crossed first); the conventional composition
string reads right to left, so the stored tuple ("c", "e", "f", "g") renders
as "gfec".  All enumeration caches are built eagerly when an acyclic quiver is
constructed and are never mutated afterwards.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product

from .errors import DomainError, HypothesisError, StructuralError


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A directed path, possibly stationary; arrows in traversal order."""

    source: str
    target: str
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_stationary(self) -> bool:
        return not self.arrows

    def __repr__(self) -> str:
        if self.is_stationary:
            return f"Path(e_{self.source})"
        return f"Path({'.'.join(reversed(self.arrows))}: {self.source}->{self.target})"


@dataclass(frozen=True)
class Walk:
    """A walk in the doubled quiver: arrows crossed forwards (+1) or backwards (-1)."""

    source: str
    target: str
    letters: tuple[tuple[str, int], ...]

    @property
    def length(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Walk":
        flipped = tuple((label, -sign) for label, sign in reversed(self.letters))
        return Walk(self.target, self.source, flipped)


@dataclass(frozen=True)
class Bypass:
    """A pair (arrow, path) with the path parallel to the arrow and distinct from it."""

    arrow: str
    path: Path

    def __repr__(self) -> str:
        return f"Bypass({self.arrow}, {'.'.join(reversed(self.path.arrows))})"


@dataclass(frozen=True)
class DoubleBypass:
    """Bypasses (outer.arrow, outer.path) and (inner.arrow, inner.path) where the
    inner arrow occurs in the outer path, split as pre . inner.arrow . post."""

    outer: Bypass
    inner: Bypass
    pre: Path
    post: Path


class Quiver:
    """An immutable finite quiver with eagerly built path caches.

    Vertices and arrow labels are strings.  The listing order of the arrows
    (or the explicit ``arrow_order``) fixes the base order used everywhere a
    deterministic tie-break on labels is needed.
    """

    def __init__(self, vertices, arrows, arrow_order=None):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise StructuralError("duplicate vertex ids")
        vertex_set = set(self.vertices)
        built = []
        for label, source, target in arrows:
            label, source, target = str(label), str(source), str(target)
            if source not in vertex_set or target not in vertex_set:
                raise StructuralError(f"arrow {label}: endpoint not a declared vertex")
            built.append(Arrow(label, source, target))
        self.arrows: tuple[Arrow, ...] = tuple(built)
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise StructuralError("duplicate arrow labels")
        if arrow_order is None:
            self.arrow_order: tuple[str, ...] = tuple(labels)
        else:
            arrow_order = tuple(str(x) for x in arrow_order)
            if sorted(arrow_order) != sorted(labels):
                raise StructuralError("arrow order must be a permutation of the arrow labels")
            self.arrow_order = arrow_order
        self._by_label = {a.label: a for a in self.arrows}
        self._order_index = {label: i for i, label in enumerate(self.arrow_order)}
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._out = {v: tuple(a for a in self.arrows if a.source == v) for v in self.vertices}
        self._in = {v: tuple(a for a in self.arrows if a.target == v) for v in self.vertices}
        self.is_acyclic = self._compute_acyclic()
        self.has_multiple_arrows = len({(a.source, a.target) for a in self.arrows}) < len(self.arrows)
        self.is_connected = self._compute_connected()
        self._deriv_cache: dict[tuple, int | None] = {}
        if self.is_acyclic:
            self._build_caches()

    # -- structure ---------------------------------------------------------

    def _compute_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = deque(v for v, d in indeg.items() if d == 0)
        seen = 0
        topo = []
        while queue:
            v = queue.popleft()
            topo.append(v)
            seen += 1
            for a in self._out[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        self._topo = tuple(topo)
        return seen == len(self.vertices)

    def _compute_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        neighbours = {v: set() for v in self.vertices}
        for a in self.arrows:
            neighbours[a.source].add(a.target)
            neighbours[a.target].add(a.source)
        while queue:
            v = queue.popleft()
            for w in neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def _build_caches(self) -> None:
        # Paths from each vertex, filled in reverse topological order.
        from_vertex: dict[str, list[Path]] = {}
        for v in reversed(self._topo):
            acc = [Path(v, v, ())]
            for a in self._out[v]:
                for tail in from_vertex[a.target]:
                    acc.append(Path(v, tail.target, (a.label,) + tail.arrows))
            from_vertex[v] = acc
        by_hom: dict[tuple[str, str], list[Path]] = {}
        for v, paths in from_vertex.items():
            for p in paths:
                by_hom.setdefault((p.source, p.target), []).append(p)
        listing = lambda p: (p.length, tuple(self._order_index[x] for x in p.arrows))
        self._paths_by_hom = {
            key: tuple(sorted(paths, key=listing)) for key, paths in by_hom.items()
        }
        self._bypasses_by_arrow: dict[str, tuple[Bypass, ...]] = {}
        for a in self.arrows:
            parallel = self._paths_by_hom.get((a.source, a.target), ())
            self._bypasses_by_arrow[a.label] = tuple(
                Bypass(a.label, p) for p in parallel if p.arrows != (a.label,)
            )
        self._weights = {
            label: len(bps) for label, bps in self._bypasses_by_arrow.items()
        }

    # -- lookups -----------------------------------------------------------

    def arrow(self, label: str) -> Arrow:
        try:
            return self._by_label[label]
        except KeyError:
            raise StructuralError(f"unknown arrow {label!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_index

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._in[v]

    def order_index(self, label: str) -> int:
        return self._order_index[label]

    # -- path construction -------------------------------------------------

    def stationary(self, v: str) -> Path:
        if v not in self._vertex_index:
            raise StructuralError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, labels) -> Path:
        """Build a validated path from traversal-order labels ("b g" or a list)."""
        if isinstance(labels, str):
            labels = labels.split()
        labels = [str(x) for x in labels]
        if not labels:
            raise DomainError("a nontrivial path needs at least one arrow")
        arrows = [self.arrow(x) for x in labels]
        for left, right in zip(arrows, arrows[1:]):
            if left.target != right.source:
                raise DomainError(
                    f"arrows {left.label} and {right.label} do not compose"
                )
        return Path(arrows[0].source, arrows[-1].target, tuple(labels))

    def arrow_path(self, label: str) -> Path:
        a = self.arrow(label)
        return Path(a.source, a.target, (label,))

    def walk(self, letters, start: str | None = None) -> Walk:
        """Build a validated walk from (label, sign) letters; empty walks need ``start``."""
        letters = tuple((str(l), int(s)) for l, s in letters)
        if not letters:
            if start is None or start not in self._vertex_index:
                raise DomainError("an empty walk needs a valid start vertex")
            return Walk(start, start, ())
        at = None
        for label, sign in letters:
            a = self.arrow(label)
            if sign not in (1, -1):
                raise DomainError("walk letter signs must be +1 or -1")
            tail, head = (a.source, a.target) if sign == 1 else (a.target, a.source)
            if at is None:
                source = tail
            elif at != tail:
                raise DomainError(f"walk letters do not compose at {label}")
            at = head
        return Walk(source, at, letters)

    # -- enumeration -------------------------------------------------------

    def _require_acyclic(self) -> None:
        if not self.is_acyclic:
            raise HypothesisError("operation requires an acyclic quiver")

    def _require_simple(self) -> None:
        self._require_acyclic()
        if self.has_multiple_arrows:
            raise HypothesisError("operation requires a quiver without multiple arrows")

    def paths_between(self, source: str, target: str) -> tuple[Path, ...]:
        self._require_acyclic()
        return self._paths_by_hom.get((str(source), str(target)), ())

    def all_paths(self):
        self._require_acyclic()
        for key in sorted(self._paths_by_hom, key=self._hom_key):
            yield from self._paths_by_hom[key]

    def nontrivial_paths(self):
        for p in self.all_paths():
            if not p.is_stationary:
                yield p

    def hom_pairs(self):
        self._require_acyclic()
        return sorted(self._paths_by_hom, key=self._hom_key)

    def _hom_key(self, key):
        return (self._vertex_index[key[0]], self._vertex_index[key[1]])

    def bypasses_of(self, label: str) -> tuple[Bypass, ...]:
        self._require_acyclic()
        self.arrow(label)
        return self._bypasses_by_arrow[label]

    def bypasses(self) -> tuple[Bypass, ...]:
        self._require_acyclic()
        out = []
        for label in self.arrow_order:
            out.extend(self._bypasses_by_arrow[label])
        return tuple(out)

    def bypass(self, arrow_label: str, path) -> Bypass:
        """Validate and build a bypass (arrow, parallel path distinct from the arrow)."""
        a = self.arrow(arrow_label)
        p = path if isinstance(path, Path) else self.path(path)
        if (p.source, p.target) != (a.source, a.target):
            raise DomainError(f"path is not parallel to arrow {arrow_label}")
        if p.arrows == (arrow_label,):
            raise DomainError("a bypass path must differ from its arrow")
        return Bypass(arrow_label, p)

    def arrow_weight(self, label: str) -> int:
        self._require_acyclic()
        return self._weights[label]

    def double_bypasses(self) -> tuple[DoubleBypass, ...]:
        """All pairs of bypasses where the inner arrow occurs in the outer path."""
        self._require_simple()
        out = []
        for outer in self.bypasses():
            for pos, label in enumerate(outer.path.arrows):
                for inner in self._bypasses_by_arrow[label]:
                    pre_labels = outer.path.arrows[:pos]
                    post_labels = outer.path.arrows[pos + 1 :]
                    inner_arrow = self.arrow(label)
                    pre = Path(outer.path.source, inner_arrow.source, pre_labels)
                    post = Path(inner_arrow.target, outer.path.target, post_labels)
                    out.append(DoubleBypass(outer, inner, pre, post))
        return tuple(out)


def concat_paths(first: Path, second: Path) -> Path:
    """Concatenate in traversal order: ``first`` is crossed before ``second``."""
    if first.target != second.source:
        raise DomainError("paths do not compose")
    return Path(first.source, second.target, first.arrows + second.arrows)


def replace_arrow(q: Quiver, u: Path, beta: str, v: Path) -> Path:
    """Splice the parallel path ``v`` in place of the arrow ``beta`` inside ``u``."""
    b = q.arrow(beta)
    if (v.source, v.target) != (b.source, b.target):
        raise DomainError(f"replacement path is not parallel to arrow {beta}")
    count = u.arrows.count(beta)
    if count == 0:
        raise DomainError(f"arrow {beta} does not occur in the path")
    if count > 1:
        raise DomainError(f"arrow {beta} occurs more than once in the path")
    pos = u.arrows.index(beta)
    return Path(u.source, u.target, u.arrows[:pos] + v.arrows + u.arrows[pos + 1 :])


def derivation_order(q: Quiver, u: Path, v: Path) -> int | None:
    """Order of ``v`` as a derived path of ``u``, or None when not derived.

    A derived path of order t replaces t distinct arrows of ``u``
    simultaneously, each by one of its bypass paths.
    """
    q._require_simple()
    if (u.source, u.target) != (v.source, v.target):
        raise DomainError("derivation is only defined between parallel paths")
    key = (u.arrows, v.arrows)
    if key in q._deriv_cache:
        return q._deriv_cache[key]
    result = _derivation_search(q, u, v)
    q._deriv_cache[key] = result
    return result


def _derivation_search(q: Quiver, u: Path, v: Path) -> int | None:
    if u.arrows == v.arrows:
        return 0
    replaceable = [
        i for i, label in enumerate(u.arrows) if q._bypasses_by_arrow[label]
    ]
    for t in range(1, len(replaceable) + 1):
        for positions in combinations(replaceable, t):
            choice_sets = [
                [bp.path.arrows for bp in q._bypasses_by_arrow[u.arrows[i]]]
                for i in positions
            ]
            for picks in product(*choice_sets):
                parts = []
                cursor = 0
                for i, pick in zip(positions, picks):
                    parts.append(u.arrows[cursor:i])
                    parts.append(pick)
                    cursor = i + 1
                parts.append(u.arrows[cursor:])
                spliced = sum(parts, ())
                if spliced == v.arrows:
                    return t
    return None


def validate_quiver(q: Quiver) -> dict:
    """Structural report used by the CLI."""
    return {
        "vertices": len(q.vertices),
        "arrows": len(q.arrows),
        "acyclic": q.is_acyclic,
        "no_multiple_arrows": not q.has_multiple_arrows,
        "connected": q.is_connected,
    }
