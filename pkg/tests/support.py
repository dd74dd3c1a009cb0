"""Random instance builders and independent oracles for the property tests."""

from __future__ import annotations

import string
from fractions import Fraction
from itertools import product

from quivercover import (
    AdmissibleIdeal,
    ArrowSubstitution,
    DecreasingProduct,
    Path,
    PathVector,
    Quiver,
    sorted_bypasses,
)

SCALARS = [
    Fraction(-2),
    Fraction(-1),
    Fraction(1),
    Fraction(2),
    Fraction(1, 2),
    Fraction(-3, 2),
]


def random_simple_quiver(rng, max_vertices=7, max_arrows=12) -> Quiver:
    """A connected acyclic quiver without multiple arrows; vertex listing
    order is a topological order, so every arrow points forward."""
    n = rng.randint(3, max_vertices)
    vertices = [str(i) for i in range(1, n + 1)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    count = rng.randint(n - 1, min(max_arrows, len(pairs)))
    chosen = set(pairs[:count])

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in chosen:
        parent[find(i)] = find(j)
    for j in range(1, n):
        if find(j) != find(0):
            i = rng.randint(0, j - 1)
            chosen.add((i, j))
            parent[find(i)] = find(j)

    labels = string.ascii_lowercase
    arrows = [
        (labels[k], vertices[i], vertices[j])
        for k, (i, j) in enumerate(sorted(chosen))
    ]
    order = None
    if rng.random() < 0.5:
        order = [a[0] for a in arrows]
        rng.shuffle(order)
    return Quiver(vertices, arrows, order)


def random_monomial_ideal(rng, q: Quiver, max_gens=3) -> AdmissibleIdeal:
    paths = [p for p in q.nontrivial_paths() if p.length >= 2]
    count = rng.randint(0, min(max_gens, len(paths)))
    gens = [PathVector.single(q, 1, p) for p in rng.sample(paths, count)]
    return AdmissibleIdeal.from_generators(q, gens)


def random_word(rng, q: Quiver, max_len=4) -> tuple:
    """A transvection word as (arrow, path, scalar) triples, leftmost first."""
    bypasses = list(q.bypasses())
    if not bypasses:
        return ()
    return tuple(
        (b.arrow, b.path, rng.choice(SCALARS))
        for b in (rng.choice(bypasses) for _ in range(rng.randint(0, max_len)))
    )


def random_decreasing(rng, q: Quiver, max_len=4) -> DecreasingProduct:
    bypasses = sorted_bypasses(q)
    count = rng.randint(0, min(max_len, len(bypasses)))
    picks = sorted(rng.sample(range(len(bypasses)), count))
    factors = tuple((bypasses[i], rng.choice(SCALARS)) for i in picks)
    return DecreasingProduct(q, factors)


def splice_expansion(psi: ArrowSubstitution, path: Path) -> PathVector:
    """Evaluate an arrow substitution on a path by enumerating every
    replacement pattern explicitly: pick one support term per arrow, multiply
    the coefficients, and splice the chosen paths in place of the arrows."""
    q = psi.quiver
    if path.is_stationary:
        return PathVector.unit(q, path.source)
    choices = [tuple(psi.images[label].terms()) for label in path.arrows]
    acc: dict[Path, Fraction] = {}
    for pattern in product(*choices):
        coeff = Fraction(1)
        arrows: list[str] = []
        for piece, piece_coeff in pattern:
            coeff *= piece_coeff
            arrows.extend(piece.arrows)
        spliced = Path(path.source, path.target, tuple(arrows))
        acc[spliced] = acc.get(spliced, Fraction(0)) + coeff
    return PathVector.build(
        q, [(c, p) for p, c in acc.items()], path.source, path.target
    )


def assert_order_laws(q: Quiver, pair_cap: int = 40) -> None:
    """Check the four order laws on the quiver: strict monotonicity under
    composition, descent of bypass paths, descent of derived paths, and the
    double-bypass sandwich.  Composition pairs are capped per hom space."""
    from quivercover import (
        compare_bypasses,
        compare_paths,
        concat_paths,
        derivation_order,
        path_weight_key,
        replace_arrow,
        weight,
    )

    by_hom: dict[tuple[str, str], list[Path]] = {}
    for p in q.nontrivial_paths():
        by_hom.setdefault((p.source, p.target), []).append(p)
    key = {p: path_weight_key(q, p) for bucket in by_hom.values() for p in bucket}
    strict = {}
    for hom, bucket in by_hom.items():
        pairs = [(v, u) for u in bucket for v in bucket if key[v] < key[u]]
        strict[hom] = pairs[:pair_cap]
    for (x, y), pairs in strict.items():
        for v, u in pairs:
            for (x2, y2), pairs2 in strict.items():
                if x2 != y:
                    continue
                for v2, u2 in pairs2:
                    left = path_weight_key(q, concat_paths(v, v2))
                    right = path_weight_key(q, concat_paths(u, u2))
                    assert left < right
    for b in q.bypasses():
        assert weight(q, b.path) < weight(q, q.arrow_path(b.arrow))
        assert compare_paths(q, b.path, q.arrow_path(b.arrow)) < 0
    for hom, bucket in by_hom.items():
        for u in bucket:
            for v in bucket:
                t = derivation_order(q, u, v)
                if t:
                    assert key[v] < key[u]
    for db in q.double_bypasses():
        w = replace_arrow(q, db.outer.path, db.inner.arrow, db.inner.path)
        grown = q.bypass(db.outer.arrow, w)
        assert compare_bypasses(q, db.inner, grown) < 0
        assert compare_bypasses(q, grown, db.outer) < 0


def bounded_walk_congruence(q: Quiver, seed_pairs, max_len: int):
    """Brute-force congruence closure on walks of bounded length: seeded by
    the given parallel path pairs, closed under inverse-pair collapse and
    one-letter concatenation on either side, inside the bounded universe."""
    walks = _walks_up_to(q, max_len)
    universe = set(walks)
    parent: dict = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
        return True

    def as_walk(path: Path):
        return (path.source, path.target, tuple((a, 1) for a in path.arrows))

    pending = []
    for u, v in seed_pairs:
        pending.append((as_walk(u), as_walk(v)))
    for arrow in q.arrows:
        back_forth = (arrow.source, arrow.source, ((arrow.label, 1), (arrow.label, -1)))
        forth_back = (arrow.target, arrow.target, ((arrow.label, -1), (arrow.label, 1)))
        pending.append((back_forth, (arrow.source, arrow.source, ())))
        pending.append((forth_back, (arrow.target, arrow.target, ())))
    for x, y in pending:
        if x in universe and y in universe:
            union(x, y)

    changed = True
    while changed:
        changed = False
        classes: dict = {}
        for w in list(parent):
            classes.setdefault(find(w), []).append(w)
        for root, members in classes.items():
            if root not in members:
                members.append(root)
            for i, x in enumerate(members):
                for y in members[i + 1 :]:
                    for z in _extensions(q, x, y, universe):
                        if union(*z):
                            changed = True
    return lambda u, v: find(as_walk(u)) == find(as_walk(v))


def _walks_up_to(q: Quiver, max_len: int):
    """Every walk of the doubled quiver with at most ``max_len`` letters,
    as (start, end, ((label, sign), ...)) tuples."""
    out = []
    for v in q.vertices:
        frontier = [(v, v, ())]
        out.extend(frontier)
        for _ in range(max_len):
            grown = []
            for s, t, letters in frontier:
                for arrow in q.out_arrows(t):
                    grown.append((s, arrow.target, letters + ((arrow.label, 1),)))
                for arrow in q.in_arrows(t):
                    grown.append((s, arrow.source, letters + ((arrow.label, -1),)))
            out.extend(grown)
            frontier = grown
    return out


def _extensions(q, x, y, universe):
    sx, tx, lx = x
    sy, ty, ly = y
    out = []
    for arrow in q.arrows:
        for sign in (1, -1):
            head, tail = (arrow.source, arrow.target) if sign == 1 else (
                arrow.target,
                arrow.source,
            )
            if tail == sx:
                a = (head, tx, ((arrow.label, sign),) + lx)
                b = (head, ty, ((arrow.label, sign),) + ly)
                if a in universe and b in universe:
                    out.append((a, b))
            if tx == head:
                a = (sx, tail, lx + ((arrow.label, sign),))
                b = (sy, tail, ly + ((arrow.label, sign),))
                if a in universe and b in universe:
                    out.append((a, b))
    return out


def _walks_up_to(q: Quiver, max_len: int):
    frontier = [(v, v, ()) for v in q.vertices]
    walks = list(frontier)
    for _ in range(max_len):
        step = []
        for source, target, letters in frontier:
            for arrow in q.arrows:
                if arrow.source == target:
                    step.append((source, arrow.target, letters + ((arrow.label, 1),)))
                if arrow.target == target:
                    step.append((source, arrow.source, letters + ((arrow.label, -1),)))
        walks.extend(step)
        frontier = step
    return walks
