"""Normal forms and arithmetic of rational path combinations."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from quivercover import (
    CapacityError,
    DomainError,
    PathVector,
    as_scalar,
    coefficient,
    concatenate,
    normal_form,
    subexpressions,
)

from support import SCALARS, random_simple_quiver


def test_build_merges_and_drops_zeros(six_vertex):
    q = six_vertex
    u = q.path("a h")
    v = q.path("c e f g h")
    r = PathVector.build(q, [(1, u), (2, v), (1, u), (-2, v)])
    assert r.terms() == ((u, Fraction(2)),)
    assert r.coefficient(v) == 0
    assert not r.is_zero


def test_normal_form_is_permutation_stable(six_vertex):
    q = six_vertex
    rng = random.Random(11)
    paths = [q.path("a h"), q.path("c e f g h"), q.path("b g h"), q.path("c d g h")]
    terms = [(rng.choice(SCALARS), p) for p in paths for _ in range(2)]
    reference = normal_form(q, terms)
    for _ in range(20):
        rng.shuffle(terms)
        again = normal_form(q, terms)
        assert again == reference
        assert normal_form(q, [(c, p) for p, c in again.terms()]) == reference


def test_terms_are_sorted_descending(six_vertex):
    q = six_vertex
    r = PathVector.build(q, [(1, q.path("c d")), (1, q.path("b")), (1, q.path("c e f"))])
    assert [p.arrows for p, _ in r.terms()] == [("b",), ("c", "d"), ("c", "e", "f")]
    assert r.max_support() == q.path("b")


def test_zero_unit_single(intro_quiver):
    q = intro_quiver
    z = PathVector.zero(q, "1", "4")
    assert z.is_zero
    assert z.terms() == ()
    assert z.min_length() == 0
    with pytest.raises(DomainError):
        z.max_support()
    e = PathVector.unit(q, "2")
    assert e.max_support().is_stationary
    assert e.coefficient(q.stationary("2")) == 1
    s = PathVector.single(q, Fraction(3, 2), q.path("a d"))
    assert s.terms() == ((q.path("a d"), Fraction(3, 2)),)


def test_build_zero_needs_endpoints(intro_quiver):
    with pytest.raises(DomainError):
        PathVector.build(intro_quiver, [])
    z = PathVector.build(intro_quiver, [], source="1", target="4")
    assert z.is_zero


def test_terms_must_be_parallel(intro_quiver):
    q = intro_quiver
    with pytest.raises(DomainError):
        PathVector.build(q, [(1, q.path("a d")), (1, q.path("b c"))])


def test_floats_are_rejected(intro_quiver):
    q = intro_quiver
    with pytest.raises(DomainError):
        as_scalar(0.5)
    with pytest.raises(DomainError):
        PathVector.single(q, 0.5, q.path("a d"))
    r = PathVector.single(q, 1, q.path("a d"))
    with pytest.raises(DomainError):
        r.scaled(1.5)


def test_arithmetic(intro_quiver):
    q = intro_quiver
    da = PathVector.single(q, 1, q.path("a d"))
    dcb = PathVector.single(q, 1, q.path("b c d"))
    r = da - dcb
    assert r.coefficient(q.path("a d")) == 1
    assert r.coefficient(q.path("b c d")) == -1
    assert (r + dcb) == da
    assert (-r) + r == PathVector.zero(q, "1", "4")
    assert r.scaled(Fraction(1, 2)) == Fraction(1, 2) * r
    assert r.scaled(0).is_zero
    with pytest.raises(DomainError):
        da + PathVector.single(q, 1, q.path("b c"))


def test_concatenate_example(six_vertex):
    q = six_vertex
    left = PathVector.build(q, [(1, q.path("b")), (1, q.path("c e f"))])
    g = PathVector.single(q, 1, q.path("g"))
    image = concatenate(left, g)
    assert image == PathVector.build(q, [(1, q.path("b g")), (1, q.path("c e f g"))])


def test_concatenate_is_bilinear_and_associative():
    rng = random.Random(23)
    found = 0
    for _ in range(40):
        q = random_simple_quiver(rng, max_vertices=5, max_arrows=8)
        homs = {}
        for p in q.nontrivial_paths():
            homs.setdefault((p.source, p.target), []).append(p)
        triples = [
            ((x, y), (y2, z))
            for (x, y) in homs
            for (y2, z) in homs
            if y == y2
        ]
        if not triples:
            continue
        found += 1
        (x, y), (y2, z) = rng.choice(triples)
        pick = lambda hom: PathVector.build(
            q,
            [(rng.choice(SCALARS), p) for p in rng.sample(homs[hom], min(2, len(homs[hom])))],
        )
        r, r2, s = pick((x, y)), pick((x, y)), pick((y2, z))
        assert concatenate(r + r2, s) == concatenate(r, s) + concatenate(r2, s)
        c = rng.choice(SCALARS)
        assert concatenate(r.scaled(c), s) == concatenate(r, s).scaled(c)
        chains = [
            (p, p2)
            for (w, v) in homs
            for p in homs[(w, v)]
            if v == x
            for p2 in [None]
        ]
        if chains:
            t = PathVector.single(q, 1, chains[0][0])
            assert concatenate(concatenate(t, r), s) == concatenate(t, concatenate(r, s))
    assert found > 10


def test_concatenate_requires_composable(intro_quiver):
    q = intro_quiver
    with pytest.raises(DomainError):
        concatenate(
            PathVector.single(q, 1, q.path("d")), PathVector.single(q, 1, q.path("a"))
        )


def test_unit_is_neutral_for_concatenation(six_vertex):
    q = six_vertex
    r = PathVector.build(q, [(1, q.path("a h")), (-3, q.path("c e f g h"))])
    assert concatenate(PathVector.unit(q, "1"), r) == r
    assert concatenate(r, PathVector.unit(q, "6")) == r


def test_subexpressions_of_binomial(intro_quiver):
    q = intro_quiver
    r = PathVector.build(q, [(1, q.path("a d")), (-1, q.path("b c d"))])
    subs = list(subexpressions(r))
    assert len(subs) == 4
    assert subs[0].is_zero
    assert subs[-1] == r
    assert PathVector.single(q, 1, q.path("a d")) in subs
    assert PathVector.single(q, -1, q.path("b c d")) in subs


def test_subexpression_cap(intro_quiver):
    q = intro_quiver
    r = PathVector.build(q, [(1, q.path("a d")), (-1, q.path("b c d"))])
    with pytest.raises(CapacityError):
        list(subexpressions(r, cap=1))


def test_coefficient_helper(six_vertex):
    q = six_vertex
    r = PathVector.build(q, [(Fraction(5, 3), q.path("c d"))])
    assert coefficient(r, q.path("c d")) == Fraction(5, 3)
    assert coefficient(r, q.path("b")) == 0


def test_min_length(six_vertex):
    q = six_vertex
    r = PathVector.build(q, [(1, q.path("b")), (1, q.path("c e f"))])
    assert r.min_length() == 1


def test_equality_and_hash(intro_quiver):
    q = intro_quiver
    a = PathVector.build(q, [(1, q.path("a d")), (-1, q.path("b c d"))])
    b = PathVector.build(q, [(-1, q.path("b c d")), (1, q.path("a d"))])
    assert a == b
    assert hash(a) == hash(b)
    assert a != PathVector.single(q, 1, q.path("a d"))
    assert len({a, b}) == 1


def test_restricted_keeps_given_support(six_vertex):
    q = six_vertex
    r = PathVector.build(q, [(1, q.path("a h")), (2, q.path("c e f g h")), (3, q.path("b g h"))])
    kept = r.restricted([q.path("a h"), q.path("b g h")])
    assert kept.support() == (q.path("a h"), q.path("b g h"))
    assert kept.coefficient(q.path("c e f g h")) == 0
