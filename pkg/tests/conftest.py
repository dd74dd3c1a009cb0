"""Shared fixtures: the running example quivers and their ideals."""

from __future__ import annotations

import pytest

from quivercover import AdmissibleIdeal, PathVector, Quiver


@pytest.fixture(scope="session")
def six_vertex() -> Quiver:
    """Six vertices, eight arrows, three nontrivial arrow weights."""
    return Quiver(
        "123456",
        [
            ("a", "1", "5"),
            ("b", "1", "4"),
            ("c", "1", "2"),
            ("d", "2", "4"),
            ("e", "2", "3"),
            ("f", "3", "4"),
            ("g", "4", "5"),
            ("h", "5", "6"),
        ],
    )


def monomials(q: Quiver, *labelings) -> list[PathVector]:
    return [PathVector.single(q, 1, q.path(list(labels))) for labels in labelings]


@pytest.fixture(scope="session")
def six_i0(six_vertex) -> AdmissibleIdeal:
    return AdmissibleIdeal.from_generators(
        six_vertex, monomials(six_vertex, "ah", "bg", "cd")
    )


@pytest.fixture(scope="session")
def six_target(six_vertex) -> AdmissibleIdeal:
    """The bound ideal reached from six_i0 by two non-preserving transvections."""
    q = six_vertex
    gens = [
        PathVector.build(q, [(1, q.path("a h")), (1, q.path("c e f g h"))]),
        PathVector.build(q, [(1, q.path("b g")), (1, q.path("c e f g"))]),
        PathVector.single(q, 1, q.path("c d")),
    ]
    return AdmissibleIdeal.from_generators(q, gens)


@pytest.fixture(scope="session")
def intro_quiver() -> Quiver:
    """Four vertices; the arrow a rides the bypass (a, cb)."""
    return Quiver(
        "1234",
        [("a", "1", "3"), ("b", "1", "2"), ("c", "2", "3"), ("d", "3", "4")],
    )


@pytest.fixture(scope="session")
def intro_monomial(intro_quiver) -> AdmissibleIdeal:
    return AdmissibleIdeal.from_generators(
        intro_quiver, monomials(intro_quiver, "ad")
    )


@pytest.fixture(scope="session")
def intro_bound(intro_quiver) -> AdmissibleIdeal:
    q = intro_quiver
    gen = PathVector.build(q, [(1, q.path("a d")), (-1, q.path("b c d"))])
    return AdmissibleIdeal.from_generators(q, [gen])


@pytest.fixture(scope="session")
def parallel_quiver() -> Quiver:
    """Two parallel arrows feeding one more; the multiple-arrow example."""
    return Quiver(
        "123",
        [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")],
    )


@pytest.fixture(scope="session")
def parallel_roots(parallel_quiver):
    q = parallel_quiver
    first = AdmissibleIdeal.from_generators(q, monomials(q, "ac"))
    second = AdmissibleIdeal.from_generators(q, monomials(q, "bc"))
    difference = AdmissibleIdeal.from_generators(
        q, [PathVector.build(q, [(1, q.path("a c")), (-1, q.path("b c"))])]
    )
    return first, second, difference
