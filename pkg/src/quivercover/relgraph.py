"""The graph of homotopy relations reachable by transvections, with covering
certificates.

Nodes are homotopy relations keyed by their canonical partition; each carries
a bounded set of representative ideals.  Breadth-first search probes every
stored representative along every bypass with every probe scalar and
classifies the outcome; successors create or merge nodes, coincidences add
representatives.  Node levels are longest-path distances in the finished
graph, which is checked to be acyclic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import config
from .autos import DecreasingProduct
from .errors import CapacityError, ConsistencyError, DomainError
from .homotopy import (
    GroupPresentation,
    HomotopyRelation,
    SurjectionWitness,
    abelian_invariants,
    direct_successor_case,
    homotopy_closure,
    pi1_presentation,
    surjection_witness,
)
from .ideals import AdmissibleIdeal, canonical_transvection_product
from .order import bypass_weight_key
from .quiver import Bypass, Path, Quiver


@dataclass(frozen=True)
class GammaNode:
    """One homotopy relation with its representative ideals and annotations."""

    index: int
    relation: HomotopyRelation
    representatives: tuple
    level: int
    invariants: tuple


@dataclass(frozen=True)
class GammaEdge:
    source: int
    target: int
    witnesses: tuple[Bypass, ...]


class GammaGraph:
    """The finished relation graph; immutable after construction."""

    __slots__ = (
        "quiver",
        "nodes",
        "edges",
        "source_index",
        "extra_root_indices",
        "basepoint",
        "scope",
        "_by_key",
        "_out",
        "_in",
    )

    def __init__(self, quiver, nodes, edges, source_index, extra_root_indices, basepoint, scope):
        self.quiver = quiver
        self.nodes: tuple[GammaNode, ...] = tuple(nodes)
        self.edges: tuple[GammaEdge, ...] = tuple(edges)
        self.source_index = source_index
        self.extra_root_indices = tuple(extra_root_indices)
        self.basepoint = basepoint
        self.scope = scope
        self._by_key = {node.relation.key(): node.index for node in self.nodes}
        self._out = {node.index: [] for node in self.nodes}
        self._in = {node.index: [] for node in self.nodes}
        for edge in self.edges:
            self._out[edge.source].append(edge.target)
            self._in[edge.target].append(edge.source)

    def node(self, index: int) -> GammaNode:
        return self.nodes[index]

    def index_of(self, relation: HomotopyRelation) -> int | None:
        return self._by_key.get(relation.key())

    def successors(self, index: int) -> tuple[int, ...]:
        return tuple(self._out[index])

    def predecessors(self, index: int) -> tuple[int, ...]:
        return tuple(self._in[index])

    def edge_between(self, source: int, target: int) -> GammaEdge | None:
        for edge in self.edges:
            if edge.source == source and edge.target == target:
                return edge
        return None

    def sources(self) -> tuple[int, ...]:
        return tuple(node.index for node in self.nodes if not self._in[node.index])

    def levels(self) -> dict[int, int]:
        """Count of nodes per level."""
        out: dict[int, int] = {}
        for node in self.nodes:
            out[node.level] = out.get(node.level, 0) + 1
        return out

    def __repr__(self) -> str:
        return (
            f"GammaGraph({len(self.nodes)} nodes, {len(self.edges)} edges, "
            f"scope {self.scope!r})"
        )


def unique_source_check(graph: GammaGraph):
    """(flag, source indices): true iff the primary root is the only source."""
    sources = graph.sources()
    return sources == (graph.source_index,), sources


def _probe_bypasses(q: Quiver) -> list[Bypass]:
    if q.has_multiple_arrows:
        return list(q.bypasses())
    return sorted(q.bypasses(), key=lambda b: bypass_weight_key(q, b))


def _edge_witness_key(q: Quiver):
    if q.has_multiple_arrows:
        return lambda b: (
            q.order_index(b.arrow),
            b.path.length,
            tuple(q.order_index(x) for x in b.path.arrows),
        )
    return lambda b: bypass_weight_key(q, b)


def build_gamma(
    root: AdmissibleIdeal,
    extra_roots=(),
    probes=(1,),
    node_cap: int | None = None,
    rep_cap: int | None = None,
    basepoint: str | None = None,
) -> GammaGraph:
    """Explore the relations reachable from the given root ideals.

    Probing a representative can also step backwards (the "predecessor"
    case); such probes are skipped, since the edge they witness is found
    forward from the predecessor node's own representatives.

    Every declared root keeps a node of its own, even when two roots share
    the same relation (the parallel-arrow counterexample needs both
    monomial roots visible as sources); successors always merge by
    relation.
    """
    q = root.quiver
    q._require_acyclic()
    if node_cap is None:
        node_cap = config.node_cap()
    if rep_cap is None:
        rep_cap = config.rep_cap()
    if basepoint is None:
        basepoint = q.vertices[0]
    probes = tuple(probes)
    roots = [root]
    for extra in extra_roots:
        if extra.quiver is not q:
            raise DomainError("extra roots must live on the root's quiver")
        roots.append(extra)
    scope = (
        "complete"
        if not q.has_multiple_arrows and root.is_monomial and not extra_roots
        else "reachable"
    )

    relations: list[HomotopyRelation] = []
    reps: list[list[AdmissibleIdeal]] = []
    by_key: dict = {}
    edge_map: dict[tuple[int, int], list[Bypass]] = {}
    worklist: deque[tuple[int, AdmissibleIdeal]] = deque()

    def finish(partial: bool = False) -> GammaGraph:
        levels = _longest_path_levels(len(relations), edge_map)
        nodes = []
        for i, relation in enumerate(relations):
            invariants = abelian_invariants(pi1_presentation(relation, basepoint))
            nodes.append(
                GammaNode(i, relation, tuple(reps[i]), levels[i], invariants)
            )
        edges = [
            GammaEdge(i, j, tuple(sorted(set(witnesses), key=_edge_witness_key(q))))
            for (i, j), witnesses in sorted(edge_map.items())
        ]
        return GammaGraph(
            q, nodes, edges, root_indices[0], root_indices[1:], basepoint, scope
        )

    def node_for(
        relation: HomotopyRelation, ideal: AdmissibleIdeal, as_root: bool = False
    ) -> int:
        if not as_root:
            index = by_key.get(relation.key())
            if index is not None:
                add_rep(index, ideal)
                return index
        if len(relations) >= node_cap:
            raise CapacityError(
                f"relation graph exceeded the node cap {node_cap}",
                partial=finish(partial=True),
            )
        index = len(relations)
        relations.append(relation)
        reps.append([ideal])
        by_key.setdefault(relation.key(), index)
        worklist.append((index, ideal))
        return index

    def add_rep(index: int, ideal: AdmissibleIdeal) -> None:
        if ideal in reps[index] or len(reps[index]) >= rep_cap:
            return
        reps[index].append(ideal)
        worklist.append((index, ideal))

    root_indices = []
    for ideal in roots:
        known = next(
            (i for i in root_indices if ideal in reps[i]),
            None,
        )
        if known is None:
            known = node_for(homotopy_closure(ideal), ideal, as_root=True)
        root_indices.append(known)

    bypass_probes = _probe_bypasses(q)
    while worklist:
        index, ideal = worklist.popleft()
        relation = relations[index]
        for bypass in bypass_probes:
            for tau in probes:
                probe = direct_successor_case(ideal, bypass, tau, relation=relation)
                if probe.case == "fixed" or probe.case == "predecessor":
                    continue
                if probe.case == "coincide":
                    add_rep(index, probe.image)
                    continue
                target = node_for(probe.relation, probe.image)
                edge_map.setdefault((index, target), []).append(bypass)

    return finish()


def _longest_path_levels(count: int, edge_map) -> list[int]:
    indegree = [0] * count
    out: dict[int, list[int]] = {i: [] for i in range(count)}
    for source, target in edge_map:
        indegree[target] += 1
        out[source].append(target)
    queue = deque(i for i in range(count) if not indegree[i])
    levels = [0] * count
    seen = 0
    while queue:
        i = queue.popleft()
        seen += 1
        for j in out[i]:
            levels[j] = max(levels[j], levels[i] + 1)
            indegree[j] -= 1
            if not indegree[j]:
                queue.append(j)
    if seen != count:
        raise ConsistencyError("relation graph contains an oriented cycle")
    return levels


# -- path realization and covering certificates --------------------------------


@dataclass(frozen=True)
class RealizedPath:
    """The ideal chain of a transvection product applied factor by factor,
    with the relation after each step and the step classification."""

    ideals: tuple
    relations: tuple
    cases: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.cases)


def realize_path(root: AdmissibleIdeal, product: DecreasingProduct) -> RealizedPath:
    """Apply the product's factors in increasing order, checking at every step
    that the bypass pair is identified by the new ideal's relation."""
    q = root.quiver
    ideals = [root]
    relations = [homotopy_closure(root)]
    cases: list[str] = []
    for step, (bypass, tau) in enumerate(product.factors):
        probe = direct_successor_case(
            ideals[-1], bypass, tau, relation=relations[-1]
        )
        relation = probe.relation if probe.relation is not None else relations[-1]
        if not relation.identifies(q.arrow_path(bypass.arrow), bypass.path):
            raise ConsistencyError(
                f"step {step + 1} ({bypass!r}, tau={tau}) classified as "
                f"{probe.case} leaves its pair unidentified; "
                f"chain so far {[c for c in cases]}"
            )
        ideals.append(probe.image)
        relations.append(relation)
        cases.append(probe.case)
    return RealizedPath(tuple(ideals), tuple(relations), tuple(cases))


@dataclass(frozen=True)
class UniversalCoverCertificate:
    """Everything needed to exhibit the monomial presentation's covering of the
    target: the canonical product, the realized relation chain, the surjection
    between the fundamental groups, and words normally generating its kernel."""

    target: AdmissibleIdeal
    product: DecreasingProduct
    path: RealizedPath
    witness: SurjectionWitness
    kernel_generators: tuple[tuple[int, ...], ...]
    basepoint: str

    @property
    def source_presentation(self) -> GroupPresentation:
        return self.witness.source

    @property
    def target_presentation(self) -> GroupPresentation:
        return self.witness.target


def certify_universal(
    root: AdmissibleIdeal,
    target: AdmissibleIdeal,
    seed,
    basepoint: str | None = None,
) -> UniversalCoverCertificate:
    """Certify that the monomial root presents the universal cover of the
    target: canonicalize the seed, realize its relation chain, and build the
    surjection from the root's free fundamental group onto the target's."""
    q = root.quiver
    if basepoint is None:
        basepoint = q.vertices[0]
    product = canonical_transvection_product(root, seed, target=target)
    path = realize_path(root, product)
    if path.ideals[-1] != target:
        raise ConsistencyError("realized chain does not end at the target ideal")
    witness = surjection_witness(path.relations[0], path.relations[-1], basepoint)
    return UniversalCoverCertificate(
        target,
        product,
        path,
        witness,
        witness.target.relators,
        basepoint,
    )


# -- rendering ------------------------------------------------------------------


def _composition(path: Path) -> str:
    if path.is_stationary:
        return f"e_{path.source}"
    return "".join(reversed(path.arrows))


def export_dot(graph: GammaGraph) -> str:
    """Deterministic DOT text for the graph."""
    from .workspace import element_str

    lines = ["digraph relations {", "  rankdir=TB;"]
    for node in graph.nodes:
        rank, torsion = node.invariants
        label = f"n{node.index} l={node.level} rank {rank}"
        if torsion:
            label += " torsion " + ",".join(str(t) for t in torsion)
        rep = node.representatives[0]
        gens = "; ".join(element_str(vec) for vec in rep.basis())
        if gens:
            label += r"\n<" + gens + ">"
        shape = "doubleoctagon" if node.index == graph.source_index else "ellipse"
        lines.append(f'  n{node.index} [label="{label}", shape={shape}];')
    for edge in graph.edges:
        witnesses = " ".join(
            f"({b.arrow},{_composition(b.path)})" for b in edge.witnesses
        )
        lines.append(f'  n{edge.source} -> n{edge.target} [label="{witnesses}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
