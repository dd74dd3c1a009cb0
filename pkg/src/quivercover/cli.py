"""Command line surface: every subcommand reads a workspace file and prints a
deterministic report, as text or as JSON with the same content."""

from __future__ import annotations

import argparse
import json
import sys

from .autos import decreasing_normal_form, evaluate_word
from .errors import QuiverCoverError
from .homotopy import (
    abelian_invariants,
    homotopy_closure,
    pi1_presentation,
    simplify_presentation,
)
from .ideals import canonical_transvection_product, minimal_relations
from .order import sorted_bypasses
from .quiver import Path, validate_quiver
from .relgraph import build_gamma, certify_universal, export_dot, unique_source_check
from .workspace import (
    Workspace,
    element_str,
    parse_element,
    parse_word,
    parse_workspace,
    word_str,
)


def _composition(path: Path) -> str:
    if path.is_stationary:
        return f"e_{path.source}"
    return "".join(reversed(path.arrows))


def _bypass_str(b) -> str:
    return f"({b.arrow},{_composition(b.path)})"


def _traversal(path: Path) -> str:
    return "(" + " ".join(path.arrows) + ")"


def _load(args) -> Workspace:
    with open(args.workspace, encoding="utf-8") as handle:
        return parse_workspace(handle.read())


def _resolve_word(ws: Workspace, text: str):
    """A word argument is a workspace word name or inline word text."""
    if text in ws.words:
        return ws.words[text]
    return parse_word(ws.quiver, text)


def _emit(args, payload: dict, text_lines) -> int:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)
    return 0


def _invariants_str(invariants) -> str:
    rank, torsion = invariants
    out = f"rank {rank}"
    if torsion:
        out += " torsion " + ",".join(str(t) for t in torsion)
    return out


def _presentation_payload(p) -> dict:
    return {
        "basepoint": p.basepoint,
        "generators": list(p.generators),
        "relators": [list(word) for word in p.relators],
        "relator_words": [p.word_str(word) for word in p.relators],
    }


# -- subcommand bodies -----------------------------------------------------------


def _cmd_validate(args) -> int:
    ws = _load(args)
    report = validate_quiver(ws.quiver)
    lines = [
        f"vertices {report['vertices']}",
        f"arrows {report['arrows']}",
        f"acyclic {'yes' if report['acyclic'] else 'no'}",
        f"no multiple arrows {'yes' if report['no_multiple_arrows'] else 'no'}",
        f"connected {'yes' if report['connected'] else 'no'}",
        f"ideals {' '.join(sorted(ws.ideals)) if ws.ideals else '-'}",
        f"words {' '.join(sorted(ws.words)) if ws.words else '-'}",
    ]
    report["ideals"] = sorted(ws.ideals)
    report["words"] = sorted(ws.words)
    return _emit(args, report, lines)


def _cmd_paths(args) -> int:
    ws = _load(args)
    paths = list(ws.quiver.nontrivial_paths())
    payload = {
        "paths": [
            {"source": p.source, "target": p.target, "arrows": list(p.arrows)}
            for p in paths
        ]
    }
    lines = [f"{_traversal(p)} : {p.source} -> {p.target}" for p in paths]
    return _emit(args, payload, lines)


def _cmd_bypasses(args) -> int:
    ws = _load(args)
    bypasses = ws.quiver.bypasses()
    payload = {
        "bypasses": [
            {"arrow": b.arrow, "path": list(b.path.arrows)} for b in bypasses
        ]
    }
    return _emit(args, payload, [_bypass_str(b) for b in bypasses])


def _cmd_order(args) -> int:
    ws = _load(args)
    ordered = sorted_bypasses(ws.quiver)
    rendered = [_bypass_str(b) for b in ordered]
    return _emit(args, {"order": rendered}, ["<".join(rendered)])


def _cmd_normalform(args) -> int:
    ws = _load(args)
    factors = _resolve_word(ws, args.word)
    product = decreasing_normal_form(ws.quiver, evaluate_word(ws.quiver, factors))
    outermost_first = tuple(reversed(product.factors))
    payload = {
        "word": word_str(outermost_first),
        "factors": [
            {"arrow": b.arrow, "path": list(b.path.arrows), "scalar": str(tau)}
            for b, tau in product.factors
        ],
    }
    return _emit(args, payload, [payload["word"]])


def _cmd_compose(args) -> int:
    ws = _load(args)
    q = ws.quiver
    psi = evaluate_word(q, ())
    for text in args.word:
        psi = psi.compose(evaluate_word(q, _resolve_word(ws, text)))
    images = {label: element_str(psi.apply_path(q.arrow_path(label))) for label in q.arrow_order}
    lines = [f"{label} -> {images[label]}" for label in q.arrow_order]
    return _emit(args, {"images": images}, lines)


def _cmd_apply(args) -> int:
    ws = _load(args)
    q = ws.quiver
    psi = evaluate_word(q, _resolve_word(ws, args.word))
    result = psi.apply(parse_element(q, args.element))
    return _emit(args, {"element": element_str(result)}, [element_str(result)])


def _cmd_groebner(args) -> int:
    ws = _load(args)
    ideal = ws.ideal(args.ideal)
    basis = ideal.basis()
    payload = {
        "basis": [element_str(r) for r in basis],
        "monomial": ideal.is_monomial,
        "dimensions": {
            f"{source} -> {target}": dim
            for (source, target), dim in ideal.dimensions().items()
        },
    }
    lines = [f"{r.source} -> {r.target} : {element_str(r)}" for r in basis]
    lines.append(f"monomial {'yes' if ideal.is_monomial else 'no'}")
    return _emit(args, payload, lines)


def _cmd_minrels(args) -> int:
    ws = _load(args)
    ideal = ws.ideal(args.ideal)
    element = parse_element(ws.quiver, args.element)
    parts = minimal_relations(ideal, element)
    payload = {
        "parts": [
            {"element": element_str(m.vector), "monomial": m.is_monomial}
            for m in parts
        ]
    }
    lines = [
        f"{element_str(m.vector)} ({'monomial' if m.is_monomial else 'not monomial'})"
        for m in parts
    ]
    return _emit(args, payload, lines)


def _cmd_psi(args) -> int:
    ws = _load(args)
    root = ws.ideal(args.i0)
    seed = evaluate_word(ws.quiver, _resolve_word(ws, args.seed))
    target = ws.ideal(args.target) if args.target else None
    product = canonical_transvection_product(root, seed, target=target)
    outermost_first = tuple(reversed(product.factors))
    payload = {
        "word": word_str(outermost_first),
        "factors": [
            {"arrow": b.arrow, "path": list(b.path.arrows), "scalar": str(tau)}
            for b, tau in product.factors
        ],
    }
    return _emit(args, payload, [payload["word"]])


def _cmd_pi1(args) -> int:
    ws = _load(args)
    ideal = ws.ideal(args.ideal)
    relation = homotopy_closure(ideal)
    presentation = pi1_presentation(relation, args.basepoint)
    invariants = abelian_invariants(presentation)
    simplified = simplify_presentation(presentation)
    payload = _presentation_payload(presentation)
    payload["invariants"] = {"rank": invariants[0], "torsion": list(invariants[1])}
    payload["free_certified"] = simplified.free_certified
    payload["simplified_generators"] = list(simplified.presentation.generators)
    lines = [
        f"basepoint {presentation.basepoint}",
        "generators " + (" ".join(presentation.generators) or "-"),
    ]
    if presentation.relators:
        lines.extend(
            f"relator {presentation.word_str(word)}" for word in presentation.relators
        )
    else:
        lines.append("relators -")
    lines.append("abelian invariants " + _invariants_str(invariants))
    if simplified.free_certified:
        lines.append(
            f"free of rank {len(simplified.presentation.generators)} (certified)"
        )
    return _emit(args, payload, lines)


def _cmd_homotopy(args) -> int:
    ws = _load(args)
    relation = homotopy_closure(ws.ideal(args.ideal))
    classes = relation.classes()
    payload = {
        "classes": [[list(p.arrows) for p in members] for members in classes]
    }
    lines = [" ~ ".join(_traversal(p) for p in members) for members in classes]
    if not lines:
        lines = ["no identifications"]
    return _emit(args, payload, lines)


def _cmd_gamma(args) -> int:
    ws = _load(args)
    root = ws.ideal(args.i0)
    extra = tuple(ws.ideal(name) for name in args.extra_root)
    graph = build_gamma(root, extra_roots=extra, basepoint=args.basepoint)
    unique, sources = unique_source_check(graph)
    node_lines = []
    for node in graph.nodes:
        node_lines.append(
            f"node {node.index} level {node.level} "
            f"{_invariants_str(node.invariants)} representatives "
            f"{len(node.representatives)}"
        )
    edge_lines = [
        f"edge {edge.source} -> {edge.target} witnesses "
        + " ".join(_bypass_str(b) for b in edge.witnesses)
        for edge in graph.edges
    ]
    summary = [
        f"nodes {len(graph.nodes)}",
        f"edges {len(graph.edges)}",
        f"scope {graph.scope}",
        f"source node {graph.source_index}",
        f"unique source {'yes' if unique else 'no'}"
        + ("" if unique else " (sources " + " ".join(str(i) for i in sources) + ")"),
    ]
    payload = {
        "nodes": [
            {
                "index": node.index,
                "level": node.level,
                "rank": node.invariants[0],
                "torsion": list(node.invariants[1]),
                "representatives": len(node.representatives),
            }
            for node in graph.nodes
        ],
        "edges": [
            {
                "source": edge.source,
                "target": edge.target,
                "witnesses": [_bypass_str(b) for b in edge.witnesses],
            }
            for edge in graph.edges
        ],
        "scope": graph.scope,
        "source": graph.source_index,
        "unique_source": unique,
        "sources": list(sources),
    }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(export_dot(graph))
        summary.append(f"dot written to {args.dot}")
        payload["dot"] = args.dot
    return _emit(args, payload, summary + node_lines + edge_lines)


def _cmd_certify(args) -> int:
    ws = _load(args)
    root = ws.ideal(args.i0)
    target = ws.ideal(args.target)
    seed = evaluate_word(ws.quiver, _resolve_word(ws, args.seed))
    certificate = certify_universal(root, target, seed, basepoint=args.basepoint)
    outermost_first = tuple(reversed(certificate.product.factors))
    source_p = certificate.source_presentation
    target_p = certificate.target_presentation
    source_inv = abelian_invariants(source_p)
    target_inv = abelian_invariants(target_p)
    lines = [
        f"canonical product {word_str(outermost_first)}",
        f"path length {len(certificate.path)}"
        + (" cases " + " ".join(certificate.path.cases) if certificate.path.cases else ""),
        f"basepoint {certificate.basepoint}",
        "source pi1 " + _invariants_str(source_inv)
        + " generators " + (" ".join(source_p.generators) or "-"),
        "target pi1 " + _invariants_str(target_inv),
        f"kernel normally generated by {len(certificate.kernel_generators)} words",
    ]
    lines.extend(
        "  " + target_p.word_str(word) for word in certificate.kernel_generators
    )
    payload = {
        "word": word_str(outermost_first),
        "path_cases": list(certificate.path.cases),
        "basepoint": certificate.basepoint,
        "source": _presentation_payload(source_p),
        "target": _presentation_payload(target_p),
        "source_invariants": {
            "rank": source_inv[0],
            "torsion": list(source_inv[1]),
        },
        "target_invariants": {
            "rank": target_inv[0],
            "torsion": list(target_inv[1]),
        },
        "kernel_words": [target_p.word_str(word) for word in certificate.kernel_generators],
    }
    return _emit(args, payload, lines)


# -- argument wiring -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivercover",
        description="Computational algebra on bound quiver presentations.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def subcommand(name, body, help_text):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("workspace", help="workspace file")
        sub.add_argument("--json", action="store_true", help="machine readable output")
        sub.set_defaults(body=body)
        return sub

    subcommand("validate", _cmd_validate, "structural report of the workspace")
    subcommand("paths", _cmd_paths, "list the nontrivial paths")
    subcommand("bypasses", _cmd_bypasses, "list the bypasses in listing order")
    subcommand("order", _cmd_order, "print the sorted bypass chain")

    sub = subcommand("normalform", _cmd_normalform, "decreasing normal form of a word")
    sub.add_argument("--word", required=True, help="word name or inline word text")

    sub = subcommand("compose", _cmd_compose, "compose words and print arrow images")
    sub.add_argument(
        "--word", action="append", required=True, help="repeatable, outermost first"
    )

    sub = subcommand("apply", _cmd_apply, "apply a word to an element")
    sub.add_argument("--word", required=True)
    sub.add_argument("--element", required=True)

    sub = subcommand("groebner", _cmd_groebner, "print the reduced basis of an ideal")
    sub.add_argument("--ideal", required=True)

    sub = subcommand("minrels", _cmd_minrels, "split an element into minimal relations")
    sub.add_argument("--ideal", required=True)
    sub.add_argument("--element", required=True)

    sub = subcommand("psi", _cmd_psi, "canonical transvection product of a seed")
    sub.add_argument("--i0", required=True, help="monomial root ideal")
    sub.add_argument("--seed", required=True, help="seed word")
    sub.add_argument("--target", help="check the image against this ideal")

    sub = subcommand("pi1", _cmd_pi1, "fundamental group presentation")
    sub.add_argument("--ideal", required=True)
    sub.add_argument("--basepoint")

    sub = subcommand("homotopy", _cmd_homotopy, "identified path classes of an ideal")
    sub.add_argument("--ideal", required=True)

    sub = subcommand("gamma", _cmd_gamma, "build the graph of homotopy relations")
    sub.add_argument("--i0", required=True)
    sub.add_argument("--extra-root", action="append", default=[], help="repeatable")
    sub.add_argument("--basepoint")
    sub.add_argument("--dot", help="also write DOT text to this file")

    sub = subcommand("certify", _cmd_certify, "universal cover certificate")
    sub.add_argument("--i0", required=True)
    sub.add_argument("--target", required=True)
    sub.add_argument("--seed", required=True)
    sub.add_argument("--basepoint")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.body(args)
    except QuiverCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
