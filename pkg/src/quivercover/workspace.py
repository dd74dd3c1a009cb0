"""Line-based workspace files: one quiver, named ideals, named transvection
words.  Parsing and serialization are exact inverses on canonical files."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, ParseError, QuiverCoverError
from .ideals import AdmissibleIdeal
from .quiver import Path, Quiver
from .vectors import PathVector

_TERM = re.compile(r"\s*(?:([+-])\s*)?(\d+(?:/\d+)?)\*\(([^()]*)\)")
_FACTOR = re.compile(r"^\s*T\s+(\S+)\s+\(([^()]*)\)\s+(-?\d+(?:/\d+)?)\s*$")


class Workspace:
    """A parsed workspace: the quiver plus named ideals and words."""

    __slots__ = ("quiver", "ideals", "words")

    def __init__(self, quiver: Quiver, ideals=None, words=None):
        self.quiver = quiver
        self.ideals: dict[str, AdmissibleIdeal] = dict(ideals or {})
        self.words: dict[str, tuple] = dict(words or {})

    def ideal(self, name: str) -> AdmissibleIdeal:
        if name not in self.ideals:
            raise DomainError(f"no ideal named {name!r} in the workspace")
        return self.ideals[name]

    def __repr__(self) -> str:
        return (
            f"Workspace({len(self.quiver.arrows)} arrows, "
            f"ideals {sorted(self.ideals)}, words {sorted(self.words)})"
        )


def parse_element(q: Quiver, text: str, line: int | None = None) -> PathVector:
    """Read a combination of parallel paths, e.g. ``1*(a h) + 1*(c e f g h)``."""
    if not text.strip():
        raise ParseError("empty element", line)
    terms = []
    pos = 0
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if m is None:
            raise ParseError(f"cannot read element near {text[pos:].strip()!r}", line)
        sign, scalar_text, labels_text = m.groups()
        if sign is None and not first:
            raise ParseError("element terms must be joined by + or -", line)
        scalar = Fraction(scalar_text)
        if sign == "-":
            scalar = -scalar
        labels = labels_text.split()
        if not labels:
            raise ParseError("element paths need at least one arrow", line)
        try:
            path = q.path(labels)
        except QuiverCoverError as exc:
            raise ParseError(str(exc), line) from exc
        terms.append((scalar, path))
        pos = m.end()
        first = False
    try:
        return PathVector.build(q, terms)
    except QuiverCoverError as exc:
        raise ParseError(str(exc), line) from exc


def parse_word(q: Quiver, text: str, line: int | None = None) -> tuple:
    """Read a transvection word, leftmost factor outermost; ``1`` is the
    identity.  Factors look like ``T a (c e f g) 1`` and are joined by ``;``."""
    stripped = text.strip()
    if stripped == "1":
        return ()
    factors = []
    for chunk in stripped.split(";"):
        m = _FACTOR.match(chunk)
        if m is None:
            raise ParseError(f"cannot read word factor {chunk.strip()!r}", line)
        arrow, labels_text, scalar_text = m.groups()
        labels = labels_text.split()
        try:
            path = q.path(labels)
            q.bypass(arrow, path)
        except QuiverCoverError as exc:
            raise ParseError(str(exc), line) from exc
        factors.append((arrow, path, Fraction(scalar_text)))
    return tuple(factors)


def parse_workspace(text: str) -> Workspace:
    """Parse a workspace file; raises ParseError with a line number."""
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    arrow_order: list[str] | None = None
    ideal_blocks: list[tuple[str, list[tuple[int, str]]]] = []
    word_lines: list[tuple[int, str, str]] = []
    quiver_done = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, _, rest = line.partition(" ")
        rest = rest.strip()
        if directive in ("vertex", "arrow", "arroworder", "arrowoder"):
            if quiver_done:
                raise ParseError(
                    "quiver declarations must precede ideal and word blocks", number
                )
            if directive == "vertex":
                if len(rest.split()) != 1:
                    raise ParseError("vertex takes exactly one name", number)
                vertices.append(rest)
            elif directive == "arrow":
                fields = rest.split()
                if len(fields) != 3:
                    raise ParseError("arrow takes label, source, target", number)
                arrows.append(tuple(fields))
            else:
                if arrow_order is not None:
                    raise ParseError("arroworder given twice", number)
                arrow_order = rest.split()
        elif directive == "ideal":
            quiver_done = True
            if len(rest.split()) != 1:
                raise ParseError("ideal takes exactly one name", number)
            if any(name == rest for name, _ in ideal_blocks):
                raise ParseError(f"duplicate ideal name {rest!r}", number)
            ideal_blocks.append((rest, []))
        elif directive == "gen":
            if not ideal_blocks or not quiver_done:
                raise ParseError("gen outside an ideal block", number)
            ideal_blocks[-1][1].append((number, rest))
        elif directive == "word":
            quiver_done = True
            name, _, body = rest.partition(" ")
            if not name or not body.strip():
                raise ParseError("word takes a name and a transvection word", number)
            if any(existing == name for _, existing, _ in word_lines):
                raise ParseError(f"duplicate word name {name!r}", number)
            word_lines.append((number, name, body.strip()))
        else:
            raise ParseError(f"unknown directive {directive!r}", number)

    if not vertices:
        raise ParseError("missing quiver block")
    q = Quiver(vertices, arrows, arrow_order)

    ideals: dict[str, AdmissibleIdeal] = {}
    for name, gen_lines in ideal_blocks:
        gens = [parse_element(q, body, number) for number, body in gen_lines]
        ideals[name] = AdmissibleIdeal.from_generators(q, gens)
    words = {
        name: parse_word(q, body, number) for number, name, body in word_lines
    }
    return Workspace(q, ideals, words)


def element_str(vec: PathVector) -> str:
    """Canonical element text, terms descending in the weight order."""
    if vec.is_zero:
        return "0"
    parts = []
    for path, coeff in vec.terms():
        labels = " ".join(path.arrows)
        if not parts:
            parts.append(f"{coeff}*({labels})")
        elif coeff < 0:
            parts.append(f"- {-coeff}*({labels})")
        else:
            parts.append(f"+ {coeff}*({labels})")
    return " ".join(parts)


def word_str(factors) -> str:
    """Canonical word text; the identity is written ``1``."""
    rendered = []
    for factor in factors:
        if len(factor) == 2:
            bypass, tau = factor
            arrow, path = bypass.arrow, bypass.path
        else:
            arrow, path, tau = factor
        rendered.append(f"T {arrow} ({' '.join(path.arrows)}) {tau}")
    return " ; ".join(rendered) if rendered else "1"


def serialize_workspace(ws: Workspace) -> str:
    """Canonical file text; parsing it back reproduces the workspace."""
    q = ws.quiver
    lines = [f"vertex {v}" for v in q.vertices]
    lines.extend(f"arrow {a.label} {a.source} {a.target}" for a in q.arrows)
    lines.append("arroworder " + " ".join(q.arrow_order))
    for name, ideal in ws.ideals.items():
        lines.append("")
        lines.append(f"ideal {name}")
        lines.extend(f"gen {element_str(g)}" for g in ideal.generators)
    for name, factors in ws.words.items():
        lines.append("")
        lines.append(f"word {name} {word_str(factors)}")
    return "\n".join(lines) + "\n"
