"""Canonical text format and DOT export.

Text format::

    # optional comments
    a 3
    x1 y2
    y2 x3

The header gives the half-order; every further non-empty line is one arc
``<from> <to>`` with 1-based names.  Duplicate arc lines are rejected.
"""

from __future__ import annotations

from typing import TextIO

from .digraph import BipartiteDigraph, DigraphError, Side, Vertex, build

__all__ = ["ParseError", "parse", "serialize", "read", "to_dot"]


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse(text: str) -> BipartiteDigraph:
    a = None
    arcs: list[tuple[Vertex, Vertex]] = []
    seen: dict[tuple[Vertex, Vertex], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if a is None:
            if len(fields) != 2 or fields[0] != "a":
                raise ParseError(lineno, "expected header 'a <integer>'")
            try:
                a = int(fields[1])
            except ValueError:
                raise ParseError(lineno, f"half-order {fields[1]!r} is not an integer") from None
            if a < 1:
                raise ParseError(lineno, "half-order must be at least 1")
            continue
        if len(fields) != 2:
            raise ParseError(lineno, "expected '<from> <to>'")
        try:
            u, v = Vertex.parse(fields[0]), Vertex.parse(fields[1])
        except DigraphError as exc:
            raise ParseError(lineno, str(exc)) from None
        if (u, v) in seen:
            raise ParseError(lineno, f"duplicate arc {u} {v} (first on line {seen[u, v]})")
        seen[u, v] = lineno
        arcs.append((u, v))
        try:
            build(a, [(u, v)])
        except DigraphError as exc:
            raise ParseError(lineno, str(exc)) from None
    if a is None:
        raise ParseError(0, "missing header 'a <integer>'")
    return build(a, arcs)


def read(stream: TextIO) -> BipartiteDigraph:
    return parse(stream.read())


def serialize(D: BipartiteDigraph) -> str:
    lines = [f"a {D.a}"]
    lines.extend(f"{u} {v}" for u, v in D.arcs())
    return "\n".join(lines) + "\n"


def to_dot(D: BipartiteDigraph, name: str = "D") -> str:
    """DOT rendering: V1 boxed, V2 elliptical, 2-cycles as one two-headed edge."""
    out = [f"digraph {name} {{"]
    for v in D.vertices():
        shape = "box" if v.side is Side.ONE else "ellipse"
        out.append(f"  {v} [shape={shape}];")
    for u, v in D.arc_ids():
        both = D.has_arc_id(v, u)
        if both and v < u:
            continue
        attr = " [dir=both]" if both else ""
        out.append(f"  {D.vertex(u)} -> {D.vertex(v)}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"
