"""Penman notation parsing and canonical serialization.

The reader accepts a single s-expression of the form
``(var / concept [:role target]...)`` with nested instances, re-entrant
variable references and constants (quoted strings, numbers, ``-``/``+``)
as edge targets. Inverse roles such as ``:ARG0-of`` are kept as written;
they are ordinary relaxable roles to the rest of the package.

Serialization is canonical: depth-first from the root in stored edge
order, each concept printed at its first occurrence, re-entrancies as bare
variables, single-space separation. Parsing a serialization yields a graph
exactly isomorphic to the original.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DanglingReferenceError, PenmanSyntaxError
from .graph import AmrGraph, Concept, Constant, Edge, NodeId

_TOKEN = re.compile(
    r"""
    (?P<lparen>\() |
    (?P<rparen>\)) |
    (?P<slash>/) |
    (?P<role>:[^\s()/]+) |
    (?P<string>"(?:[^"\\]|\\.)*") |
    (?P<symbol>[^\s()/:]+)
    """,
    re.VERBOSE,
)

_IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9-]*\Z")
_NUMBER = re.compile(r"[+-]?\d+(?:\.\d+)?\Z")


@dataclass(frozen=True)
class PenmanSource:
    """Penman text plus optional provenance for diagnostics."""

    text: str
    origin: str | None = None


class _Token:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind: str, text: str, offset: int):
        self.kind = kind
        self.text = text
        self.offset = offset


def _tokenize(text: str, origin: str | None) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PenmanSyntaxError(f"unexpected character {text[pos]!r}", pos, origin)
        kind = m.lastgroup or "symbol"
        tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, origin: str | None):
        self.text = text
        self.origin = origin
        self.tokens = _tokenize(text, origin)
        self.pos = 0
        self.nodes: dict[NodeId, Concept] = {}
        self.edges: list[Edge] = []
        # (variable, offset) pairs awaiting definition.
        self.references: list[tuple[NodeId, int]] = []

    def error(self, message: str, offset: int | None = None) -> PenmanSyntaxError:
        if offset is None:
            offset = len(self.text.rstrip())
        return PenmanSyntaxError(message, offset, self.origin)

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {expected}, found end of input")
        if tok.kind != kind:
            raise self.error(f"expected {expected}, found {tok.text!r}", tok.offset)
        self.pos += 1
        return tok

    def parse(self) -> AmrGraph:
        root = self.instance()
        tok = self.peek()
        if tok is not None:
            raise self.error(f"trailing input {tok.text!r}", tok.offset)
        defined = set(self.nodes)
        for var, offset in self.references:
            if var not in defined:
                raise DanglingReferenceError(
                    f"variable {var!r} referenced but never defined", offset, self.origin
                )
        return AmrGraph(root=root, nodes=self.nodes, edges=tuple(self.edges))

    def instance(self) -> NodeId:
        self.take("lparen", "'('")
        var_tok = self.take("symbol", "a variable name")
        var = var_tok.text
        if not _IDENTIFIER.match(var):
            raise self.error(f"invalid variable name {var!r}", var_tok.offset)
        self.take("slash", "'/'")
        concept_tok = self.take("symbol", "a concept")
        if var in self.nodes:
            raise self.error(
                f"duplicate variable definition {var!r}", var_tok.offset
            )
        self.nodes[var] = Concept(concept_tok.text)
        while True:
            tok = self.peek()
            if tok is None:
                raise self.error("expected ':role' or ')', found end of input")
            if tok.kind == "rparen":
                self.pos += 1
                return var
            if tok.kind != "role":
                raise self.error(
                    f"expected ':role' or ')', found {tok.text!r}", tok.offset
                )
            self.pos += 1
            # Record the edge at the position its role appeared, so edge
            # order in the graph is document order.
            position = len(self.edges)
            target = self.target()
            edge = Edge(var, tok.text, target)
            if edge in self.edges:
                raise self.error(f"duplicate edge {tok.text}", tok.offset)
            self.edges.insert(position, edge)

    def target(self) -> NodeId | Constant:
        tok = self.peek()
        if tok is None:
            raise self.error("expected an edge target, found end of input")
        if tok.kind == "lparen":
            return self.instance()
        if tok.kind == "string":
            self.pos += 1
            return Constant(tok.text[1:-1], is_string=True)
        if tok.kind == "symbol":
            self.pos += 1
            if _NUMBER.match(tok.text) or tok.text in ("-", "+"):
                return Constant(tok.text)
            if _IDENTIFIER.match(tok.text):
                self.references.append((tok.text, tok.offset))
                return tok.text
            return Constant(tok.text)
        raise self.error(f"expected an edge target, found {tok.text!r}", tok.offset)


def parse_penman(src: str | PenmanSource) -> AmrGraph:
    """Parse one Penman expression into a graph.

    Raises :class:`PenmanSyntaxError` (with a character offset) on malformed
    input and :class:`DanglingReferenceError` when a variable is referenced
    but never defined.
    """
    if isinstance(src, PenmanSource):
        text, origin = src.text, src.origin
    else:
        text, origin = src, None
    if not text.strip():
        raise PenmanSyntaxError("empty input", 0, origin)
    return _Parser(text, origin).parse()


def serialize_penman(g: AmrGraph) -> str:
    """Canonical single-line Penman text for a well-formed graph.

    Deterministic: identical graphs yield byte-identical output, and
    ``parse_penman(serialize_penman(g))`` is exactly isomorphic to ``g``.
    """
    visited: set[NodeId] = set()

    def render_target(target: NodeId | Constant) -> str:
        if isinstance(target, Constant):
            return target.render()
        if target in visited:
            return target
        return emit(target)

    def emit(node: NodeId) -> str:
        visited.add(node)
        parts = [f"({node} / {g.nodes[node].label}"]
        for e in g.edges:
            if e.source == node:
                parts.append(f"{e.role} {render_target(e.target)}")
        return " ".join(parts) + ")"

    return emit(g.root)


def iter_penman(text: str, origin: str | None = None) -> list[AmrGraph]:
    """Parse a document of graphs separated by blank lines."""
    graphs = []
    block_lines: list[str] = []
    start_line = 1
    line_no = 0
    for line_no, line in enumerate(text.splitlines() + [""], start=1):
        if line.strip():
            if not block_lines:
                start_line = line_no
            block_lines.append(line)
            continue
        if block_lines:
            where = f"{origin}:{start_line}" if origin else f"line {start_line}"
            graphs.append(parse_penman(PenmanSource("\n".join(block_lines), where)))
            block_lines = []
    return graphs


def read_penman_file(path: str) -> list[AmrGraph]:
    with open(path, encoding="utf-8") as handle:
        return iter_penman(handle.read(), origin=path)
