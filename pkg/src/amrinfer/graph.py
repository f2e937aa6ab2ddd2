"""Rooted labelled semantic graphs and the algebra defined over them.

The graph model is deliberately small: variables map to concepts, edges are
ordered ``(source, role, target)`` triples where a target is either another
variable or a constant, and one variable is the root. Roles split into two
classes that drive every comparison in the package:

* argument roles (``:ARG0``..``:ARGn``, ``:op1``..``:opn``) must match
  structurally, and
* every other role (``:mod``, ``:time``, ``:manner``, ``:domain``,
  inverse ``-of`` forms, ...) is relaxable and may be ignored.

All operations are pure; graphs are immutable value objects and safe to
share between workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DuplicateRoleError,
    GraphInvariantError,
    InvalidSiteError,
)

_ARGUMENT_ROLE = re.compile(r":(?:ARG\d+|op\d+)\Z")
_SENSE_SUFFIX = re.compile(r"\A(?P<stem>.+)-(?P<sense>\d{2})\Z")

NodeId = str


def is_argument_role(role: str) -> bool:
    """True for ``:ARGn`` / ``:opn`` roles; everything else is relaxable.

    Inverse forms such as ``:ARG1-of`` do not count: they are stored as
    written and treated as relaxable modifiers.
    """
    return _ARGUMENT_ROLE.match(role) is not None


@dataclass(frozen=True)
class Concept:
    """A node label, e.g. ``scar`` or ``contain-01``.

    A trailing two-digit suffix marks a predicate sense; concepts without
    one are treated as nominal throughout the package.
    """

    label: str

    @property
    def sense(self) -> str | None:
        m = _SENSE_SUFFIX.match(self.label)
        return m.group("sense") if m else None

    @property
    def stem(self) -> str:
        m = _SENSE_SUFFIX.match(self.label)
        return m.group("stem") if m else self.label

    @property
    def is_predicate(self) -> bool:
        return self.sense is not None

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Constant:
    """A leaf edge target that is not a variable: ``-``, ``42``, ``"text"``."""

    value: str
    is_string: bool = False

    def render(self) -> str:
        return f'"{self.value}"' if self.is_string else self.value

    def __str__(self) -> str:
        return self.render()


class Edge(NamedTuple):
    source: NodeId
    role: str
    target: "NodeId | Constant"

    @property
    def is_argument(self) -> bool:
        return is_argument_role(self.role)


@dataclass(frozen=True)
class AmrGraph:
    """Immutable rooted graph. Construction validates well-formedness:

    * the root is a known node and every edge endpoint is known,
    * no duplicate ``(source, role, target)`` edge, and
    * every node is reachable from the root following edge direction.

    Node order (dict insertion order) and edge order are part of the value;
    they fix serialization and tie-breaking everywhere else.
    """

    root: NodeId
    nodes: dict[NodeId, Concept]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        self.validate()

    def validate(self) -> None:
        if self.root not in self.nodes:
            raise GraphInvariantError(f"root {self.root!r} is not a node")
        seen: set[Edge] = set()
        for e in self.edges:
            if e.source not in self.nodes:
                raise GraphInvariantError(f"edge source {e.source!r} is not a node")
            if not isinstance(e.target, Constant) and e.target not in self.nodes:
                raise GraphInvariantError(f"edge target {e.target!r} is not a node")
            if e in seen:
                raise GraphInvariantError(f"duplicate edge {e}")
            seen.add(e)
        reached = self.closure(self.root)
        unreached = [n for n in self.nodes if n not in reached]
        if unreached:
            raise GraphInvariantError(
                f"nodes not reachable from root: {', '.join(unreached)}"
            )

    # -- basic accessors ---------------------------------------------------

    def concept(self, node: NodeId) -> Concept:
        return self.nodes[node]

    def concepts(self) -> set[str]:
        """Set of concept labels present in the graph."""
        return {c.label for c in self.nodes.values()}

    def has_concept(self, label: str) -> bool:
        return any(c.label == label for c in self.nodes.values())

    def outgoing(self, node: NodeId) -> list[Edge]:
        return [e for e in self.edges if e.source == node]

    def node_index(self, node: NodeId) -> int:
        """Stable position of a node, used for deterministic tie-breaking."""
        for i, n in enumerate(self.nodes):
            if n == node:
                return i
        raise KeyError(node)

    def closure(self, node: NodeId) -> list[NodeId]:
        """Nodes reachable from ``node`` along edge direction, in a stable
        depth-first order (constants excluded)."""
        seen: list[NodeId] = []
        stack = [node]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.append(n)
            targets = [
                e.target
                for e in self.edges
                if e.source == n and not isinstance(e.target, Constant)
            ]
            stack.extend(reversed(targets))
        return seen

    def subgraph_at(self, node: NodeId) -> "AmrGraph":
        """The subgraph rooted at ``node``: its closure plus all internal
        edges (including constant-targeted ones)."""
        keep = self.closure(node)
        nodes = {n: self.nodes[n] for n in keep}
        edges = tuple(
            e
            for e in self.edges
            if e.source in nodes
            and (isinstance(e.target, Constant) or e.target in nodes)
        )
        return AmrGraph(root=node, nodes=nodes, edges=edges)

    def argument_frames(self) -> list["Frame"]:
        """Every predicate node together with the span it dominates through
        its argument-class edges."""
        frames = []
        for n, c in self.nodes.items():
            if not c.is_predicate:
                continue
            span_nodes: dict[NodeId, Concept] = {n: c}
            for e in self.outgoing(n):
                if e.is_argument and not isinstance(e.target, Constant):
                    for m in self.closure(e.target):
                        span_nodes.setdefault(m, self.nodes[m])
            span_edges = tuple(
                e
                for e in self.edges
                if e.source in span_nodes
                and (isinstance(e.target, Constant) or e.target in span_nodes)
            )
            frames.append(Frame(head=n, span=AmrGraph(n, span_nodes, span_edges)))
        return frames


@dataclass(frozen=True)
class Frame:
    """A predicate node plus the material its argument edges dominate."""

    head: NodeId
    span: AmrGraph


# ---------------------------------------------------------------------------
# Relaxed matching
# ---------------------------------------------------------------------------


def _edge_keys(g: AmrGraph, argument_only: bool) -> set[tuple]:
    keys = set()
    for e in g.edges:
        if argument_only and not e.is_argument:
            continue
        t = ("const", e.target.value, e.target.is_string) if isinstance(
            e.target, Constant
        ) else ("node", e.target)
        keys.add((e.source, e.role, t))
    return keys


def _match_nodes(
    inner: AmrGraph,
    outer: AmrGraph,
    *,
    bijective: bool,
) -> dict[NodeId, NodeId] | None:
    """Search for an injective, concept-preserving node mapping under which
    every argument-class edge of ``inner`` exists in ``outer``.

    With ``bijective`` the mapping must also cover all of ``outer`` and
    carry its argument-class edges back, giving a single witness for
    equivalence. Returns the mapping or None.
    """
    inner_nodes = list(inner.nodes)
    if bijective and len(inner_nodes) != len(outer.nodes):
        return None
    candidates: dict[NodeId, list[NodeId]] = {}
    for v in inner_nodes:
        cs = [w for w, c in outer.nodes.items() if c == inner.nodes[v]]
        if not cs:
            return None
        candidates[v] = cs

    outer_keys = _edge_keys(outer, argument_only=False)
    inner_arg_edges = [e for e in inner.edges if e.is_argument]
    # Most-constrained node first; stable index breaks ties.
    index = {n: i for i, n in enumerate(inner_nodes)}
    order = sorted(inner_nodes, key=lambda v: (len(candidates[v]), index[v]))

    assign: dict[NodeId, NodeId] = {}
    used: set[NodeId] = set()

    def edges_ok() -> bool:
        for e in inner_arg_edges:
            if e.source not in assign:
                continue
            if isinstance(e.target, Constant):
                key = (assign[e.source], e.role, ("const", e.target.value, e.target.is_string))
                if key not in outer_keys:
                    return False
            elif e.target in assign:
                key = (assign[e.source], e.role, ("node", assign[e.target]))
                if key not in outer_keys:
                    return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            assign[v] = w
            used.add(w)
            if edges_ok() and backtrack(i + 1):
                return True
            del assign[v]
            used.remove(w)
        return False

    if not backtrack(0):
        return None
    if bijective:
        # Forward preservation plus equal argument-edge counts makes the
        # correspondence a bijection on argument structure.
        if len(inner_arg_edges) != sum(1 for e in outer.edges if e.is_argument):
            return None
    return dict(assign)


def relaxed_subset(inner: AmrGraph, outer: AmrGraph) -> bool:
    """True when ``inner`` embeds injectively into ``outer`` preserving
    concepts and argument-class edges; relaxable edges are ignored on both
    sides."""
    return _match_nodes(inner, outer, bijective=False) is not None


def relaxed_isomorphic(a: AmrGraph, b: AmrGraph) -> bool:
    """Mutual relaxed containment under one bijective witness: same concept
    multiset and identical argument-class structure, modifiers ignored."""
    return _match_nodes(a, b, bijective=True) is not None


def exact_isomorphic(a: AmrGraph, b: AmrGraph) -> bool:
    """Bijection preserving the root, every concept, and every edge with its
    role. Used for serialization round-trips, never for inference."""
    if len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return False
    candidates: dict[NodeId, list[NodeId]] = {}
    for v, c in a.nodes.items():
        cs = [w for w, cw in b.nodes.items() if cw == c]
        if not cs:
            return False
        candidates[v] = cs
    if b.root not in candidates.get(a.root, []):
        return False
    candidates[a.root] = [b.root]

    b_keys = _edge_keys(b, argument_only=False)
    index = {n: i for i, n in enumerate(a.nodes)}
    order = sorted(a.nodes, key=lambda v: (len(candidates[v]), index[v]))
    assign: dict[NodeId, NodeId] = {}
    used: set[NodeId] = set()

    def edges_ok() -> bool:
        for e in a.edges:
            if e.source not in assign:
                continue
            if isinstance(e.target, Constant):
                key = (assign[e.source], e.role, ("const", e.target.value, e.target.is_string))
            elif e.target in assign:
                key = (assign[e.source], e.role, ("node", assign[e.target]))
            else:
                continue
            if key not in b_keys:
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            assign[v] = w
            used.add(w)
            if edges_ok() and backtrack(i + 1):
                return True
            del assign[v]
            used.remove(w)
        return False

    return backtrack(0)


# ---------------------------------------------------------------------------
# Graph difference
# ---------------------------------------------------------------------------

EXACT_DIFFERENCE_CAP = 25


@dataclass(frozen=True)
class GraphDelta:
    """Difference between two graphs under a maximum-common-subgraph
    alignment. Added material is expressed in the ``to`` graph's node ids;
    ``node_map`` sends aligned ``from`` nodes to their ``to`` counterparts.
    """

    node_map: dict[NodeId, NodeId]
    removed_nodes: tuple[tuple[NodeId, Concept], ...]
    removed_edges: tuple[Edge, ...]
    added_nodes: tuple[tuple[NodeId, Concept], ...]
    added_edges: tuple[Edge, ...]
    to_root: NodeId
    approximate: bool = False

    @property
    def is_empty(self) -> bool:
        return not (
            self.removed_nodes
            or self.removed_edges
            or self.added_nodes
            or self.added_edges
        )

    def attachment_root(self, to_graph: AmrGraph) -> Concept | None:
        """Concept heading the added material: the first added node entered
        from retained material, or the new root itself when it is added."""
        added = {n for n, _ in self.added_nodes}
        if not added:
            return None
        if self.to_root in added:
            return to_graph.nodes[self.to_root]
        mapped_targets = set(self.node_map.values())
        for e in self.added_edges:
            if isinstance(e.target, Constant):
                continue
            if e.target in added and e.source not in added:
                return to_graph.nodes[e.target]
            if e.source in added and e.target in mapped_targets:
                return to_graph.nodes[e.source]
        return to_graph.nodes[self.added_nodes[0][0]]


def _greedy_alignment(from_g: AmrGraph, to_g: AmrGraph) -> dict[NodeId, NodeId]:
    """Concept-anchored fallback for graphs past the exact-search cap."""
    taken: set[NodeId] = set()
    mapping: dict[NodeId, NodeId] = {}
    for v, c in from_g.nodes.items():
        for w, cw in to_g.nodes.items():
            if w not in taken and cw == c:
                mapping[v] = w
                taken.add(w)
                break
    return mapping


_ALIGNMENT_BUDGET = 200_000


class _BudgetExhausted(Exception):
    pass


def _exact_alignment(from_g: AmrGraph, to_g: AmrGraph) -> dict[NodeId, NodeId]:
    """Maximum-common-subgraph alignment: maximises mapped nodes, then
    matched edges. Deterministic: candidates are tried in stable node order
    and only strict improvements replace the incumbent. Stops early once a
    perfect alignment is seen; raises :class:`_BudgetExhausted` when the
    search state count exceeds the budget (many same-concept nodes)."""
    from_nodes = list(from_g.nodes)
    to_keys = _edge_keys(to_g, argument_only=False)
    candidates = {
        v: [w for w, cw in to_g.nodes.items() if cw == from_g.nodes[v]]
        for v in from_nodes
    }
    perfect = (len(from_nodes), len(from_g.edges))

    def matched_edges(mapping: dict[NodeId, NodeId]) -> int:
        count = 0
        for e in from_g.edges:
            if e.source not in mapping:
                continue
            if isinstance(e.target, Constant):
                key = (mapping[e.source], e.role, ("const", e.target.value, e.target.is_string))
            elif e.target in mapping:
                key = (mapping[e.source], e.role, ("node", mapping[e.target]))
            else:
                continue
            if key in to_keys:
                count += 1
        return count

    best: dict[NodeId, NodeId] = {}
    best_score = (-1, -1)
    steps = 0

    def backtrack(i: int, assign: dict[NodeId, NodeId], used: set[NodeId]) -> None:
        nonlocal best, best_score, steps
        if best_score == perfect:
            return
        steps += 1
        if steps > _ALIGNMENT_BUDGET:
            raise _BudgetExhausted
        if i == len(from_nodes):
            score = (len(assign), matched_edges(assign))
            if score > best_score:
                best_score = score
                best = dict(assign)
            return
        # Upper bound: everything left could still match.
        if (len(assign) + (len(from_nodes) - i), len(from_g.edges)) < best_score:
            return
        v = from_nodes[i]
        for w in candidates[v]:
            if w in used:
                continue
            assign[v] = w
            used.add(w)
            backtrack(i + 1, assign, used)
            del assign[v]
            used.remove(w)
        backtrack(i + 1, assign, used)  # leave v unmatched

    backtrack(0, {}, set())
    return best


def graph_difference(from_g: AmrGraph, to_g: AmrGraph) -> GraphDelta:
    """Delta turning ``from_g`` into ``to_g``, minimal over relaxed
    maximum-common-subgraph alignments. The exact search runs up to
    ``EXACT_DIFFERENCE_CAP`` nodes and a fixed state budget; past either
    limit the alignment is greedy and the delta is flagged approximate."""
    approximate = (
        max(len(from_g.nodes), len(to_g.nodes)) > EXACT_DIFFERENCE_CAP
    )
    if approximate:
        mapping = _greedy_alignment(from_g, to_g)
    else:
        try:
            mapping = _exact_alignment(from_g, to_g)
        except _BudgetExhausted:
            mapping = _greedy_alignment(from_g, to_g)
            approximate = True

    to_keys = _edge_keys(to_g, argument_only=False)
    matched_to_edges: set[tuple] = set()
    removed_edges = []
    for e in from_g.edges:
        key = None
        if e.source in mapping:
            if isinstance(e.target, Constant):
                key = (mapping[e.source], e.role, ("const", e.target.value, e.target.is_string))
            elif e.target in mapping:
                key = (mapping[e.source], e.role, ("node", mapping[e.target]))
        if key is not None and key in to_keys:
            matched_to_edges.add(key)
        else:
            removed_edges.append(e)

    removed_nodes = tuple(
        (n, c) for n, c in from_g.nodes.items() if n not in mapping
    )
    mapped_to = set(mapping.values())
    added_nodes = tuple(
        (n, c) for n, c in to_g.nodes.items() if n not in mapped_to
    )
    added_edges = []
    for e in to_g.edges:
        t = ("const", e.target.value, e.target.is_string) if isinstance(
            e.target, Constant
        ) else ("node", e.target)
        if (e.source, e.role, t) not in matched_to_edges:
            added_edges.append(e)

    return GraphDelta(
        node_map=dict(mapping),
        removed_nodes=removed_nodes,
        removed_edges=tuple(removed_edges),
        added_nodes=added_nodes,
        added_edges=tuple(added_edges),
        to_root=to_g.root,
        approximate=approximate,
    )


def apply_delta(from_g: AmrGraph, delta: GraphDelta) -> AmrGraph:
    """Replay a delta on its ``from`` graph. The result is exactly
    isomorphic to the delta's ``to`` graph. Added material gets variables
    freshened against the surviving ``from`` ids."""
    reverse = {w: v for v, w in delta.node_map.items()}
    removed = {n for n, _ in delta.removed_nodes}
    removed_edge_set = set(delta.removed_edges)
    survivors = {n for n in from_g.nodes if n not in removed}

    taken = set(survivors)
    fresh: dict[NodeId, NodeId] = {}
    for n, _ in delta.added_nodes:
        fresh[n] = _fresh_name(n, taken)
        taken.add(fresh[n])

    def from_id(to_id: NodeId) -> NodeId:
        if to_id in reverse:
            return reverse[to_id]
        return fresh[to_id]

    nodes: dict[NodeId, Concept] = {}
    root = from_id(delta.to_root)
    ordered = [root] + [n for n in from_g.nodes if n != root]
    for n in ordered:
        if n in survivors:
            nodes[n] = from_g.nodes[n]
    for n, c in delta.added_nodes:
        nodes[fresh[n]] = c

    edges: list[Edge] = []
    for e in from_g.edges:
        if e in removed_edge_set:
            continue
        edges.append(e)
    for e in delta.added_edges:
        target = e.target if isinstance(e.target, Constant) else from_id(e.target)
        edges.append(Edge(from_id(e.source), e.role, target))

    return AmrGraph(root=root, nodes=nodes, edges=tuple(edges))


# ---------------------------------------------------------------------------
# Graph edits
# ---------------------------------------------------------------------------


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def _import_nodes(
    graph: AmrGraph, taken: set[NodeId]
) -> tuple[dict[NodeId, Concept], list[Edge], dict[NodeId, NodeId]]:
    """Copy a graph's nodes and edges, renaming variables that would clash.
    The counter-based renaming is deterministic."""
    rename: dict[NodeId, NodeId] = {}
    nodes: dict[NodeId, Concept] = {}
    for n, c in graph.nodes.items():
        fresh = _fresh_name(n, taken)
        taken.add(fresh)
        rename[n] = fresh
        nodes[fresh] = c
    edges = [
        Edge(
            rename[e.source],
            e.role,
            e.target if isinstance(e.target, Constant) else rename[e.target],
        )
        for e in graph.edges
    ]
    return nodes, edges, rename


def _carve(g: AmrGraph, at: NodeId) -> set[NodeId]:
    """Nodes that disappear when ``at`` is cut out: the part of ``at``'s
    closure no longer connected to the root once ``at`` is gone. Re-entrant
    nodes referenced from the surviving part stay."""
    dominated = set(g.closure(at))
    # Undirected connectivity from root in the graph without `at`.
    adj: dict[NodeId, set[NodeId]] = {n: set() for n in g.nodes}
    for e in g.edges:
        if isinstance(e.target, Constant):
            continue
        if at in (e.source, e.target):
            continue
        adj[e.source].add(e.target)
        adj[e.target].add(e.source)
    alive: set[NodeId] = set()
    if g.root != at:
        stack = [g.root]
        while stack:
            n = stack.pop()
            if n in alive:
                continue
            alive.add(n)
            stack.extend(adj[n])
    return {at} | {n for n in dominated if n not in alive}


def substitute_subgraph(
    g: AmrGraph, at: NodeId, replacement: AmrGraph
) -> AmrGraph:
    """Replace the subtree dominated by ``at`` with ``replacement``.

    Edges that pointed to ``at`` are repointed at the replacement's root;
    nodes under ``at`` that the rest of the graph still references survive.
    Replacement variables are freshened against the survivors.
    """
    if at not in g.nodes:
        raise InvalidSiteError(f"{at!r} is not a node of the graph")
    if at == g.root:
        raise InvalidSiteError(
            "substitution at the root replaces the whole graph; "
            "use the replacement directly"
        )
    removed = _carve(g, at)
    survivors = {n: c for n, c in g.nodes.items() if n not in removed}
    taken = set(survivors)
    new_nodes, new_edges, rename = _import_nodes(replacement, taken)

    edges: list[Edge] = []
    for e in g.edges:
        if e.source in removed:
            continue
        if not isinstance(e.target, Constant) and e.target in removed:
            if e.target == at:
                edges.append(Edge(e.source, e.role, rename[replacement.root]))
            continue
        edges.append(e)
    edges.extend(new_edges)

    nodes = dict(survivors)
    nodes.update(new_nodes)
    return AmrGraph(root=g.root, nodes=nodes, edges=tuple(edges))


def insert_argument(
    g: AmrGraph, frame_head: NodeId, arg: AmrGraph, role: str
) -> AmrGraph:
    """Attach ``arg`` under ``frame_head`` with ``role``. Raises
    :class:`DuplicateRoleError` when an equivalent attachment exists."""
    if frame_head not in g.nodes:
        raise InvalidSiteError(f"{frame_head!r} is not a node of the graph")
    for e in g.outgoing(frame_head):
        if e.role != role or isinstance(e.target, Constant):
            continue
        if relaxed_isomorphic(g.subgraph_at(e.target), arg):
            raise DuplicateRoleError(
                f"{frame_head!r} already carries {role} to an equivalent target"
            )
    taken = set(g.nodes)
    new_nodes, new_edges, rename = _import_nodes(arg, taken)
    nodes = dict(g.nodes)
    nodes.update(new_nodes)
    edges = list(g.edges)
    edges.append(Edge(frame_head, role, rename[arg.root]))
    edges.extend(new_edges)
    return AmrGraph(root=g.root, nodes=nodes, edges=tuple(edges))


def conjoin_graphs(
    a: AmrGraph, b: AmrGraph, connective: str = "and"
) -> AmrGraph:
    """Join two graphs under a fresh ``and``/``or`` node via ``:op1``,
    ``:op2``."""
    if connective not in ("and", "or"):
        raise GraphInvariantError(
            f"connective must be 'and' or 'or', got {connective!r}"
        )
    taken: set[NodeId] = set()
    root = _fresh_name(connective[0], taken)
    taken.add(root)
    a_nodes, a_edges, a_ren = _import_nodes(a, taken)
    b_nodes, b_edges, b_ren = _import_nodes(b, taken)
    nodes: dict[NodeId, Concept] = {root: Concept(connective)}
    nodes.update(a_nodes)
    nodes.update(b_nodes)
    edges = [
        Edge(root, ":op1", a_ren[a.root]),
        Edge(root, ":op2", b_ren[b.root]),
    ]
    edges.extend(a_edges)
    edges.extend(b_edges)
    return AmrGraph(root=root, nodes=nodes, edges=tuple(edges))


def relabel_node(g: AmrGraph, at: NodeId, concept: Concept) -> AmrGraph:
    """Swap one node's concept, keeping all structure. This is the
    predicate-substitution edit: the node keeps its arguments."""
    if at not in g.nodes:
        raise InvalidSiteError(f"{at!r} is not a node of the graph")
    nodes = {n: (concept if n == at else c) for n, c in g.nodes.items()}
    return AmrGraph(root=g.root, nodes=nodes, edges=g.edges)
