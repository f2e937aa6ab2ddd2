"""Forward quasi-symbolic inference: derive a conclusion graph from two
premise graphs and an inference type.

Each transformable type maps to a deterministic graph edit. Substitution
types locate a bridge concept shared by the premises and splice the
counterpart material in; insertion severs the donor frame at the bridge
and re-attaches it; conjunction joins the premises under ``and``; the
conditional type binds a rule's antecedent against the other premise and
emits the consequent. When several sites qualify the one with the largest
bridge subgraph wins (ties break lexicographically), and ``site_hint``
overrides the automatic choice.

The if/then wrapping is a heuristic (no faithful graph transformation
exists for it); see :data:`HEURISTIC_TYPES`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NoBridgeError,
    NoConditionalError,
    NotSingleDifferenceError,
    UnsupportedTypeError,
)
from .graph import (
    AmrGraph,
    Concept,
    Constant,
    Edge,
    NodeId,
    _carve,
    _import_nodes,
    conjoin_graphs,
    graph_difference,
    insert_argument,
    relabel_node,
    substitute_subgraph,
)
from .taxonomy import InferenceType

#: Types whose transformation is a best-effort convention rather than a
#: definition.
HEURISTIC_TYPES = frozenset({InferenceType.IFT})


@dataclass(frozen=True)
class TransformRequest:
    p1: AmrGraph
    p2: AmrGraph
    type: InferenceType
    site_hint: tuple[NodeId, NodeId] | None = None


def bridge_candidates(
    p1: AmrGraph, p2: AmrGraph
) -> list[tuple[NodeId, NodeId, Concept]]:
    """All cross-graph node pairs sharing a concept, largest combined
    subtree first, then concept label, then stable node positions."""
    pairs = []
    for n1, c1 in p1.nodes.items():
        for n2, c2 in p2.nodes.items():
            if c1 == c2:
                size = len(p1.closure(n1)) + len(p2.closure(n2))
                pairs.append((size, c1.label, p1.node_index(n1), p2.node_index(n2), n1, n2, c1))
    pairs.sort(key=lambda p: (-p[0], p[1], p[2], p[3]))
    return [(n1, n2, c) for _, _, _, _, n1, n2, c in pairs]


def transform(req: TransformRequest) -> AmrGraph:
    """Apply the requested inference type to the premise pair."""
    handler = _HANDLERS.get(req.type)
    if handler is None:
        raise UnsupportedTypeError(
            f"{req.type.value} has no forward transformation"
        )
    return handler(req.p1, req.p2, req.site_hint)


# ---------------------------------------------------------------------------
# Substitutions
# ---------------------------------------------------------------------------


def _domain_child(g: AmrGraph, node: NodeId) -> NodeId | None:
    for e in g.outgoing(node):
        if e.role == ":domain" and not isinstance(e.target, Constant):
            return e.target
    return None


def _arg_sub(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    # The connective premise reads "specific is a (kind of) general":
    # its root is the general term, its :domain child the specific one.
    candidates = []
    for which, (kind, host) in (("p1", (p1, p2)), ("p2", (p2, p1))):
        child = _domain_child(kind, kind.root)
        if child is None:
            continue
        general = kind.nodes[kind.root]
        replacement = kind.subgraph_at(child)
        for site, c in host.nodes.items():
            if c != general or site == host.root:
                continue
            p1_node, p2_node = (child, site) if which == "p1" else (site, child)
            candidates.append(
                (
                    -len(replacement.nodes),
                    general.label,
                    host.node_index(site),
                    (p1_node, p2_node),
                    host,
                    site,
                    replacement,
                )
            )
    candidates.sort(key=lambda c: c[:3])
    for *_, pair, host, site, replacement in candidates:
        if hint is not None and pair != tuple(hint):
            continue
        return substitute_subgraph(host, site, replacement)
    raise NoBridgeError(
        "argument substitution needs one premise of the form "
        "'(general :domain specific)' whose general term recurs as an "
        "argument of the other premise"
    )


def _pred_sub(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    # The linking premise equates two predicates: either
    # '(mean-01 :ARG1 v1 :ARG2 v2)' or '(v2 :domain v1)' with both senses.
    for link, host in ((p1, p2), (p2, p1)):
        root = link.nodes[link.root]
        source = target = None
        if root.label == "mean-01":
            args = {
                e.role: e.target
                for e in link.outgoing(link.root)
                if e.is_argument and not isinstance(e.target, Constant)
            }
            if ":ARG1" in args and ":ARG2" in args:
                source = link.nodes[args[":ARG1"]]
                target = link.nodes[args[":ARG2"]]
        elif root.is_predicate:
            child = _domain_child(link, link.root)
            if child is not None and link.nodes[child].is_predicate:
                source, target = link.nodes[child], root
        if source is None or target is None or source == target:
            continue
        for site, c in host.nodes.items():
            if c == source:
                return relabel_node(host, site, target)
    raise NoBridgeError(
        "predicate substitution needs a premise equating two predicates "
        "and the source predicate in the other premise"
    )


def _frame_sub(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    for n1, n2, _ in bridge_candidates(p1, p2):
        if hint is not None and (n1, n2) != tuple(hint):
            continue
        for host, site, donor in ((p1, n1, p2), (p2, n2, p1)):
            if site == host.root:
                continue
            if not donor.nodes[donor.root].is_predicate:
                continue
            return substitute_subgraph(host, site, donor)
    raise NoBridgeError(
        "frame substitution needs a shared concept in argument position "
        "and a predicate-rooted donor premise"
    )


def _made_of(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    # One premise is '(make-01 :ARG1 entity :ARG2 material)'; the entity
    # replaces the material term inside the property premise.
    for link, host in ((p1, p2), (p2, p1)):
        if link.nodes[link.root].label != "make-01":
            continue
        args = {
            e.role: e.target
            for e in link.outgoing(link.root)
            if e.is_argument and not isinstance(e.target, Constant)
        }
        if ":ARG1" not in args or ":ARG2" not in args:
            continue
        entity = link.subgraph_at(args[":ARG1"])
        material_labels = {
            link.nodes[n].label for n in link.closure(args[":ARG2"])
        }
        for site, c in host.nodes.items():
            if site != host.root and c.label in material_labels:
                return substitute_subgraph(host, site, entity)
    raise NoBridgeError(
        "property inheritance needs a make-01 premise whose material term "
        "appears in the other premise"
    )


# ---------------------------------------------------------------------------
# Insertion and conjunction
# ---------------------------------------------------------------------------


def _parent_argument_edge(g: AmrGraph, node: NodeId) -> Edge | None:
    for e in g.edges:
        if e.target == node and e.is_argument:
            return e
    return None


def _remove_nodes(g: AmrGraph, gone: set[NodeId], root: NodeId) -> AmrGraph:
    nodes = {n: c for n, c in g.nodes.items() if n not in gone}
    edges = tuple(
        e
        for e in g.edges
        if e.source not in gone
        and (isinstance(e.target, Constant) or e.target not in gone)
    )
    return AmrGraph(root=root, nodes=nodes, edges=edges)


def _arg_ins(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    if hint is not None:
        n1, n2 = hint
        # A hint naming a non-bridge donor node selects plain argument
        # insertion: that subtree becomes a modifier of the host node. The
        # donor side is the one whose hinted material is new to the host.
        for donor, donor_node, host, site in (
            (p1, n1, p2, n2),
            (p2, n2, p1, n1),
        ):
            if donor_node not in donor.nodes or site not in host.nodes:
                continue
            if donor.nodes[donor_node].label in host.concepts():
                continue
            if host.nodes[site].label not in donor.concepts():
                continue
            return insert_argument(
                host, site, donor.subgraph_at(donor_node), ":mod"
            )
    # Default: sever the donor frame at the bridge node and hang the
    # remainder off the host's matching node through the inverted role.
    for n1, n2, _ in bridge_candidates(p1, p2):
        if hint is not None and (n1, n2) != tuple(hint):
            continue
        for donor, donor_node, host, site in (
            (p1, n1, p2, n2),
            (p2, n2, p1, n1),
        ):
            parent = _parent_argument_edge(donor, donor_node)
            if parent is None or donor_node == donor.root:
                continue
            dropped = _carve(donor, donor_node)
            if parent.source in dropped:
                continue
            residue = _remove_nodes(donor, dropped, donor.root)
            return insert_argument(
                host, site, residue.subgraph_at(parent.source), f"{parent.role}-of"
            )
    raise NoBridgeError(
        "argument insertion needs a shared concept sitting in argument "
        "position of the donor premise"
    )


def _frame_conj(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    return conjoin_graphs(p1, p2, "and")


# ---------------------------------------------------------------------------
# Conditionals and generalisation
# ---------------------------------------------------------------------------


def _conditional_parts(
    g: AmrGraph,
) -> tuple[Edge, AmrGraph, list[NodeId]] | None:
    """Split a conditional premise at its root :condition edge into the
    consequent graph and the antecedent placeholders that re-enter it."""
    cond = None
    for e in g.outgoing(g.root):
        if e.role == ":condition" and not isinstance(e.target, Constant):
            cond = e
            break
    if cond is None:
        return None
    antecedent_nodes = set(g.closure(cond.target))
    # Consequent: reachable from the root without crossing the :condition
    # edge. Placeholders live on both sides.
    seen: list[NodeId] = []
    stack = [g.root]
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.append(n)
        for e in g.outgoing(n):
            if e == cond or isinstance(e.target, Constant):
                continue
            stack.append(e.target)
    consequent_nodes = {n: g.nodes[n] for n in seen}
    consequent_edges = tuple(
        e
        for e in g.edges
        if e != cond
        and e.source in consequent_nodes
        and (isinstance(e.target, Constant) or e.target in consequent_nodes)
    )
    consequent = AmrGraph(g.root, consequent_nodes, consequent_edges)
    placeholders = [n for n in seen if n in antecedent_nodes and n != g.root]
    return cond, consequent, placeholders


def _bind_placeholder(
    rule_graph: AmrGraph,
    placeholder: NodeId,
    fact: AmrGraph,
    anchor: NodeId,
) -> AmrGraph | None:
    """Material the placeholder stands for, read off the fact premise:
    a same-concept node when one exists, otherwise the :domain subject of
    the anchor node (or of the fact's root)."""
    label = rule_graph.nodes[placeholder].label
    for n, c in fact.nodes.items():
        if c.label == label:
            return fact.subgraph_at(n)
    for source in (anchor, fact.root):
        child = _domain_child(fact, source)
        if child is not None:
            return fact.subgraph_at(child)
    return None


def _cond_frame(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    for rule_graph, fact in ((p1, p2), (p2, p1)):
        parts = _conditional_parts(rule_graph)
        if parts is None:
            continue
        cond, consequent, placeholders = parts
        antecedent_head = rule_graph.nodes[cond.target].label
        anchor = None
        for n, c in fact.nodes.items():
            if c.label == antecedent_head:
                anchor = n
                break
        if anchor is None:
            raise NoBridgeError(
                "the conditional antecedent does not match the other premise"
            )
        out = consequent
        for placeholder in placeholders:
            if placeholder not in out.nodes or placeholder == out.root:
                continue
            bound = _bind_placeholder(rule_graph, placeholder, fact, anchor)
            if bound is not None:
                out = substitute_subgraph(out, placeholder, bound)
        return out
    raise NoConditionalError("neither premise carries a root :condition edge")


def _generalise(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    delta = graph_difference(p1, p2)
    if len(delta.removed_nodes) != 1 or len(delta.added_nodes) != 1:
        raise NotSingleDifferenceError(
            "generalisation needs premises differing by exactly one concept, "
            f"got {len(delta.removed_nodes)} vs {len(delta.added_nodes)}"
        )
    general = delta.removed_nodes[0][1]
    specific = delta.added_nodes[0][1]
    g_id = general.label[0] or "g"
    s_id = specific.label[0] or "s"
    if s_id == g_id:
        s_id = s_id + "2"
    return AmrGraph(
        root=g_id,
        nodes={g_id: general, s_id: specific},
        edges=(Edge(g_id, ":domain", s_id),),
    )


def _ift(p1: AmrGraph, p2: AmrGraph, hint) -> AmrGraph:
    # Convention: p1 carries the consequent, p2 the antecedent.
    taken: set[NodeId] = set()
    c_nodes, c_edges, c_ren = _import_nodes(p1, taken)
    a_nodes, a_edges, a_ren = _import_nodes(p2, taken)
    nodes = dict(c_nodes)
    nodes.update(a_nodes)
    edges = list(c_edges)
    edges.append(Edge(c_ren[p1.root], ":condition", a_ren[p2.root]))
    edges.extend(a_edges)
    return AmrGraph(root=c_ren[p1.root], nodes=nodes, edges=tuple(edges))


_HANDLERS = {
    InferenceType.ARG_SUB: _arg_sub,
    InferenceType.PRED_SUB: _pred_sub,
    InferenceType.FRAME_SUB: _frame_sub,
    InferenceType.COND_FRAME: _cond_frame,
    InferenceType.ARG_INS: _arg_ins,
    InferenceType.FRAME_CONJ: _frame_conj,
    InferenceType.ARG_PRED_GEN: _generalise,
    InferenceType.ARG_SUB_PROP: _made_of,
    InferenceType.IFT: _ift,
}
