"""Rule-based classification of entailment triples into inference types.

Given two premises and a conclusion (texts plus graphs), the classifier
walks a fixed cascade of symbolic checks and returns the first matching
type together with a structured trace of the rule that fired. The cascade:

1. premise copy: a premise graph equivalent to the conclusion graph;
2. lexical signals owned by the conclusion ("example", if/then);
3. a single-word difference between the pivot premise and the conclusion
   (verb -> predicate substitution, otherwise argument substitution);
4. a conditional premise whose antecedent matches the other premise;
5. an argument attachment in the conclusion whose material originates in
   the non-pivot premise (property inheritance / argument substitution /
   frame substitution);
6. both premises embedded in the conclusion, or a coordination pattern
   (frame conjunction);
7. exactly one premise embedded (argument/frame insertion);
8. a fresh :domain link between concepts drawn from different premises
   (generalisation);
9. the unknown sink.

Everything is pure and deterministic; triples can be classified in
parallel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MalformedTripleError
from .graph import (
    AmrGraph,
    Constant,
    Edge,
    graph_difference,
    relaxed_isomorphic,
    relaxed_subset,
)
from .taxonomy import InferenceType

_WORD = re.compile(r"[\w']+")

#: Branch identifiers that can appear in classification evidence.
RULES = frozenset(
    {
        "premise-copy",
        "lexical-example",
        "lexical-if-then",
        "single-word-substitution",
        "conditional-frame",
        "argument-substitution",
        "property-inheritance",
        "frame-substitution",
        "frame-conjunction",
        "domain-coordination",
        "argument-insertion",
        "frame-insertion",
        "domain-generalisation",
        "unknown",
    }
)


@dataclass(frozen=True)
class Statement:
    """A sentence with its graph."""

    text: str
    graph: AmrGraph


@dataclass(frozen=True)
class EntailmentTriple:
    """Two premises and the conclusion they support."""

    p1: Statement
    p2: Statement
    conclusion: Statement

    def validate(self) -> None:
        for name, stmt in (
            ("p1", self.p1),
            ("p2", self.p2),
            ("conclusion", self.conclusion),
        ):
            if not stmt.text.strip():
                raise MalformedTripleError(f"{name} has an empty text")
            try:
                stmt.graph.validate()
            except Exception as exc:
                raise MalformedTripleError(f"{name} graph is malformed: {exc}") from exc


@dataclass(frozen=True)
class Evidence:
    """Which branch fired and the witnesses it saw."""

    rule: str
    witnesses: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ClassificationResult:
    type: InferenceType
    pivot: int
    evidence: Evidence
    frame_insertion: bool = False
    approximate: bool = False


# ---------------------------------------------------------------------------
# Token-level helpers
# ---------------------------------------------------------------------------


def tokenize(text: str) -> list[str]:
    """Lower-cased word tokens; punctuation is dropped, determiners kept.

    Keeping determiners matters: 'asphalt has a smooth surface' versus
    'a blacktop has a smooth surface' must not look like a one-word swap.
    """
    return _WORD.findall(text.lower())


def jaccard(a: list[str], b: list[str]) -> float:
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def most_similar_premise(t: EntailmentTriple) -> int:
    """Index (1 or 2) of the premise closest to the conclusion by token
    Jaccard similarity; ties go to premise 1."""
    c = tokenize(t.conclusion.text)
    s1 = jaccard(tokenize(t.p1.text), c)
    s2 = jaccard(tokenize(t.p2.text), c)
    return 2 if s2 > s1 else 1


def single_token_diff(a: str, b: str) -> tuple[str, str] | None:
    """The single differing word pair between two sentences, if the token
    sequences have equal length and differ at exactly one position."""
    ta, tb = tokenize(a), tokenize(b)
    if len(ta) != len(tb):
        return None
    diffs = [(x, y) for x, y in zip(ta, tb) if x != y]
    if len(diffs) == 1:
        return diffs[0]
    return None


_SUFFIXES = ("ing", "es", "ed", "s")


def _lemma_candidates(word: str) -> set[str]:
    out = {word}
    for suffix in _SUFFIXES:
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            stripped = word[: -len(suffix)]
            out.add(stripped)
            if suffix in ("ing", "ed"):
                out.add(stripped + "e")
    return out


def is_verb(word: str, g: AmrGraph) -> bool:
    """True when the graph contains a predicate concept whose stem matches
    the word under a small suffix-stripping rule set."""
    candidates = _lemma_candidates(word.lower())
    return any(
        c.is_predicate and c.stem in candidates for c in g.nodes.values()
    )


# ---------------------------------------------------------------------------
# Graph-level helpers
# ---------------------------------------------------------------------------


def _has_signal_example(stmt: Statement) -> bool:
    return stmt.graph.has_concept("example") or "example" in tokenize(stmt.text)


def _has_signal_conditional(stmt: Statement) -> bool:
    if any(e.role == ":condition" for e in stmt.graph.edges):
        return True
    tokens = set(tokenize(stmt.text))
    return "if" in tokens and "then" in tokens


def lexical_signal(t: EntailmentTriple) -> InferenceType | None:
    """EXAMPLE / IFT when the conclusion carries the signal and neither
    premise does. EXAMPLE is checked first."""
    if (
        _has_signal_example(t.conclusion)
        and not _has_signal_example(t.p1)
        and not _has_signal_example(t.p2)
    ):
        return InferenceType.EXAMPLE
    if (
        _has_signal_conditional(t.conclusion)
        and not _has_signal_conditional(t.p1)
        and not _has_signal_conditional(t.p2)
    ):
        return InferenceType.IFT
    return None


def _root_condition_edge(g: AmrGraph) -> Edge | None:
    for e in g.outgoing(g.root):
        if e.role == ":condition" and not isinstance(e.target, Constant):
            return e
    return None


def _originates_in(sub: AmrGraph, there: AmrGraph, not_there: AmrGraph) -> bool:
    """Material belongs exclusively to ``there``: it embeds into ``there``
    but not into ``not_there``."""
    return relaxed_subset(sub, there) and not relaxed_subset(sub, not_there)


def _attachment_site(
    g_c: AmrGraph, g_x: AmrGraph, g_other: AmrGraph
) -> Edge | None:
    """First conclusion edge whose target subtree originates exclusively in
    the non-pivot premise, skipping edges that are themselves copied
    non-pivot material or hang off a coordination node. Relaxable-role
    edges only count when the target's head concept anchors in the pivot
    (a replaced argument), which separates substitution from a fresh
    :domain link."""
    cx = g_x.concepts()
    cother = g_other.concepts()
    for e in g_c.edges:
        if isinstance(e.target, Constant):
            continue
        src = g_c.nodes[e.source].label
        if src in ("and", "or"):
            continue
        if src in cother and src not in cx:
            continue
        sub = g_c.subgraph_at(e.target)
        if not _originates_in(sub, g_other, g_x):
            continue
        if e.is_argument or g_c.nodes[e.target].label in cx:
            return e
    return None


def _conditional_match(
    t: EntailmentTriple, g_x: AmrGraph, g_other: AmrGraph
) -> Evidence | None:
    """A premise whose root opens a :condition path, with the antecedent
    head matching the other premise and the consequent head surfacing in
    the conclusion."""
    g_c = t.conclusion.graph
    for which, (q, r) in (("pivot", (g_x, g_other)), ("other", (g_other, g_x))):
        ce = _root_condition_edge(q)
        if ce is None:
            continue
        antecedent_head = q.nodes[ce.target].label
        consequent_head = q.nodes[q.root].label
        if antecedent_head in r.concepts() and consequent_head in g_c.concepts():
            return Evidence(
                "conditional-frame",
                {
                    "conditional_premise": which,
                    "antecedent_head": antecedent_head,
                    "consequent_head": consequent_head,
                },
            )
    return None


def _domain_coordination(
    g_c: AmrGraph, g_x: AmrGraph, g_other: AmrGraph
) -> bool:
    """Both premise roots carry :domain subjects and the conclusion
    coordinates those subjects under an ``and`` node."""

    def domain_subject(g: AmrGraph) -> str | None:
        for e in g.outgoing(g.root):
            if e.role == ":domain" and not isinstance(e.target, Constant):
                return g.nodes[e.target].label
        return None

    x = domain_subject(g_x)
    y = domain_subject(g_other)
    if x is None or y is None:
        return False
    for n, c in g_c.nodes.items():
        if c.label != "and":
            continue
        coordinated = {
            g_c.nodes[e.target].label
            for e in g_c.outgoing(n)
            if e.role.startswith(":op") and not isinstance(e.target, Constant)
        }
        if x in coordinated and y in coordinated:
            return True
    return False


def _domain_generalisation(
    g_c: AmrGraph, g_x: AmrGraph, g_other: AmrGraph
) -> Evidence | None:
    """A fresh ``root :domain y`` conclusion linking concepts drawn from the
    two different premises."""
    root_label = g_c.nodes[g_c.root].label
    for e in g_c.outgoing(g_c.root):
        if e.role != ":domain" or isinstance(e.target, Constant):
            continue
        y_label = g_c.nodes[e.target].label
        in_x = (root_label in g_x.concepts(), y_label in g_x.concepts())
        in_other = (root_label in g_other.concepts(), y_label in g_other.concepts())
        if (in_x[0] and in_other[1]) or (in_other[0] and in_x[1]):
            return Evidence(
                "domain-generalisation",
                {"general": root_label, "specific": y_label},
            )
    return None


# ---------------------------------------------------------------------------
# The classifier
# ---------------------------------------------------------------------------


def classify(t: EntailmentTriple) -> ClassificationResult:
    """Assign an inference type to a triple. Total: every well-formed
    triple gets a result, with UNK as the sink."""
    t.validate()

    pivot = most_similar_premise(t)
    s_x, s_other = (t.p1, t.p2) if pivot == 1 else (t.p2, t.p1)
    g_x, g_other = s_x.graph, s_other.graph
    g_c = t.conclusion.graph

    def result(
        type_: InferenceType,
        evidence: Evidence,
        *,
        frame_insertion: bool = False,
        approximate: bool = False,
    ) -> ClassificationResult:
        return ClassificationResult(
            type=type_,
            pivot=pivot,
            evidence=evidence,
            frame_insertion=frame_insertion,
            approximate=approximate,
        )

    # 1. No reasoning happened: the conclusion repeats a premise graph.
    if relaxed_isomorphic(g_x, g_c) or relaxed_isomorphic(g_other, g_c):
        which = "pivot" if relaxed_isomorphic(g_x, g_c) else "other"
        return result(
            InferenceType.PREM_COPY, Evidence("premise-copy", {"premise": which})
        )

    # 2. Conclusion-owned lexical signals.
    lexical = lexical_signal(t)
    if lexical is InferenceType.EXAMPLE:
        return result(InferenceType.EXAMPLE, Evidence("lexical-example"))
    if lexical is InferenceType.IFT:
        return result(InferenceType.IFT, Evidence("lexical-if-then"))

    # 3. One-word difference between the pivot premise and the conclusion.
    diff = single_token_diff(s_x.text, t.conclusion.text)
    if diff is not None:
        w_x, w_c = diff
        verb = is_verb(w_c, g_c) or is_verb(w_x, g_x)
        return result(
            InferenceType.PRED_SUB if verb else InferenceType.ARG_SUB,
            Evidence(
                "single-word-substitution",
                {"from_word": w_x, "to_word": w_c, "verb": verb},
            ),
        )

    # 4. Conditional premise applied to the other premise.
    conditional = _conditional_match(t, g_x, g_other)
    if conditional is not None:
        return result(InferenceType.COND_FRAME, conditional)

    # 5. Non-pivot material attached inside the conclusion.
    site = _attachment_site(g_c, g_x, g_other)
    if site is not None:
        target_concept = g_c.nodes[site.target]
        witnesses = {
            "edge": (site.source, site.role, site.target),
            "target_concept": target_concept.label,
        }
        if not target_concept.is_predicate:
            other_root = g_other.nodes[g_other.root]
            made_of = other_root.label == "make-01" and any(
                e.is_argument
                and not isinstance(e.target, Constant)
                and g_other.nodes[e.target].label == target_concept.label
                for e in g_other.outgoing(g_other.root)
            )
            if made_of:
                return result(
                    InferenceType.ARG_SUB_PROP,
                    Evidence("property-inheritance", witnesses),
                )
            return result(
                InferenceType.ARG_SUB, Evidence("argument-substitution", witnesses)
            )
        return result(
            InferenceType.FRAME_SUB, Evidence("frame-substitution", witnesses)
        )

    # 6. Conjunction: both premises embed, or their subjects coordinate.
    x_in_c = relaxed_subset(g_x, g_c)
    other_in_c = relaxed_subset(g_other, g_c)
    if x_in_c and other_in_c:
        return result(InferenceType.FRAME_CONJ, Evidence("frame-conjunction"))
    if _domain_coordination(g_c, g_x, g_other):
        return result(InferenceType.FRAME_CONJ, Evidence("domain-coordination"))

    # 7. Insertion: exactly one premise embeds; the delta is the insert.
    for contained, which in ((x_in_c, "pivot"), (other_in_c, "other")):
        if not contained:
            continue
        base = g_x if which == "pivot" else g_other
        delta = graph_difference(base, g_c)
        head = delta.attachment_root(g_c)
        if head is None:
            continue
        frame_insertion = head.is_predicate
        rule = "frame-insertion" if frame_insertion else "argument-insertion"
        return result(
            InferenceType.ARG_INS,
            Evidence(rule, {"inserted_head": head.label, "base": which}),
            frame_insertion=frame_insertion,
            approximate=delta.approximate,
        )

    # 8. Fresh :domain generalisation across the premises.
    generalisation = _domain_generalisation(g_c, g_x, g_other)
    if generalisation is not None:
        return result(InferenceType.ARG_PRED_GEN, generalisation)

    # 9. Sink.
    return result(InferenceType.UNK, Evidence("unknown"))
