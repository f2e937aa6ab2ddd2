"""Forward transformations: per-type behaviour, site selection, errors."""

from __future__ import annotations

import random

import pytest

from amrinfer.errors import (
    NoBridgeError,
    NoConditionalError,
    NotSingleDifferenceError,
    UnsupportedTypeError,
)
from amrinfer.graph import relaxed_isomorphic, relaxed_subset
from amrinfer.penman import parse_penman, serialize_penman
from amrinfer.taxonomy import InferenceType
from amrinfer.transform import (
    HEURISTIC_TYPES,
    TransformRequest,
    bridge_candidates,
    transform,
)

from tests.corpus_fixtures import sample_records
from tests.generators import make_premises

AMR = parse_penman
RECORDS = {r.id: r for r in sample_records()}


def _graphs(record_id: str):
    r = RECORDS[record_id]
    return AMR(r.p1_amr), AMR(r.p2_amr), AMR(r.c_amr)


class TestBridgeCandidates:
    def test_disjoint_vocabulary(self):
        assert bridge_candidates(AMR("(a / rock)"), AMR("(b / water)")) == []

    def test_scar_pair_contains_scar_bridge(self):
        p1, p2, _ = _graphs("t01")
        concepts = {c.label for _, _, c in bridge_candidates(p1, p2)}
        assert "scar" in concepts

    def test_identical_graphs_pair_every_node(self):
        g = AMR("(r / require-01 :ARG0 (p / plant) :ARG1 (w / water))")
        pairs = bridge_candidates(g, g)
        assert len(pairs) == 3
        # Self-pairs exist for every node.
        assert all(any(n1 == n2 == n for n1, n2, _ in pairs) for n in g.nodes)

    def test_largest_bridge_first(self):
        p1 = AMR("(c / cover-01 :ARG0 (w / water :mod (d / deep)) :ARG1 (r / rock))")
        p2 = AMR("(n / need-01 :ARG0 (p / plant) :ARG1 (w / water :mod (d / deep)))")
        first = bridge_candidates(p1, p2)[0]
        assert first[2].label == "water"


class TestPerType:
    def test_arg_sub_scar(self):
        p1, p2, want = _graphs("t01")
        got = transform(TransformRequest(p1, p2, InferenceType.ARG_SUB))
        assert relaxed_isomorphic(got, want)

    def test_frame_conj(self):
        p1, p2, want = _graphs("t06")
        got = transform(TransformRequest(p1, p2, InferenceType.FRAME_CONJ))
        assert relaxed_isomorphic(got, want)
        assert relaxed_subset(p1, got) and relaxed_subset(p2, got)

    def test_generalisation_granite(self):
        p1, p2, want = _graphs("t07")
        got = transform(TransformRequest(p1, p2, InferenceType.ARG_PRED_GEN))
        assert relaxed_isomorphic(got, want)
        # The premise-1 term is the general one: it takes the root.
        assert got.nodes[got.root].label == "rock"

    def test_arg_ins_solar(self):
        p1, p2, want = _graphs("t05")
        got = transform(TransformRequest(p1, p2, InferenceType.ARG_INS))
        assert relaxed_isomorphic(got, want)

    def test_made_of_blacktop(self):
        p1, p2, want = _graphs("t08")
        got = transform(TransformRequest(p1, p2, InferenceType.ARG_SUB_PROP))
        assert relaxed_isomorphic(got, want)

    def test_cond_frame_binds_the_fact(self):
        p1, p2, _ = _graphs("t04")
        got = transform(TransformRequest(p1, p2, InferenceType.COND_FRAME))
        # The consequent head survives, bound to the fact's subject; the
        # antecedent material does not leak into the conclusion.
        assert got.nodes[got.root].label == "fossil"
        assert got.has_concept("wood")
        assert not got.has_concept("renewable")
        assert not got.has_concept("resource")

    def test_pred_sub_contain_store(self):
        p1, p2, want = _graphs("t02")
        got = transform(TransformRequest(p1, p2, InferenceType.PRED_SUB))
        assert relaxed_isomorphic(got, want)

    def test_ift_wraps_with_condition(self):
        p1, p2, _ = _graphs("t06")
        got = transform(TransformRequest(p1, p2, InferenceType.IFT))
        cond = [e for e in got.outgoing(got.root) if e.role == ":condition"]
        assert len(cond) == 1
        assert InferenceType.IFT in HEURISTIC_TYPES


class TestErrors:
    @pytest.mark.parametrize(
        "bad_type",
        [InferenceType.UNK, InferenceType.EXAMPLE, InferenceType.PREM_COPY],
    )
    def test_unsupported_types(self, bad_type):
        g = AMR("(r / rock)")
        with pytest.raises(UnsupportedTypeError):
            transform(TransformRequest(g, g, bad_type))

    def test_no_bridge(self):
        with pytest.raises(NoBridgeError):
            transform(
                TransformRequest(
                    AMR("(a / rock)"), AMR("(b / water)"), InferenceType.ARG_SUB
                )
            )

    def test_no_conditional(self):
        with pytest.raises(NoConditionalError):
            transform(
                TransformRequest(
                    AMR("(a / rock)"), AMR("(b / water)"), InferenceType.COND_FRAME
                )
            )

    def test_not_single_difference(self):
        with pytest.raises(NotSingleDifferenceError):
            transform(
                TransformRequest(
                    AMR("(m / material :domain (r / rock))"),
                    AMR("(w / weather :mod (c / cold))"),
                    InferenceType.ARG_PRED_GEN,
                )
            )


class TestDeterminismAndPurity:
    def test_identical_requests_identical_output(self):
        p1, p2, _ = _graphs("t01")
        req = TransformRequest(p1, p2, InferenceType.ARG_SUB)
        assert serialize_penman(transform(req)) == serialize_penman(transform(req))

    def test_inputs_unmodified(self):
        p1, p2, _ = _graphs("t05")
        before = (serialize_penman(p1), serialize_penman(p2))
        transform(TransformRequest(p1, p2, InferenceType.ARG_INS))
        assert (serialize_penman(p1), serialize_penman(p2)) == before

    def test_outputs_well_formed_across_generators(self):
        rng = random.Random(3)
        for type_ in sorted(HEURISTIC_TYPES | {InferenceType.ARG_SUB,
                                               InferenceType.FRAME_SUB,
                                               InferenceType.ARG_INS},
                            key=lambda t: t.value):
            for _ in range(10):
                p1, p2, hint = make_premises(rng, type_)
                out = transform(TransformRequest(p1.graph, p2.graph, type_, hint))
                out.validate()


class TestSiteHint:
    def test_hint_overrides_automatic_site(self):
        # Two equally named hosts sites: the hint forces the smaller one.
        host = AMR(
            "(c / cover-01 :ARG0 (w / water) :ARG1 (r / rock :part (r2 / rock)))"
        )
        kind = AMR("(r / rock :domain (g / granite))")
        auto = transform(TransformRequest(host, kind, InferenceType.ARG_SUB))
        hinted = transform(
            TransformRequest(host, kind, InferenceType.ARG_SUB, site_hint=("r2", "g"))
        )
        assert serialize_penman(auto) != serialize_penman(hinted)
        assert hinted.has_concept("granite")
