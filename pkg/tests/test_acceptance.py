"""Acceptance suite: one test per release criterion, each printing a
pass/fail line. Run with ``pytest tests/test_acceptance.py -v -s``.

Criteria:

1. the eleven labelled sample triples classify 11/11 in under a second
   (plus an informational distribution check against a corpus file named
   by AMRINFER_CORPUS, when supplied);
2. for each transformable type, >= 50 generated premise pairs round-trip
   through transform and classify (100%, except the two heuristic-site
   types at >= 95%), in under 30 s;
3. the production matchers agree with brute-force search on >= 10,000
   random graph pairs of up to 8 nodes over a 5-concept / 4-role alphabet;
4. parse/serialize/parse is the identity (exact isomorphism) on a
   200-graph fuzz corpus plus every sample graph;
5. emitted prompts match the golden files byte-for-byte in all four
   modes, and placement invariants hold on 1,000 fuzzed records;
6. annotation output is byte-identical at 1, 4 and 16 workers on a
   1,000-record synthetic corpus.
"""

from __future__ import annotations

import os
import random
import time
from pathlib import Path

import pytest

from amrinfer.classify import classify
from amrinfer.errors import TransformError
from amrinfer.graph import exact_isomorphic, relaxed_isomorphic, relaxed_subset
from amrinfer.classify import EntailmentTriple, Statement
from amrinfer.penman import parse_penman, serialize_penman
from amrinfer.pipeline import (
    InjectionMode,
    annotate_corpus,
    compute_stats,
    emit_prompts,
    load_corpus,
    save_records,
)
from amrinfer.taxonomy import InferenceType
from amrinfer.transform import TransformRequest, transform

from tests.corpus_fixtures import sample_records, sample_triples
from tests.generators import (
    fuzz_penman_graph,
    linearize,
    make_premises,
    random_graph,
    synthetic_corpus,
)
from tests.oracle import brute_isomorphic, brute_subset

GOLDEN_DIR = Path(__file__).parent / "goldens"

PER_TYPE_PAIRS = 50
ROUND_TRIP_SLACK = {InferenceType.IFT: 0.95, InferenceType.FRAME_SUB: 0.95}
ORACLE_PAIRS = 10_000


def _report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail else ""))


def test_criterion_1_exemplar_suite():
    cases = sample_triples()
    start = time.perf_counter()
    results = [(rid, classify(triple), gold) for rid, triple, gold in cases]
    elapsed = time.perf_counter() - start
    hits = sum(result.type is gold for _, result, gold in results)
    ok = hits == 11 and elapsed < 1.0
    _report("criterion 1: sample suite", ok, f"{hits}/11 in {elapsed:.3f}s")
    assert hits == 11, [
        (rid, result.type.value, gold.value)
        for rid, result, gold in results
        if result.type is not gold
    ]
    assert elapsed < 1.0


def test_criterion_1_distribution_soft_check():
    # Informational only: compares predicted proportions on a user-supplied
    # corpus against the published distribution and flags drift > 0.05.
    path = os.environ.get("AMRINFER_CORPUS")
    if not path:
        pytest.skip("set AMRINFER_CORPUS to a record file for the soft check")
    records, errors = load_corpus(path)
    _, report = annotate_corpus(records, jobs=4)
    print(compute_stats(report))
    _report("criterion 1 (soft): distribution table rendered", True,
            f"{report.total} records, {len(errors)} load errors")


def test_criterion_2_round_trip_property():
    rng = random.Random(2024)
    start = time.perf_counter()
    failures: dict[InferenceType, list[str]] = {}
    all_ok = True
    for type_ in sorted(ROUND_TRIP_SLACK.keys() | set(
        t for t in InferenceType if t.transformable
    ), key=lambda t: t.value):
        hits = attempts = 0
        mistakes: list[str] = []
        while attempts < PER_TYPE_PAIRS:
            p1, p2, hint = make_premises(rng, type_)
            try:
                out = transform(TransformRequest(p1.graph, p2.graph, type_, hint))
            except TransformError:
                continue  # precondition not met; only successful transforms count
            attempts += 1
            conclusion = Statement(linearize(out), out)
            result = classify(EntailmentTriple(p1, p2, conclusion))
            if result.type is type_:
                hits += 1
            else:
                mistakes.append(result.type.value)
        rate = hits / attempts
        threshold = ROUND_TRIP_SLACK.get(type_, 1.0)
        ok = rate >= threshold
        all_ok = all_ok and ok
        _report(
            f"criterion 2: {type_.value} round trip",
            ok,
            f"{hits}/{attempts} >= {threshold:.0%}",
        )
        if not ok:
            failures[type_] = mistakes
    elapsed = time.perf_counter() - start
    _report("criterion 2: runtime", elapsed < 30.0, f"{elapsed:.2f}s")
    assert all_ok, failures
    assert elapsed < 30.0


def test_criterion_3_matcher_oracle_equivalence():
    rng = random.Random(77)
    disagreements = 0
    positives = 0
    for _ in range(ORACLE_PAIRS):
        a = random_graph(rng, max_nodes=8)
        b = random_graph(rng, max_nodes=8)
        fast_sub, slow_sub = relaxed_subset(a, b), brute_subset(a, b)
        fast_iso, slow_iso = relaxed_isomorphic(a, b), brute_isomorphic(a, b)
        disagreements += (fast_sub != slow_sub) + (fast_iso != slow_iso)
        positives += fast_sub + fast_iso
    ok = disagreements == 0
    _report(
        "criterion 3: oracle equivalence",
        ok,
        f"{ORACLE_PAIRS} pairs, {positives} positive outcomes, "
        f"{disagreements} disagreements",
    )
    assert positives > 0, "degenerate sample: no positive matches seen"
    assert disagreements == 0


def test_criterion_4_penman_round_trip():
    rng = random.Random(4)
    graphs = [fuzz_penman_graph(rng) for _ in range(200)]
    for record in sample_records():
        for amr in (record.p1_amr, record.p2_amr, record.c_amr):
            graphs.append(parse_penman(amr))
    failures = 0
    for g in graphs:
        again = parse_penman(serialize_penman(g))
        if not exact_isomorphic(g, again):
            failures += 1
    ok = failures == 0
    _report(
        "criterion 4: penman round trip", ok, f"{len(graphs)} graphs, {failures} failures"
    )
    assert failures == 0


def test_criterion_5_prompt_conformance():
    annotated, _ = annotate_corpus(sample_records())
    import json

    mismatches = []
    for mode in InjectionMode:
        got = "\n".join(
            json.dumps(
                {"input": p.input, "target": p.target, "mode": p.mode.value},
                sort_keys=True,
            )
            for p in emit_prompts(annotated, mode)
        ) + "\n"
        golden = (GOLDEN_DIR / f"prompts_{mode.value}.jsonl").read_text("utf-8")
        if got != golden:
            mismatches.append(mode.value)
    ok = not mismatches
    _report("criterion 5: golden prompt files", ok, "modes: ep dp de none")
    assert not mismatches, mismatches

    # Placement invariant on fuzzed records (covered in depth in
    # test_pipeline; replayed here against the acceptance bar).
    rng = random.Random(55)
    words = ["rock", "water", "cloud", "soil", "plant", "iron", "leaf"]
    from amrinfer.pipeline import CorpusRecord

    records = [
        CorpusRecord(
            id=f"f{i}",
            p1_text=" ".join(rng.choices(words, k=rng.randint(1, 6))),
            p2_text=" ".join(rng.choices(words, k=rng.randint(1, 6))),
            c_text=" ".join(rng.choices(words, k=rng.randint(1, 6))),
            p1_amr="(r / rock)",
            p2_amr="(r / rock)",
            c_amr="(r / rock)",
            gold_type=rng.choice(list(InferenceType)),
        )
        for i in range(1000)
    ]
    phrase = "the inference type is "
    violations = 0
    for mode in InjectionMode:
        for p in emit_prompts(records, mode):
            if mode is InjectionMode.EP:
                bad = not p.input.startswith(phrase) or phrase in p.target
            elif mode in (InjectionMode.DP, InjectionMode.DE):
                bad = p.target.count(phrase) != 1 or phrase in p.input
            else:
                bad = phrase in p.input or phrase in p.target
            violations += bad
    _report("criterion 5: placement invariants", violations == 0,
            "1000 fuzzed records x 4 modes")
    assert violations == 0


def test_criterion_6_parallel_determinism(tmp_path):
    records = synthetic_corpus(random.Random(6), 1000)
    outputs = {}
    for jobs in (1, 4, 16):
        annotated, _ = annotate_corpus(records, jobs=jobs)
        path = tmp_path / f"out_{jobs}.jsonl"
        save_records(annotated, str(path))
        outputs[jobs] = path.read_bytes()
    ok = outputs[1] == outputs[4] == outputs[16]
    _report("criterion 6: parallel determinism", ok,
            f"1000 records, jobs 1/4/16, {len(outputs[1])} bytes")
    assert ok


def test_embedding_sanity_for_conjunction():
    # Conjunction outputs embed both operands; replayed at acceptance level
    # because the round-trip suite depends on it.
    rng = random.Random(8)
    for _ in range(25):
        p1, p2, _ = make_premises(rng, InferenceType.FRAME_CONJ)
        out = transform(
            TransformRequest(p1.graph, p2.graph, InferenceType.FRAME_CONJ)
        )
        assert relaxed_subset(p1.graph, out)
        assert relaxed_subset(p2.graph, out)
