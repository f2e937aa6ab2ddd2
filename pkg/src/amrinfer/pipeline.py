"""Corpus ingestion, batch annotation, distribution statistics and prompt
emission.

Record files are line-delimited JSON, one object per line, with the fields
``id``, ``p1_text``, ``p2_text``, ``c_text``, ``p1_amr``, ``p2_amr``,
``c_amr`` and optionally ``gold_type`` plus prediction fields added by
annotation. Type names in files are the stable abbreviations; display
names appear only inside prompts.

Annotation fans records out over a bounded worker pool; results are
collected in input order, so the worker count never changes the output.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources

from .classify import ClassificationResult, EntailmentTriple, Statement, classify
from .errors import AmrError, MissingTypeError, RecordError
from .penman import PenmanSource, parse_penman
from .taxonomy import TABLE_ORDER, InferenceType, lookup_type

REQUIRED_FIELDS = ("id", "p1_text", "p2_text", "c_text", "p1_amr", "p2_amr", "c_amr")


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    p1_text: str
    p2_text: str
    c_text: str
    p1_amr: str
    p2_amr: str
    c_amr: str
    gold_type: InferenceType | None = None
    predicted_type: InferenceType | None = None
    evidence: dict | None = None

    def triple(self) -> EntailmentTriple:
        return EntailmentTriple(
            p1=Statement(self.p1_text, parse_penman(self.p1_amr)),
            p2=Statement(self.p2_text, parse_penman(self.p2_amr)),
            conclusion=Statement(self.c_text, parse_penman(self.c_amr)),
        )

    def to_json(self) -> str:
        data: dict = {field_: getattr(self, field_) for field_ in REQUIRED_FIELDS}
        if self.gold_type is not None:
            data["gold_type"] = self.gold_type.value
        if self.predicted_type is not None:
            data["predicted_type"] = self.predicted_type.value
        if self.evidence is not None:
            data["evidence"] = self.evidence
        return json.dumps(data, sort_keys=True)


def record_from_json(line: str) -> CorpusRecord:
    data = json.loads(line)
    if not isinstance(data, dict):
        raise ValueError("record is not an object")
    missing = [
        f
        for f in REQUIRED_FIELDS
        if not isinstance(data.get(f), str) or not data[f].strip()
    ]
    if missing:
        raise ValueError(f"missing or empty fields: {', '.join(missing)}")
    gold = data.get("gold_type")
    predicted = data.get("predicted_type")
    record = CorpusRecord(
        **{f: data[f] for f in REQUIRED_FIELDS},
        gold_type=lookup_type(gold) if gold else None,
        predicted_type=lookup_type(predicted) if predicted else None,
        evidence=data.get("evidence"),
    )
    # Validate the graphs eagerly so bad AMR is caught at load time.
    for amr_field in ("p1_amr", "p2_amr", "c_amr"):
        parse_penman(PenmanSource(data[amr_field], origin=amr_field))
    return record


def load_corpus(
    path: str, *, strict: bool = False
) -> tuple[list[CorpusRecord], list[RecordError]]:
    """Read a record file. Strict mode raises the first
    :class:`RecordError`; lenient mode skips bad lines and reports them."""
    records: list[CorpusRecord] = []
    errors: list[RecordError] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = record_from_json(line)
                if record.id in seen_ids:
                    raise ValueError(f"duplicate id {record.id!r}")
                seen_ids.add(record.id)
            except Exception as exc:
                error = RecordError(line_no, exc)
                if strict:
                    raise error from exc
                errors.append(error)
                continue
            records.append(record)
    return records, errors


def sample_corpus_path() -> str:
    """Path of the bundled sample corpus (one gold-labelled triple per
    observed inference type)."""
    return str(resources.files("amrinfer.data") / "sample_corpus.jsonl")


# ---------------------------------------------------------------------------
# Annotation
# ---------------------------------------------------------------------------


@dataclass
class AnnotationReport:
    counts: dict[InferenceType, int] = field(default_factory=dict)
    total: int = 0
    gold_total: int = 0
    gold_mismatches: list[str] = field(default_factory=list)
    approximate_deltas: int = 0
    errors: list[tuple[str, str]] = field(default_factory=list)

    def fraction(self, t: InferenceType) -> float:
        if self.total == 0:
            return 0.0
        return self.counts.get(t, 0) / self.total


def _evidence_payload(result: ClassificationResult) -> dict:
    payload = {
        "rule": result.evidence.rule,
        "pivot": result.pivot,
        "frame_insertion": result.frame_insertion,
    }
    if result.approximate:
        payload["approximate"] = True
    return payload


def _annotate_one(record: CorpusRecord) -> CorpusRecord | AmrError:
    try:
        result = classify(record.triple())
    except AmrError as exc:
        return exc
    return replace(
        record,
        predicted_type=result.type,
        evidence=_evidence_payload(result),
    )


def annotate_corpus(
    records: list[CorpusRecord], jobs: int = 1
) -> tuple[list[CorpusRecord], AnnotationReport]:
    """Classify every record. Output order equals input order for any
    worker count; per-record failures land in the report, never abort the
    batch."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if jobs == 1 or len(records) < 2:
        outcomes = [_annotate_one(r) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_annotate_one, records))

    report = AnnotationReport()
    annotated: list[CorpusRecord] = []
    for record, outcome in zip(records, outcomes):
        if isinstance(outcome, AmrError):
            report.errors.append((record.id, str(outcome)))
            annotated.append(record)
            continue
        annotated.append(outcome)
        assert outcome.predicted_type is not None
        report.counts[outcome.predicted_type] = (
            report.counts.get(outcome.predicted_type, 0) + 1
        )
        report.total += 1
        if outcome.evidence and outcome.evidence.get("approximate"):
            report.approximate_deltas += 1
        if record.gold_type is not None:
            report.gold_total += 1
            if record.gold_type is not outcome.predicted_type:
                report.gold_mismatches.append(record.id)
    return annotated, report


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

STATS_DRIFT_THRESHOLD = 0.05


def stats_rows(report: AnnotationReport) -> list[dict]:
    rows = []
    for t in TABLE_ORDER:
        count = report.counts.get(t, 0)
        fraction = report.fraction(t)
        expected = t.expected_proportion
        delta = None if expected is None else fraction - expected
        rows.append(
            {
                "type": t.value,
                "count": count,
                "fraction": fraction,
                "expected": expected,
                "delta": delta,
                "drift": delta is not None and abs(delta) > STATS_DRIFT_THRESHOLD,
            }
        )
    return rows


def compute_stats(report: AnnotationReport) -> str:
    """Aligned text table of per-type counts against the expected corpus
    distribution. Drift beyond 5 points is flagged, informationally."""
    header = f"{'type':<14}{'count':>7}{'fraction':>10}{'expected':>10}{'delta':>8}  flag"
    lines = [header, "-" * len(header)]
    for row in stats_rows(report):
        expected = "-" if row["expected"] is None else f"{row['expected']:.3f}"
        delta = "-" if row["delta"] is None else f"{row['delta']:+.3f}"
        flag = "drift" if row["drift"] else ""
        lines.append(
            f"{row['type']:<14}{row['count']:>7}{row['fraction']:>10.3f}"
            f"{expected:>10}{delta:>8}  {flag}"
        )
    lines.append(f"total: {report.total}")
    if report.gold_total:
        lines.append(
            f"gold matches: {report.gold_total - len(report.gold_mismatches)}"
            f"/{report.gold_total}"
        )
    if report.approximate_deltas:
        lines.append(f"approximate deltas: {report.approximate_deltas}")
    if report.errors:
        lines.append(f"errors: {len(report.errors)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Prompt emission
# ---------------------------------------------------------------------------

SEPARATOR = "</s>"
TYPE_PHRASE = "the inference type is "


class InjectionMode(Enum):
    """Where the inference-type phrase lands in an emitted prompt pair:
    encoder prefix, decoder prefix, decoder end, or nowhere."""

    EP = "ep"
    DP = "dp"
    DE = "de"
    NONE = "none"


@dataclass(frozen=True)
class PromptRecord:
    input: str
    target: str
    mode: InjectionMode


def _record_type(record: CorpusRecord) -> InferenceType:
    t = record.predicted_type or record.gold_type
    if t is None:
        raise MissingTypeError(
            f"record {record.id!r} carries no predicted or gold type"
        )
    return t


def emit_prompts(
    records: list[CorpusRecord], mode: InjectionMode
) -> list[PromptRecord]:
    """Render one prompt pair per record, texts used verbatim, order
    preserved."""
    out = []
    for record in records:
        pair = f"{record.p1_text} {SEPARATOR} {record.p2_text}"
        if mode is InjectionMode.NONE:
            prompt = PromptRecord(pair, record.c_text, mode)
        else:
            name = _record_type(record).display_name
            if mode is InjectionMode.EP:
                prompt = PromptRecord(
                    f"{TYPE_PHRASE}{name} {SEPARATOR} {record.p1_text} "
                    f"{SEPARATOR} {record.p2_text}",
                    record.c_text,
                    mode,
                )
            elif mode is InjectionMode.DP:
                prompt = PromptRecord(
                    pair,
                    f"{SEPARATOR} {TYPE_PHRASE}{name}. {record.c_text}",
                    mode,
                )
            else:
                prompt = PromptRecord(
                    pair,
                    f"{SEPARATOR} {record.c_text}. {TYPE_PHRASE}{name}",
                    mode,
                )
        out.append(prompt)
    return out


def save_records(records: list[CorpusRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record.to_json() + "\n")


def save_prompts(prompts: list[PromptRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for prompt in prompts:
            handle.write(
                json.dumps(
                    {"input": prompt.input, "target": prompt.target,
                     "mode": prompt.mode.value},
                    sort_keys=True,
                )
                + "\n"
            )
