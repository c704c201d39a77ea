"""Per-relation precision, recall and F-score over the relation hierarchy.

Every GR is counted in its own relation's row and in the row of each
relation subsuming it, so the ``dependent`` row summarises the whole
comparison.
"""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Optional, Sequence

from .corpus import Corpus, Diagnostic
from .matching import Alignment, MatchPolicy, align_sentence
from .model import TABLE_ORDER, GrInstance, Relation, ancestors

JSON_SCHEMA = 1


def f_score(precision: float, recall: float) -> float:
    """Balanced F-measure; 0 when both inputs are 0."""
    total = precision + recall
    if total == 0:
        return 0.0
    return 2 * (precision * recall) / total


def percent(ratio: float, places: int = 1) -> str:
    """Render a ratio as a percentage, rounding half away from zero."""
    q = Decimal(1).scaleb(-places)
    return str((Decimal(repr(ratio)) * 100).quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class PrfRow:
    relation: Relation
    predicted_count: int = 0
    gold_count: int = 0
    matched_predicted: int = 0
    matched_gold: int = 0

    @property
    def precision(self) -> float:
        return self.matched_predicted / self.predicted_count if self.predicted_count else 0.0

    @property
    def recall(self) -> float:
        return self.matched_gold / self.gold_count if self.gold_count else 0.0

    @property
    def f_score(self) -> float:
        return f_score(self.precision, self.recall)

    @property
    def undefined(self) -> bool:
        """True when precision or recall had a zero denominator."""
        return self.predicted_count == 0 or self.gold_count == 0

    def as_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "predicted_count": self.predicted_count,
            "gold_count": self.gold_count,
            "matched_predicted": self.matched_predicted,
            "matched_gold": self.matched_gold,
            "precision": self.precision,
            "recall": self.recall,
            "f_score": self.f_score,
        }


@dataclass(frozen=True)
class ScoreTable:
    rows: tuple[PrfRow, ...]
    policy: Optional[MatchPolicy] = None
    warnings: tuple[Diagnostic, ...] = ()

    def __getitem__(self, relation) -> PrfRow:
        relation = Relation(relation)
        for row in self.rows:
            if row.relation == relation:
                return row
        raise KeyError(relation)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class _Tally:
    pred: Counter = field(default_factory=Counter)
    gold: Counter = field(default_factory=Counter)
    matched_pred: Counter = field(default_factory=Counter)
    matched_gold: Counter = field(default_factory=Counter)

    def add(self, pred: Sequence[GrInstance], gold: Sequence[GrInstance], alignment: Alignment) -> None:
        for i, g in enumerate(pred):
            hit = i in alignment.matched_pred
            for r in ancestors(g.relation):
                self.pred[r] += 1
                self.matched_pred[r] += hit
        for i, g in enumerate(gold):
            hit = i in alignment.matched_gold
            for r in ancestors(g.relation):
                self.gold[r] += 1
                self.matched_gold[r] += hit

    def table(self, policy=None, warnings=()) -> ScoreTable:
        rows = tuple(
            PrfRow(r, self.pred[r], self.gold[r], self.matched_pred[r], self.matched_gold[r])
            for r, _ in TABLE_ORDER
        )
        return ScoreTable(rows, policy, tuple(warnings))


def pair_sentences(pred: Corpus, gold: Corpus):
    """Yield ``(id, pred_grs, gold_grs)`` in gold order, then pred-only ids.

    Also returns warnings for ids found in only one corpus.
    """
    pred_by_id = {s.id: s.grs for s in pred}
    gold_ids = set(gold.ids)
    pairs, warnings = [], []
    for s in gold:
        if s.id not in pred_by_id:
            warnings.append(Diagnostic("warning", 0, f"sentence {s.id!r} missing from predicted corpus"))
        pairs.append((s.id, pred_by_id.get(s.id, ()), s.grs))
    for s in pred:
        if s.id not in gold_ids:
            warnings.append(Diagnostic("warning", 0, f"sentence {s.id!r} missing from gold corpus"))
            pairs.append((s.id, s.grs, ()))
    return pairs, warnings


def score_sentences(pairs: Iterable[tuple[Sequence[GrInstance], Sequence[GrInstance]]],
                    policy: MatchPolicy = MatchPolicy.PAPER) -> ScoreTable:
    """Score an iterable of ``(pred_grs, gold_grs)`` sentence pairs."""
    policy = MatchPolicy(policy)
    tally = _Tally()
    for pred, gold in pairs:
        tally.add(pred, gold, align_sentence(pred, gold, policy))
    return tally.table(policy)


def score_corpus(pred: Corpus, gold: Corpus, policy: MatchPolicy = MatchPolicy.PAPER) -> ScoreTable:
    """Micro-averaged scores of `pred` against `gold`, sentences paired by id."""
    policy = MatchPolicy(policy)
    pairs, warnings = pair_sentences(pred, gold)
    tally = _Tally()
    for _, p, g in pairs:
        tally.add(p, g, align_sentence(p, g, policy))
    return tally.table(policy, warnings)


def per_sentence_rows(pred: Corpus, gold: Corpus, policy: MatchPolicy = MatchPolicy.PAPER):
    pairs, _ = pair_sentences(pred, gold)
    for sid, p, g in pairs:
        a = align_sentence(p, g, policy)
        yield {"sentence": sid, "predicted": len(p), "gold": len(g),
               "matched": len(a), "exact": a.n_exact}


# Rendering ---------------------------------------------------------------

CSV_FIELDS = ("relation", "predicted_count", "gold_count", "matched_predicted",
              "matched_gold", "precision", "recall", "f_score")

_DEPTH = dict(TABLE_ORDER)


def _text(table: ScoreTable) -> str:
    lines = [f"{'Relation':<18}{'Prec':>6}{'Rec':>6}{'F':>6}"]
    flagged = False
    for row in table:
        name = " " * _DEPTH[row.relation] + row.relation.value
        line = (f"{name:<18}{percent(row.precision):>6}{percent(row.recall):>6}"
                f"{percent(row.f_score):>6}")
        if row.undefined:
            line += "  *"
            flagged = True
        lines.append(line)
    if flagged:
        lines.append("* zero denominator: no predicted or no gold GRs for this relation")
    return "\n".join(lines) + "\n"


def render_table(table: ScoreTable, format: str = "text") -> str:
    if format == "text":
        return _text(table)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow(row.as_dict())
        return buf.getvalue()
    if format == "json":
        doc = {
            "schema": JSON_SCHEMA,
            "policy": table.policy.value if table.policy else None,
            "rows": [row.as_dict() for row in table],
            "warnings": [w.message for w in table.warnings],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")
