"""Agreement between two annotations of the same sentences."""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus
from .matching import MatchPolicy, align_sentence
from .scoring import ScoreTable, _Tally, f_score


@dataclass(frozen=True)
class AgreementReport:
    matched: int
    a_count: int
    b_count: int
    table: ScoreTable  # a scored against b

    @property
    def precision_a_given_b(self) -> float:
        """Share of annotator A's GRs that B also has."""
        return self.matched / self.a_count if self.a_count else 0.0

    @property
    def precision_b_given_a(self) -> float:
        return self.matched / self.b_count if self.b_count else 0.0

    @property
    def f_score(self) -> float:
        return f_score(self.precision_a_given_b, self.precision_b_given_a)


def inter_annotator_agreement(a: Corpus, b: Corpus) -> AgreementReport:
    """Mutual F-score of two annotations under strict GR equality."""
    a_ids, b_ids = set(a.ids), set(b.ids)
    if a_ids != b_ids:
        diff = sorted(a_ids ^ b_ids)
        raise ValueError(f"annotations cover different sentences: {', '.join(diff)}")
    b_by_id = {s.id: s.grs for s in b}
    tally = _Tally()
    matched = 0
    for s in a:
        other = b_by_id[s.id]
        alignment = align_sentence(s.grs, other, MatchPolicy.STRICT)
        tally.add(s.grs, other, alignment)
        matched += len(alignment)
    return AgreementReport(matched, a.n_grs, b.n_grs, tally.table(MatchPolicy.STRICT))
