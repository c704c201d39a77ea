"""Relation frequency tables and the genre homogeneity test."""
from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats as _sps

from .corpus import GENRES, Corpus
from .model import TABLE_ORDER, Relation, ancestors
from .scoring import percent

ALPHA = 0.05
MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class FrequencyTable:
    """GR counts per relation, each count inclusive of subsumed relations."""

    counts: dict[Relation, int]

    @property
    def total(self) -> int:
        return self.counts.get(Relation.DEPENDENT, 0)

    def __getitem__(self, relation) -> int:
        return self.counts.get(Relation(relation), 0)

    def percent(self, relation) -> float:
        return 100.0 * self[relation] / self.total if self.total else 0.0

    def rows(self):
        """``(relation, depth, count, percent_string)`` in report order."""
        for r, depth in TABLE_ORDER:
            ratio = self[r] / self.total if self.total else 0.0
            yield r, depth, self[r], percent(ratio)

    def __add__(self, other: "FrequencyTable") -> "FrequencyTable":
        c = Counter(self.counts)
        c.update(other.counts)
        return FrequencyTable({r: c[r] for r in Relation})


def exact_counts(corpus: Corpus) -> Counter:
    """Counts of GRs at the relation they were annotated with."""
    return Counter(g.relation for g in corpus.grs())


def relation_frequencies(corpus: Corpus) -> FrequencyTable:
    counts = Counter({r: 0 for r in Relation})
    for g in corpus.grs():
        for r in ancestors(g.relation):
            counts[r] += 1
    if counts[Relation.DEPENDENT] == 0:
        warnings.warn("corpus contains no GRs; all frequencies are zero", RuntimeWarning, stacklevel=2)
    return FrequencyTable(dict(counts))


def mean_grs_per_sentence(corpus: Corpus) -> float:
    if len(corpus) == 0:
        raise ValueError("mean GRs per sentence is undefined for an empty corpus")
    return corpus.n_grs / len(corpus)


# Genre homogeneity -------------------------------------------------------

@dataclass(frozen=True)
class GenreContingency:
    """Exact-level relation counts (rows) by genre (columns)."""

    rows: tuple[str, ...]
    genres: tuple[str, ...]
    counts: np.ndarray

    @classmethod
    def from_corpus(cls, corpus: Corpus) -> "GenreContingency":
        by_genre = {g: Counter() for g in GENRES}
        for s in corpus:
            if s.genre is not None:
                by_genre[s.genre].update(g.relation for g in s.grs)
        present = [g for g in GENRES if sum(by_genre[g].values())]
        relations = [r for r, _ in TABLE_ORDER if any(by_genre[g][r] for g in present)]
        counts = np.array([[by_genre[g][r] for g in present] for r in relations], dtype=np.int64)
        return cls(tuple(r.value for r in relations), tuple(present), counts.reshape(len(relations), len(present)))


class ChiSquareResult(NamedTuple):
    statistic: float
    dof: int
    p_value: float

    @property
    def significant(self) -> bool:
        return self.p_value < ALPHA


def expected_counts(table: np.ndarray) -> np.ndarray:
    table = np.asarray(table, dtype=float)
    return np.outer(table.sum(axis=1), table.sum(axis=0)) / table.sum()


def chi_square_homogeneity(table) -> ChiSquareResult:
    """Pearson chi-square test of homogeneity on a contingency table (no continuity correction)."""
    observed = np.asarray(table, dtype=float)
    if observed.ndim != 2 or min(observed.shape) < 2:
        raise ValueError("need at least a 2x2 table")
    if (observed < 0).any():
        raise ValueError("contingency cells must be non-negative")
    if (observed.sum(axis=0) == 0).any() or (observed.sum(axis=1) == 0).any():
        raise ValueError("contingency table has an empty row or column")
    expected = expected_counts(observed)
    stat = float(((observed - expected) ** 2 / expected).sum())
    dof = (observed.shape[0] - 1) * (observed.shape[1] - 1)
    return ChiSquareResult(stat, dof, float(_sps.chi2.sf(stat, dof)))


def pool_sparse_rows(rows: Sequence[str], counts, min_expected: float = MIN_EXPECTED):
    """Merge rows with any expected count below `min_expected` into ``other``.

    Rows are visited rarest first (ties keep input order). If the pooled row
    is itself still too sparse, the next rarest rows are folded into it.
    """
    counts = np.asarray(counts, dtype=np.int64)
    col_totals = counts.sum(axis=0)
    grand = counts.sum()
    if grand == 0:
        return [], counts[:0]

    def sparse(row_total):
        return row_total * col_totals.min() / grand < min_expected

    totals = counts.sum(axis=1)
    order = sorted(range(len(rows)), key=lambda i: (totals[i], i))
    pooled = [i for i in order if sparse(totals[i])]
    kept = [i for i in order if i not in pooled]
    if pooled:
        while kept and sparse(counts[pooled].sum()):
            pooled.append(kept.pop(0))
    kept.sort()
    names = [rows[i] for i in kept]
    table = [counts[i] for i in kept]
    if pooled:
        names.append("other")
        table.append(counts[pooled].sum(axis=0))
    return names, np.array(table, dtype=np.int64).reshape(len(names), counts.shape[1])


def genre_chi_square(corpus: Corpus) -> ChiSquareResult:
    """Test whether exact-level relation counts are homogeneous across genres."""
    cont = GenreContingency.from_corpus(corpus)
    if len(cont.genres) < 2:
        raise ValueError(f"genre test needs GRs from at least 2 genres, found {len(cont.genres)}")
    names, table = pool_sparse_rows(cont.rows, cont.counts)
    if len(names) < 2:
        raise ValueError("contingency table has fewer than 2 rows after pooling sparse relations")
    return chi_square_homogeneity(table)
