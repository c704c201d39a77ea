"""Compatibility of predicted and gold GRs, and per-sentence alignment."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .model import (
    GrInstance,
    Relation,
    Slot,
    Unspecified,
    cone,
    slot_values_match,
    subsumes,
)


class MatchPolicy(str, enum.Enum):
    STRICT = "strict"
    PAPER = "paper"
    HIERARCHICAL = "hierarchical"

    def __str__(self) -> str:
        return self.value


# Ordered from most to least demanding; each policy accepts every pair the
# previous one accepts.
POLICY_CHAIN = (MatchPolicy.STRICT, MatchPolicy.PAPER, MatchPolicy.HIERARCHICAL)

# Generic relations a parser may return in place of a more specific gold one.
RELAXABLE_RELATIONS = frozenset({Relation.MOD, Relation.SUBJ, Relation.CLAUSAL})
# Relations whose type slot a parser may leave unspecified.
OPEN_TYPE_RELATIONS = cone(Relation.MOD) | cone(Relation.CLAUSAL) | {Relation.IOBJ}


def _relations_compatible(pred: Relation, gold: Relation, policy: MatchPolicy) -> bool:
    if pred == gold:
        return True
    if policy is MatchPolicy.STRICT:
        return False
    if policy is MatchPolicy.PAPER:
        return pred in RELAXABLE_RELATIONS and subsumes(pred, gold)
    return subsumes(pred, gold)


def _wildcard(pred: GrInstance, slot: Slot, value, policy: MatchPolicy) -> bool:
    if not isinstance(value, Unspecified):
        return False
    if policy is MatchPolicy.HIERARCHICAL:
        return True
    if policy is MatchPolicy.PAPER:
        return slot is Slot.TYPE and pred.relation in OPEN_TYPE_RELATIONS
    return False


def compatible(pred: GrInstance, gold: GrInstance, policy: MatchPolicy = MatchPolicy.PAPER) -> bool:
    """Can `pred` be credited as a correct rendering of `gold` under `policy`?"""
    policy = MatchPolicy(policy)
    if not _relations_compatible(pred.relation, gold.relation, policy):
        return False
    pred_slots = pred.slots()
    gold_slots = gold.slots()
    for slot, gval in gold_slots.items():
        if slot not in pred_slots:
            if not isinstance(gval, Unspecified):
                return False
            continue
        pval = pred_slots[slot]
        if not (_wildcard(pred, slot, pval, policy) or slot_values_match(pval, gval)):
            return False
    for slot, pval in pred_slots.items():
        if slot not in gold_slots and not isinstance(pval, Unspecified):
            return False
    return True


def is_exact(pred: GrInstance, gold: GrInstance) -> bool:
    return compatible(pred, gold, MatchPolicy.STRICT)


@dataclass(frozen=True)
class Alignment:
    """One-to-one pairing of predicted and gold GR occurrences in a sentence.

    `pairs` holds ``(pred_index, gold_index)`` tuples sorted by gold index;
    `exact` flags the pairs that are strictly equal.
    """

    pairs: tuple[tuple[int, int], ...]
    exact: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def n_exact(self) -> int:
        return sum(self.exact)

    @property
    def matched_pred(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.pairs)

    @property
    def matched_gold(self) -> frozenset[int]:
        return frozenset(g for _, g in self.pairs)


def _weights(pred: Sequence[GrInstance], gold: Sequence[GrInstance], policy: MatchPolicy) -> np.ndarray:
    # Integer weights encoding, in priority order: one unit per pair, then
    # one per pair compatible under each stricter policy. Preferring pairs
    # that hold under stricter policies keeps matched counts monotone
    # across the policy chain.
    levels = POLICY_CHAIN[: POLICY_CHAIN.index(policy) + 1]
    n = min(len(pred), len(gold)) + 1
    bonus = [n ** (len(levels) - 1 - k) for k in range(len(levels))]
    unit = n ** len(levels)
    w = np.zeros((len(gold), len(pred)), dtype=np.int64)
    for gi, g in enumerate(gold):
        for pi, p in enumerate(pred):
            if not compatible(p, g, policy):
                continue
            total = unit
            for k, level in enumerate(levels[:-1]):
                if compatible(p, g, level):
                    total += bonus[k]
            w[gi, pi] = total
    return w


def _best(w: np.ndarray) -> int:
    if w.size == 0:
        return 0
    rows, cols = linear_sum_assignment(w, maximize=True)
    return int(w[rows, cols].sum())


def align_sentence(pred: Sequence[GrInstance], gold: Sequence[GrInstance],
                   policy: MatchPolicy = MatchPolicy.PAPER) -> Alignment:
    """Maximum-cardinality alignment of predicted to gold GRs.

    Among maximum matchings, the one with the most exact pairs wins (then,
    for relaxed policies, the most pairs compatible under the next stricter
    policy). Remaining ties go to the lexicographically smallest list of
    ``(gold_index, pred_index)`` pairs.
    """
    policy = MatchPolicy(policy)
    pred, gold = list(pred), list(gold)
    if not pred or not gold:
        return Alignment((), ())
    w = _weights(pred, gold, policy)
    target = _best(w)
    if target == 0:
        return Alignment((), ())

    chosen: list[tuple[int, int]] = []
    used_preds: set[int] = set()
    fixed = 0
    for gi in range(len(gold)):
        rest_rows = list(range(gi + 1, len(gold)))
        for pi in range(len(pred)):
            if pi in used_preds or w[gi, pi] == 0:
                continue
            cols = [c for c in range(len(pred)) if c not in used_preds and c != pi]
            value = fixed + int(w[gi, pi]) + _best(w[np.ix_(rest_rows, cols)])
            if value == target:
                chosen.append((pi, gi))
                used_preds.add(pi)
                fixed += int(w[gi, pi])
                break
        if fixed == target:
            break

    exact = tuple(is_exact(pred[p], gold[g]) for p, g in chosen)
    return Alignment(tuple(chosen), exact)
