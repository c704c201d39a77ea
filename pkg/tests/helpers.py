"""Shared builders, strategies and brute-force oracles for the test suite."""
from __future__ import annotations



from hypothesis import strategies as st

from greval.corpus import Corpus, Sentence
from greval.model import (
    PRO,
    UNSPECIFIED,
    GrInstance,
    GrName,
    Lexeme,
    Relation,
    Slot,
    gr,
    signature_of,
)

FIG1_LINES = [
    "cmod(when, become, die)",
    "ncsubj(die, proprietor, _)",
    "ncsubj(become, establishment, _)",
    "xcomp(become, corporation, _)",
    "mod(until, become, acquire)",
    "ncsubj(acquire, it, obj)",
    "arg_mod(by, acquire, proprietor, subj)",
    "cmod(until, become, decide)",
    "ncsubj(decide, government, _)",
    "xcomp(to, decide, drop)",
    "ncsubj(drop, government, _)",
    "dobj(drop, it, _)",
]

# Leaf-level relation counts of the 500-sentence SUSANNE GR corpus.
TABLE2_EXACT = {
    Relation.NCMOD: 2377, Relation.XMOD: 170, Relation.CMOD: 163,
    Relation.ARG_MOD: 39,
    Relation.NCSUBJ: 984, Relation.XSUBJ: 5, Relation.CSUBJ: 4,
    Relation.DOBJ: 396, Relation.OBJ2: 19, Relation.IOBJ: 144,
    Relation.XCOMP: 323, Relation.CCOMP: 66,
}


def template(relation: Relation, i: int = 0) -> GrInstance:
    """A valid instance of `relation` with distinct lexemes."""
    values = []
    for slot in signature_of(relation):
        if slot is Slot.INITIAL_GR:
            values.append(UNSPECIFIED)
        elif slot is Slot.TYPE:
            values.append(Lexeme("to"))
        elif slot is Slot.HEAD:
            values.append(Lexeme(f"h{i}"))
        else:
            values.append(Lexeme(f"d{i}"))
    return GrInstance(relation, tuple(values))


def table2_corpus(n_sentences: int = 500) -> Corpus:
    grs = [template(r, i) for r, n in TABLE2_EXACT.items() for i in range(n)]
    buckets = [[] for _ in range(n_sentences)]
    for i, g in enumerate(grs):
        buckets[i % n_sentences].append(g)
    return Corpus(tuple(Sentence(f"s{i}", tuple(b)) for i, b in enumerate(buckets)))


def corpus_of(*sentences, genre=None) -> Corpus:
    return Corpus(tuple(Sentence(f"s{i}", tuple(grs), genre) for i, grs in enumerate(sentences)))


# Hypothesis strategies ---------------------------------------------------

WORDS = ("a", "b", "c")


@st.composite
def gr_instances(draw, relations=tuple(Relation), words=WORDS):
    relation = draw(st.sampled_from(relations))
    values = []
    for slot in signature_of(relation):
        if slot is Slot.HEAD:
            values.append(Lexeme(draw(st.sampled_from(words))))
        elif slot is Slot.TYPE:
            values.append(draw(st.sampled_from([UNSPECIFIED, Lexeme("to"), Lexeme("by")])))
        elif slot is Slot.INITIAL_GR:
            values.append(draw(st.sampled_from([UNSPECIFIED, GrName(Relation.OBJ)])))
        else:
            values.append(draw(st.sampled_from([UNSPECIFIED, PRO] + [Lexeme(w) for w in words])))
    return GrInstance(relation, tuple(values))


@st.composite
def relaxed_copies(draw, g: GrInstance):
    """An instance of some ancestor of `g` with some slots blanked."""
    from greval.model import ancestors

    relation = draw(st.sampled_from(sorted(ancestors(g.relation), key=lambda r: r.value)))
    src = g.slots()
    values = []
    for slot in signature_of(relation):
        v = src.get(slot, UNSPECIFIED)
        if slot is not Slot.HEAD and draw(st.booleans()):
            v = UNSPECIFIED
        values.append(v)
    return GrInstance(relation, tuple(values))


@st.composite
def sentence_pairs(draw, max_size=6):
    """(pred, gold) lists where many predictions are relaxed copies of gold GRs."""
    gold = draw(st.lists(gr_instances(), max_size=max_size))
    pred = []
    for _ in range(draw(st.integers(0, max_size))):
        if gold and draw(st.booleans()):
            pred.append(draw(relaxed_copies(draw(st.sampled_from(gold)))))
        else:
            pred.append(draw(gr_instances()))
    return pred, gold


# Oracles -----------------------------------------------------------------

def brute_max_matching(pred, gold, compat) -> int:
    """Largest injective pairing by exhaustive search."""
    best = 0

    def rec(gi, used, size):
        nonlocal best
        if size + (len(gold) - gi) <= best:
            return
        if gi == len(gold):
            best = max(best, size)
            return
        for pi, p in enumerate(pred):
            if pi not in used and compat(p, gold[gi]):
                rec(gi + 1, used | {pi}, size + 1)
        rec(gi + 1, used, size)

    rec(0, frozenset(), 0)
    return best


def all_matchings(pred, gold, compat):
    """Every injective pairing as a sorted tuple of (gold_index, pred_index)."""
    def rec(gi, used):
        if gi == len(gold):
            yield ()
            return
        for rest in rec(gi + 1, used):
            yield rest
        for pi, p in enumerate(pred):
            if pi not in used and compat(p, gold[gi]):
                for rest in rec(gi + 1, used | {pi}):
                    yield ((gi, pi),) + rest

    yield from rec(0, frozenset())


def brute_alignment(pred, gold, keys):
    """Optimal pairing under `keys`, a list of per-pair predicates in priority order.

    The first key defines which pairs are allowed; each further key is a
    secondary count to maximise. Ties go to the lexicographically smallest
    pair list.
    """
    allowed = keys[0]
    best, best_key = (), None
    for m in all_matchings(pred, gold, allowed):
        score = (len(m),) + tuple(sum(k(pred[p], gold[g]) for g, p in m) for k in keys[1:])
        cand = (score, [(-g, -p) for g, p in m])
        if best_key is None or cand > best_key:
            best, best_key = m, cand
    return best


def hand_crossings(pred_spans, gold_spans) -> int:
    """Crossing count by testing token membership directly."""
    count = 0
    for ps, pe in pred_spans:
        a = set(range(ps, pe))
        for gs, ge in gold_spans:
            b = set(range(gs, ge))
            if a & b and not a <= b and not b <= a:
                count += 1
                break
    return count


