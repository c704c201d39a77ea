"""
Scoring parser output against a gold corpus
===========================================

A made-up parser returns the twelve gold GRs with some typical errors and
some generic relations. The same output is scored under the three
matching policies.
"""

from greval import Corpus, Sentence, align_sentence, gr, load_mini_corpus, render_table, score_corpus

gold = load_mini_corpus()
s = gold[0]

predicted = [
    gr("cmod", "when", "become", "die"),
    gr("subj", "die", "proprietor", "_"),            # generic subject
    gr("ncsubj", "become", "establishment", "_"),
    gr("xcomp", "become", "corporation", "_"),
    gr("mod", "_", "become", "acquire"),              # type slot left open
    gr("ncsubj", "acquire", "it", "_"),               # initial_gr missed
    gr("ncmod", "by", "acquire", "proprietor"),       # by-phrase read as a plain modifier
    gr("cmod", "until", "become", "decide"),
    gr("ncsubj", "decide", "government", "_"),
    gr("clausal", "_", "decide", "drop"),             # generic clausal complement
    gr("dobj", "drop", "it", "_"),
    gr("dependent", "government", "drop"),            # spurious and generic
]
pred = Corpus((Sentence(s.id, tuple(predicted)),))

for policy in ("strict", "paper", "hierarchical"):
    alignment = align_sentence(pred[0].grs, s.grs, policy)
    print(f"{policy:>12}: {len(alignment)} of {len(s.grs)} gold GRs matched "
          f"({alignment.n_exact} exact)")

# Full breakdown under the default policy. Rows marked * had nothing to
# compare on one side.
print()
print(render_table(score_corpus(pred, gold, "paper")))

# The dependent row gives a single overall figure.
table = score_corpus(pred, gold, "paper")
dep = table["dependent"]
print(f"overall: P={dep.precision:.3f} R={dep.recall:.3f} F={dep.f_score:.3f}")
