"""
Bracket scores on a PP-attachment error
=======================================

With a flat adjunction structure for "the man with a telescope", attaching
the PP to the verb instead of the noun produces no crossing brackets. The
bracket recall drops by one bracket only. The GR view records the error as
a wrong head in one modifier relation.
"""

from greval import bracket_prf, crossing_brackets, gr, parse_bracket_file
from greval.matching import align_sentence

gold_tree, pred_tree = parse_bracket_file(
    "(VP saw (NP (NP the man) (PP with (NP a telescope))))\n"
    "\n"
    "(VP saw (NP the man) (PP with (NP a telescope)))\n"
)

print("gold spans:", [(l, s, e) for l, s, e in gold_tree.spans()])
print("pred spans:", [(l, s, e) for l, s, e in pred_tree.spans()])

score = bracket_prf(gold_tree, pred_tree)
print(f"M={score.matches} P={score.parser_brackets} C={score.corpus_brackets}")
print(f"precision={score.precision:.2f} recall={score.recall:.2f} "
      f"crossings={crossing_brackets(gold_tree, pred_tree)}")

# The same analyses as GRs.
gold_grs = [gr("dobj", "see", "man", "_"), gr("ncmod", "with", "man", "telescope")]
pred_grs = [gr("dobj", "see", "man", "_"), gr("ncmod", "with", "see", "telescope")]
alignment = align_sentence(pred_grs, gold_grs)
print(f"\nGR matches: {len(alignment)} of {len(gold_grs)}")
for p, g in alignment.pairs:
    print("  matched", gold_grs[g])
missed = [g for i, g in enumerate(gold_grs) if i not in alignment.matched_gold]
print("  missed ", *missed)
