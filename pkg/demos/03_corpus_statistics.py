"""
Relation frequencies and genre homogeneity
==========================================

Frequencies count each GR under its own relation and every relation above
it, so a parent's count is the sum of its children (plus anything annotated
at the parent itself). ``subj_or_dobj`` overlaps ``subj`` and ``dobj``.
"""

import random

from greval import Corpus, Sentence, relation_frequencies
from greval.model import GrInstance, Lexeme, Relation, Slot, UNSPECIFIED, signature_of
from greval.stats import GenreContingency, genre_chi_square, mean_grs_per_sentence

# Leaf-level counts of a 500-sentence corpus.
exact = {
    "ncmod": 2377, "xmod": 170, "cmod": 163, "arg_mod": 39,
    "ncsubj": 984, "xsubj": 5, "csubj": 4,
    "dobj": 396, "obj2": 19, "iobj": 144, "xcomp": 323, "ccomp": 66,
}


def dummy(relation, genre_word="w"):
    values = []
    for slot in signature_of(relation):
        if slot is Slot.INITIAL_GR:
            values.append(UNSPECIFIED)
        else:
            values.append(Lexeme(genre_word))
    return GrInstance(relation, tuple(values))


grs = [dummy(Relation(name)) for name, n in exact.items() for _ in range(n)]
rng = random.Random(0)
rng.shuffle(grs)
sentences = [Sentence(f"s{i}", tuple(grs[i::500]), "AGJ"[i % 3]) for i in range(500)]
corpus = Corpus(tuple(sentences))

freqs = relation_frequencies(corpus)
for rel, depth, count, pct in freqs.rows():
    print(f"{'  ' * depth}{rel.value:<16}{count:>6}{pct:>7}")
print(f"\nmean GRs per sentence: {mean_grs_per_sentence(corpus):.2f}")

# Genres were assigned independently of content, so the test should find
# no difference in relation mix.
cont = GenreContingency.from_corpus(corpus)
print("\ngenres:", cont.genres, "column totals:", cont.counts.sum(axis=0).tolist())
result = genre_chi_square(corpus)
print(f"chi-square={result.statistic:.2f} df={result.dof} p={result.p_value:.3f} "
      f"significant={result.significant}")
