"""
The grammatical relation scheme
===============================

Relations form a small DAG rooted at ``dependent``. Each GR names a
relation and fills its slots with lemmas, ``_`` (unspecified), ``Pro``, or,
in the initial_gr slot, another relation name.
"""

from greval import Relation, cone, gr, load_mini_corpus, normalize_lexeme, signature_of, subsumes
from greval.corpus import validate, write_corpus
from greval.model import PARENTS, TABLE_ORDER

# The hierarchy, drawn as an indented list. subj and dobj each have two parents.
for rel, depth in TABLE_ORDER:
    parents = ", ".join(p.value for p in PARENTS[rel])
    slots = ", ".join(s.value for s in signature_of(rel))
    print(f"{'  ' * depth}{rel.value:<14} slots=({slots})  parents=[{parents}]")

print()
print("subj_or_dobj covers:", sorted(r.value for r in cone(Relation.SUBJ_OR_DOBJ)))
print("dependent subsumes ccomp:", subsumes(Relation.DEPENDENT, Relation.CCOMP))

# Multi-word heads reduce to their final word.
print("Bill Clinton ->", normalize_lexeme("Bill Clinton"))

# The bundled corpus holds a single SUSANNE sentence with twelve GRs.
mini = load_mini_corpus()
sentence = mini[0]
print()
print(sentence.text)
for g in sentence.grs:
    print("  ", g)

# Passive subject: the surface subject "it" is underlyingly an object.
passive = gr("ncsubj", "acquire", "it", "obj")
print("\ninitial_gr of", passive, "=", passive.values[-1])

# Checking the file as a gold standard flags the one underspecified GR.
for d in validate(mini):
    print("warning:", d.message)

print("\ncanonical form:\n" + write_corpus(mini))
