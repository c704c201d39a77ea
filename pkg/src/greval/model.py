"""Grammatical relation inventory, subsumption hierarchy and GR instances.

The relation hierarchy is a rooted DAG: ``subj`` sits under both ``arg`` and
``subj_or_dobj``, and ``dobj`` under both ``obj`` and ``subj_or_dobj``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union


class Relation(str, enum.Enum):
    DEPENDENT = "dependent"
    MOD = "mod"
    NCMOD = "ncmod"
    XMOD = "xmod"
    CMOD = "cmod"
    ARG_MOD = "arg_mod"
    ARG = "arg"
    SUBJ = "subj"
    NCSUBJ = "ncsubj"
    XSUBJ = "xsubj"
    CSUBJ = "csubj"
    SUBJ_OR_DOBJ = "subj_or_dobj"
    COMP = "comp"
    OBJ = "obj"
    DOBJ = "dobj"
    OBJ2 = "obj2"
    IOBJ = "iobj"
    CLAUSAL = "clausal"
    XCOMP = "xcomp"
    CCOMP = "ccomp"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_name(cls, name: str) -> "Relation":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown relation {name!r}") from None


R = Relation

CHILDREN: dict[Relation, tuple[Relation, ...]] = {
    R.DEPENDENT: (R.MOD, R.ARG_MOD, R.ARG),
    R.MOD: (R.NCMOD, R.XMOD, R.CMOD),
    R.ARG: (R.SUBJ_OR_DOBJ, R.SUBJ, R.COMP),
    R.SUBJ_OR_DOBJ: (R.SUBJ, R.DOBJ),
    R.SUBJ: (R.NCSUBJ, R.XSUBJ, R.CSUBJ),
    R.COMP: (R.OBJ, R.CLAUSAL),
    R.OBJ: (R.DOBJ, R.OBJ2, R.IOBJ),
    R.CLAUSAL: (R.XCOMP, R.CCOMP),
}

PARENTS: dict[Relation, tuple[Relation, ...]] = {
    r: tuple(p for p, kids in CHILDREN.items() if r in kids) for r in Relation
}

ROOT = R.DEPENDENT

# Report row order with display depth (arg's subtree lists subj before
# subj_or_dobj; subj_or_dobj is shown as a sibling of subj).
TABLE_ORDER: tuple[tuple[Relation, int], ...] = (
    (R.DEPENDENT, 0),
    (R.MOD, 1), (R.NCMOD, 2), (R.XMOD, 2), (R.CMOD, 2),
    (R.ARG_MOD, 1),
    (R.ARG, 1),
    (R.SUBJ, 2), (R.NCSUBJ, 3), (R.XSUBJ, 3), (R.CSUBJ, 3),
    (R.SUBJ_OR_DOBJ, 2),
    (R.COMP, 2),
    (R.OBJ, 3), (R.DOBJ, 4), (R.OBJ2, 4), (R.IOBJ, 4),
    (R.CLAUSAL, 3), (R.XCOMP, 4), (R.CCOMP, 4),
)


@lru_cache(maxsize=None)
def cone(relation: Relation) -> frozenset[Relation]:
    """Return `relation` together with every relation it subsumes."""
    relation = Relation(relation)
    members = {relation}
    for child in CHILDREN.get(relation, ()):
        members |= cone(child)
    return frozenset(members)


def subsumes(ancestor: Relation, descendant: Relation) -> bool:
    return Relation(descendant) in cone(Relation(ancestor))


def ancestors(relation: Relation) -> frozenset[Relation]:
    """All relations subsuming `relation`, itself included."""
    return frozenset(r for r in Relation if subsumes(r, relation))


def is_leaf(relation: Relation) -> bool:
    return not CHILDREN.get(Relation(relation))


class Slot(str, enum.Enum):
    TYPE = "type"
    HEAD = "head"
    DEPENDENT = "dependent"
    INITIAL_GR = "initial_gr"

    def __str__(self) -> str:
        return self.value


_TYPED = (Slot.TYPE, Slot.HEAD, Slot.DEPENDENT)
_SUBJ_LIKE = (Slot.HEAD, Slot.DEPENDENT, Slot.INITIAL_GR)
_BARE = (Slot.HEAD, Slot.DEPENDENT)

SIGNATURES: dict[Relation, tuple[Slot, ...]] = {
    R.DEPENDENT: _BARE,
    R.MOD: _TYPED, R.NCMOD: _TYPED, R.XMOD: _TYPED, R.CMOD: _TYPED,
    R.ARG_MOD: (Slot.TYPE, Slot.HEAD, Slot.DEPENDENT, Slot.INITIAL_GR),
    R.ARG: _BARE,
    R.SUBJ: _SUBJ_LIKE, R.NCSUBJ: _SUBJ_LIKE, R.XSUBJ: _SUBJ_LIKE,
    R.CSUBJ: _SUBJ_LIKE,
    R.SUBJ_OR_DOBJ: _SUBJ_LIKE,
    R.COMP: _BARE,
    R.OBJ: _BARE, R.DOBJ: _SUBJ_LIKE, R.OBJ2: _BARE, R.IOBJ: _TYPED,
    R.CLAUSAL: _TYPED, R.XCOMP: _TYPED, R.CCOMP: _TYPED,
}


def signature_of(relation: Relation) -> tuple[Slot, ...]:
    return SIGNATURES[Relation(relation)]


# Slot values -------------------------------------------------------------

_BAD_LEMMA = re.compile(r"[\s(),]")


class MalformedLexemeError(ValueError):
    pass


@dataclass(frozen=True)
class Lexeme:
    """A lemma with an optional 1-based token position.

    Dataclass equality is structural. Use :meth:`matches` for the comparison
    the evaluator applies (case-insensitive, index-aware only when both
    sides carry one).
    """

    lemma: str
    index: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.lemma, str) or not self.lemma:
            raise MalformedLexemeError("empty lemma")
        if _BAD_LEMMA.search(self.lemma):
            raise MalformedLexemeError(f"illegal character in lemma {self.lemma!r}")
        if self.lemma in ("_", "Pro"):
            raise MalformedLexemeError(f"{self.lemma!r} is reserved")
        if self.index is not None and (
            isinstance(self.index, bool) or not isinstance(self.index, int) or self.index < 1
        ):
            raise MalformedLexemeError(f"token index must be a positive integer, got {self.index!r}")

    def matches(self, other: "Lexeme") -> bool:
        if self.lemma.casefold() != other.lemma.casefold():
            return False
        if self.index is not None and other.index is not None:
            return self.index == other.index
        return True

    def __str__(self) -> str:
        return self.lemma if self.index is None else f"{self.lemma}:{self.index}"


@dataclass(frozen=True)
class Unspecified:
    def __str__(self) -> str:
        return "_"


@dataclass(frozen=True)
class Pro:
    def __str__(self) -> str:
        return "Pro"


@dataclass(frozen=True)
class GrName:
    relation: Relation

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation(self.relation))

    def __str__(self) -> str:
        return self.relation.value


UNSPECIFIED = Unspecified()
PRO = Pro()

SlotValue = Union[Lexeme, Unspecified, Pro, GrName]


def slot_values_match(a: SlotValue, b: SlotValue) -> bool:
    """Equality of slot fillers, with lexemes compared via :meth:`Lexeme.matches`."""
    if isinstance(a, Lexeme) and isinstance(b, Lexeme):
        return a.matches(b)
    return a == b


def normalize_lexeme(raw: Union[str, Sequence[str]], index: Optional[int] = None) -> Lexeme:
    """Reduce a (possibly multi-word) base form to its final token, lowercased.

    >>> normalize_lexeme("Bill Clinton")
    Lexeme(lemma='clinton', index=None)
    """
    tokens = raw.split() if isinstance(raw, str) else [t for tok in raw for t in str(tok).split()]
    if not tokens:
        raise MalformedLexemeError("cannot normalize an empty token sequence")
    return Lexeme(tokens[-1].lower(), index)


# GR instances ------------------------------------------------------------

def _check_slot(relation: Relation, slot: Slot, value) -> None:
    if not isinstance(value, (Lexeme, Unspecified, Pro, GrName)):
        raise TypeError(f"{relation}: {slot} slot holds {value!r}, not a slot value")
    if isinstance(value, Pro) and slot is not Slot.DEPENDENT:
        raise ValueError(f"{relation}: Pro is only allowed in the dependent slot, found in {slot}")
    if isinstance(value, GrName) and slot is not Slot.INITIAL_GR:
        raise ValueError(f"{relation}: relation name {value} is only allowed in the initial_gr slot")
    if slot is Slot.HEAD and not isinstance(value, Lexeme):
        raise ValueError(f"{relation}: head slot must be a lexeme, found {value}")
    if slot is Slot.INITIAL_GR and not isinstance(value, (GrName, Unspecified)):
        raise ValueError(f"{relation}: initial_gr slot must be a relation name or _, found {value}")


@dataclass(frozen=True)
class GrInstance:
    """One grammatical relation: a relation name and its ordered slot fillers."""

    relation: Relation
    values: tuple[SlotValue, ...]

    def __post_init__(self):
        relation = Relation(self.relation)
        values = tuple(self.values)
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "values", values)
        sig = SIGNATURES[relation]
        if len(values) != len(sig):
            raise ValueError(f"{relation} requires {len(sig)} slots, found {len(values)}")
        for slot, value in zip(sig, values):
            _check_slot(relation, slot, value)

    @property
    def signature(self) -> tuple[Slot, ...]:
        return SIGNATURES[self.relation]

    def slots(self) -> dict[Slot, SlotValue]:
        return dict(zip(self.signature, self.values))

    def get(self, slot: Slot) -> Optional[SlotValue]:
        return self.slots().get(Slot(slot))

    @property
    def head(self) -> Lexeme:
        return self.get(Slot.HEAD)

    @property
    def dependent(self) -> SlotValue:
        return self.get(Slot.DEPENDENT)

    def __str__(self) -> str:
        return f"{self.relation.value}({', '.join(str(v) for v in self.values)})"


def gr(relation: Union[str, Relation], *values: Union[str, SlotValue]) -> GrInstance:
    """Build a GR from plain strings using the corpus token grammar.

    ``gr("ncsubj", "die", "proprietor", "_")`` is the same instance the
    corpus reader produces for ``ncsubj(die, proprietor, _)``.
    """
    rel = Relation.from_name(relation) if isinstance(relation, str) else relation
    sig = SIGNATURES[rel]
    converted = [
        parse_slot_token(v, slot) if isinstance(v, str) else v
        for slot, v in zip(sig, values)
    ]
    converted.extend(values[len(sig):])
    return GrInstance(rel, tuple(converted))


_INDEXED = re.compile(r"^(.+):(\d+)$")


def parse_slot_token(token: str, slot: Slot) -> SlotValue:
    """Interpret one slot token: ``_``, ``Pro``, a relation name in initial_gr, or a lexeme."""
    token = token.strip()
    if token == "_":
        return UNSPECIFIED
    if token == "Pro":
        return PRO
    if slot is Slot.INITIAL_GR:
        try:
            return GrName(Relation(token))
        except ValueError:
            raise MalformedLexemeError(
                f"initial_gr slot must be a relation name or _, found {token!r}") from None
    m = _INDEXED.match(token)
    if m:
        return Lexeme(m.group(1), int(m.group(2)))
    return Lexeme(token)
