"""Reading, writing and checking ``.gr`` corpus files.

A file is a sequence of sentence blocks::

    % comment
    # sent G22:1460k genre G | When the proprietor dies, ...
    cmod(when, become, die)
    ncsubj(die, proprietor, _)

Blank lines close a block. GR lines inside parentheses are comma separated;
whitespace around slot tokens is ignored.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from importlib import resources
from os import PathLike
from typing import Iterable, Iterator, Optional, TextIO, Union

from .model import (
    CHILDREN,
    GrInstance,
    Lexeme,
    MalformedLexemeError,
    Relation,
    Slot,
    Unspecified,
    cone,
    parse_slot_token,
    signature_of,
)

GENRES = ("A", "G", "J")


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    line: int
    message: str

    def format(self, filename: Optional[str] = None) -> str:
        prefix = f"{filename}:{self.line}: " if filename else f"{self.line}: "
        if self.severity == "warning":
            prefix += "warning: "
        return prefix + self.message


class GrFormatError(ValueError):
    """Raised when a corpus file cannot be parsed; carries every error found."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        msg = first.format() if first else "malformed corpus"
        if len(self.diagnostics) > 1:
            msg += f" (+{len(self.diagnostics) - 1} more)"
        super().__init__(msg)


@dataclass(frozen=True)
class Sentence:
    id: str
    grs: tuple[GrInstance, ...] = ()
    genre: Optional[str] = None
    text: Optional[str] = None

    def __post_init__(self):
        if not self.id or re.search(r"\s", self.id):
            raise ValueError(f"sentence id must be a non-empty token, got {self.id!r}")
        if self.genre is not None and self.genre not in GENRES:
            raise ValueError(f"genre must be one of {', '.join(GENRES)}, got {self.genre!r}")
        object.__setattr__(self, "grs", tuple(self.grs))


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise ValueError(f"duplicate sentence id {s.id!r}")
            seen.add(s.id)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __getitem__(self, key: Union[int, str]) -> Sentence:
        if isinstance(key, str):
            for s in self.sentences:
                if s.id == key:
                    return s
            raise KeyError(key)
        return self.sentences[key]

    @property
    def ids(self) -> list[str]:
        return [s.id for s in self.sentences]

    def grs(self) -> Iterator[GrInstance]:
        for s in self.sentences:
            yield from s.grs

    @property
    def n_grs(self) -> int:
        return sum(len(s.grs) for s in self.sentences)

    def __add__(self, other: "Corpus") -> "Corpus":
        return Corpus(self.sentences + other.sentences)


# Parsing -----------------------------------------------------------------

_GR_LINE = re.compile(r"^([A-Za-z_0-9]+)\s*\((.*)\)$")
_HEADER = re.compile(r"^#\s*sent\s+(\S+)(?:\s+genre\s+(\S+))?\s*(?:\|\s?(.*))?$")


def parse_gr(line: str) -> GrInstance:
    """Parse a single ``name(v1, v2, ...)`` line.

    Raises ValueError with a message suitable for a diagnostic.
    """
    m = _GR_LINE.match(line.strip())
    if not m:
        raise ValueError(f"malformed GR line {line.strip()!r}")
    name, body = m.groups()
    relation = Relation.from_name(name)
    tokens = [t.strip() for t in body.split(",")]
    sig = signature_of(relation)
    if len(tokens) != len(sig):
        raise ValueError(f"{relation} requires {len(sig)} slots, found {len(tokens)}")
    values = []
    for slot, tok in zip(sig, tokens):
        if not tok:
            raise ValueError(f"empty {slot} slot in {relation}")
        try:
            values.append(parse_slot_token(tok, slot))
        except MalformedLexemeError as e:
            raise ValueError(f"bad {slot} slot in {relation}: {e}") from None
    return GrInstance(relation, tuple(values))


def _read_text(source: Union[str, bytes, TextIO]) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def parse_corpus(source: Union[str, bytes, TextIO]) -> Corpus:
    """Parse ``.gr`` text into a :class:`Corpus`.

    All problems in the input are collected; if any is an error a
    :class:`GrFormatError` listing them is raised.
    """
    try:
        text = _read_text(source)
    except UnicodeDecodeError as e:
        raise GrFormatError([Diagnostic("error", 1, f"input is not valid UTF-8: {e.reason}")]) from None

    errors: list[Diagnostic] = []
    sentences: list[Sentence] = []
    seen_ids: dict[str, int] = {}
    current: Optional[dict] = None

    def close():
        nonlocal current
        if current is not None:
            try:
                sentences.append(Sentence(current["id"], current["grs"], current["genre"], current["text"]))
            except ValueError as e:
                errors.append(Diagnostic("error", current["line"], str(e)))
        current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            close()
            continue
        if line.startswith("%"):
            continue
        if line.startswith("#"):
            close()
            m = _HEADER.match(line)
            if not m:
                errors.append(Diagnostic("error", lineno, f"malformed sentence header {line!r}"))
                continue
            sid, genre, sent_text = m.groups()
            if genre is not None and genre not in GENRES:
                errors.append(Diagnostic("error", lineno, f"unknown genre {genre!r} (expected A, G or J)"))
                genre = None
            if sid in seen_ids:
                errors.append(Diagnostic(
                    "error", lineno, f"duplicate sentence id {sid!r} (first at line {seen_ids[sid]})"))
                continue
            seen_ids[sid] = lineno
            current = {"id": sid, "genre": genre, "text": sent_text.strip() if sent_text else None,
                       "grs": [], "line": lineno}
            continue
        try:
            instance = parse_gr(line)
        except (ValueError, TypeError) as e:
            errors.append(Diagnostic("error", lineno, str(e)))
            continue
        if current is None:
            errors.append(Diagnostic("error", lineno, "GR line outside a sentence block"))
            continue
        current["grs"].append(instance)
    close()

    if errors:
        raise GrFormatError(errors)
    return Corpus(tuple(sentences))


def read_corpus(path: Union[str, PathLike]) -> Corpus:
    with open(path, "rb") as fh:
        return parse_corpus(fh.read())


def load_mini_corpus() -> Corpus:
    """The bundled single-sentence corpus (SUSANNE G22:1460k-1480m)."""
    return parse_corpus(resources.files("greval").joinpath("data/mini.gr").read_bytes())


# Writing -----------------------------------------------------------------

def format_header(sentence: Sentence) -> str:
    parts = ["#", "sent", sentence.id]
    if sentence.genre:
        parts += ["genre", sentence.genre]
    if sentence.text:
        parts += ["|", sentence.text]
    return " ".join(parts)


def write_corpus(corpus: Corpus, out: Optional[TextIO] = None) -> str:
    """Serialize to the canonical form; also writes to `out` if given."""
    buf = io.StringIO()
    for s in corpus:
        buf.write(format_header(s) + "\n")
        for g in s.grs:
            buf.write(str(g) + "\n")
        buf.write("\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


# Validation --------------------------------------------------------------

_TYPE_FAMILIES = cone(Relation.MOD) | cone(Relation.CLAUSAL) | {Relation.IOBJ}


def validate(corpus: Corpus, gold: bool = True,
             lines: Optional[dict[str, Iterable[int]]] = None) -> list[Diagnostic]:
    """Return warnings for a parsed corpus.

    Gold files should be fully specified, so underspecified relations and
    ``_`` type slots are flagged there. `lines` optionally maps sentence id
    to the source line number of each GR, for locating diagnostics.
    """
    out = []
    for sent in corpus:
        linenos = list(lines.get(sent.id, ())) if lines else []
        for i, g in enumerate(sent.grs):
            lineno = linenos[i] if i < len(linenos) else 0
            if gold and CHILDREN.get(g.relation):
                out.append(Diagnostic("warning", lineno, f"non-leaf relation '{g.relation}' in gold corpus"))
            if gold and g.relation in _TYPE_FAMILIES and isinstance(g.get(Slot.TYPE), Unspecified):
                out.append(Diagnostic("warning", lineno, f"unspecified type slot in gold {g.relation} GR"))
            head = g.head
            if isinstance(head, Lexeme) and head.lemma != head.lemma.lower():
                out.append(Diagnostic("warning", lineno, f"head lexeme '{head}' contains uppercase"))
    return out


def gr_line_numbers(source: Union[str, bytes]) -> dict[str, list[int]]:
    """Map each sentence id to the line numbers of its GR lines."""
    text = _read_text(source)
    result: dict[str, list[int]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            current = None
        elif line.startswith("#"):
            m = _HEADER.match(line)
            current = m.group(1) if m else None
            if current is not None:
                result.setdefault(current, [])
        elif not line.startswith("%") and current is not None:
            result[current].append(lineno)
    return result
