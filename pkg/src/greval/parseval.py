"""Bracket precision/recall and crossing brackets for phrase-structure trees.

Trees are read from ``(LABEL child ...)`` notation. The first atom after an
opening parenthesis is the label; a bracket that opens directly with another
bracket is unlabelled.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union


class BracketFormatError(ValueError):
    def __init__(self, problems: list[tuple[int, int, str]]):
        # (record number, line, message)
        self.problems = problems
        rec, line, msg = problems[0]
        super().__init__(f"record {rec} (line {line}): {msg}")


@dataclass(frozen=True)
class BracketTree:
    label: Optional[str]
    children: tuple[Union["BracketTree", str], ...]

    def leaves(self) -> list[str]:
        out = []
        for c in self.children:
            if isinstance(c, BracketTree):
                out.extend(c.leaves())
            else:
                out.append(c)
        return out

    def spans(self, start: int = 0) -> list[tuple[Optional[str], int, int]]:
        """All brackets as ``(label, start, end)`` half-open intervals, preorder."""
        result = [None]
        pos = start
        for c in self.children:
            if isinstance(c, BracketTree):
                sub = c.spans(pos)
                result.extend(sub)
                pos = sub[0][2]
            else:
                pos += 1
        result[0] = (self.label, start, pos)
        return result

    def __str__(self) -> str:
        inner = " ".join(str(c) for c in self.children)
        return f"({self.label} {inner})" if self.label else f"({inner})"


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_tree(text: str) -> BracketTree:
    trees = parse_bracket_file(text)
    if len(trees) != 1:
        raise BracketFormatError([(1, 1, f"expected one tree, found {len(trees)}")])
    return trees[0]


def parse_bracket_file(source) -> list[BracketTree]:
    """Read every tree in a bracket file.

    Trees may span lines; a blank line inside an open tree ends that record
    as unbalanced. Problems are collected per record and raised together.
    """
    text = source if isinstance(source, str) else source.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    trees: list[BracketTree] = []
    problems: list[tuple[int, int, str]] = []
    stack: list[list] = []
    record, record_line, failed = 0, 0, False

    def fail(lineno, msg):
        nonlocal failed
        if not failed:
            problems.append((record, lineno, msg))
        failed = True

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if stack:
                fail(record_line, "unbalanced parentheses: missing ')'")
                stack = []
            continue
        for tok in _TOKEN.findall(line):
            if tok == "(":
                if not stack:
                    record += 1
                    record_line, failed = lineno, False
                stack.append([None, []])
            elif tok == ")":
                if not stack:
                    record += 1
                    problems.append((record, lineno, "unbalanced parentheses: unexpected ')'"))
                    continue
                label, kids = stack.pop()
                if not kids:
                    fail(lineno, "empty constituent")
                    node = None
                else:
                    node = BracketTree(label, tuple(kids))
                if stack:
                    if node is not None:
                        stack[-1][1].append(node)
                elif not failed and node is not None:
                    trees.append(node)
            else:
                if not stack:
                    record += 1
                    problems.append((record, lineno, f"token {tok!r} outside brackets"))
                    continue
                top = stack[-1]
                if top[0] is None and not top[1]:
                    top[0] = tok
                else:
                    top[1].append(tok)
    if stack:
        fail(record_line, "unbalanced parentheses: missing ')'")
    if problems:
        raise BracketFormatError(problems)
    return trees


@dataclass(frozen=True)
class BracketScore:
    matches: int
    parser_brackets: int
    corpus_brackets: int
    crossings: int = 0
    sentences: int = 1

    @property
    def precision(self) -> float:
        return self.matches / self.parser_brackets if self.parser_brackets else 0.0

    @property
    def recall(self) -> float:
        return self.matches / self.corpus_brackets if self.corpus_brackets else 0.0

    @property
    def mean_crossings(self) -> float:
        return self.crossings / self.sentences if self.sentences else 0.0


def brackets(tree: BracketTree, labelled: bool = False, drop_unary: bool = False,
             drop_root: bool = False) -> Counter:
    """Multiset of brackets: ``(start, end)`` or ``(label, start, end)``."""
    spans = tree.spans()
    if drop_root:
        spans = spans[1:]
    if drop_unary:
        spans = [s for s in spans if s[2] - s[1] > 1]
    if labelled:
        return Counter(spans)
    return Counter((s, e) for _, s, e in spans)


def _check_leaves(gold: BracketTree, pred: BracketTree) -> None:
    g, p = gold.leaves(), pred.leaves()
    if g != p:
        raise ValueError(f"leaf sequences differ ({len(g)} gold tokens vs {len(p)} predicted)")


def count_crossings(pred_spans: Iterable[tuple[int, int]], gold_spans: Iterable[tuple[int, int]]) -> int:
    """Number of predicted spans that cross at least one gold span."""
    gold_spans = set(gold_spans)
    total = 0
    for s, e in pred_spans:
        for gs, ge in gold_spans:
            overlap = s < ge and gs < e
            inside = gs <= s and e <= ge
            contains = s <= gs and ge <= e
            if overlap and not inside and not contains:
                total += 1
                break
    return total


def crossing_brackets(gold: BracketTree, pred: BracketTree, drop_unary: bool = False,
                      drop_root: bool = False) -> int:
    _check_leaves(gold, pred)
    p = brackets(pred, drop_unary=drop_unary, drop_root=drop_root)
    g = brackets(gold, drop_unary=drop_unary, drop_root=drop_root)
    return count_crossings(p.elements(), g)


def bracket_prf(gold: BracketTree, pred: BracketTree, labelled: bool = False,
                drop_unary: bool = False, drop_root: bool = False) -> BracketScore:
    _check_leaves(gold, pred)
    g = brackets(gold, labelled, drop_unary, drop_root)
    p = brackets(pred, labelled, drop_unary, drop_root)
    m = sum((g & p).values())
    return BracketScore(m, sum(p.values()), sum(g.values()),
                        crossing_brackets(gold, pred, drop_unary, drop_root))


def score_bracket_corpus(gold: Sequence[BracketTree], pred: Sequence[BracketTree],
                         labelled: bool = False, drop_unary: bool = False,
                         drop_root: bool = False) -> BracketScore:
    if len(gold) != len(pred):
        raise ValueError(f"gold has {len(gold)} trees but prediction has {len(pred)}")
    m = p = c = x = 0
    for i, (g, t) in enumerate(zip(gold, pred), start=1):
        try:
            s = bracket_prf(g, t, labelled, drop_unary, drop_root)
        except ValueError as e:
            raise ValueError(f"sentence {i}: {e}") from None
        m += s.matches
        p += s.parser_brackets
        c += s.corpus_brackets
        x += s.crossings
    return BracketScore(m, p, c, x, len(gold))
