"""``greval`` command line: evaluate, stats, agree, parseval, validate.

Exit status is 0 on success, 1 when an input file is malformed, 2 on usage
errors (argparse's own convention).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from typing import Optional, Sequence

from .agreement import inter_annotator_agreement
from .corpus import Corpus, GrFormatError, gr_line_numbers, parse_corpus, validate
from .matching import MatchPolicy
from .parseval import BracketFormatError, parse_bracket_file, score_bracket_corpus
from .scoring import JSON_SCHEMA, percent, per_sentence_rows, render_table, score_corpus
from .stats import (
    GenreContingency,
    genre_chi_square,
    mean_grs_per_sentence,
    pool_sparse_rows,
    relation_frequencies,
)

FORMATS = ("text", "csv", "json")


class InputError(Exception):
    """Malformed input; message lines are already formatted diagnostics."""


class UsageError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> Corpus:
    data = _read_bytes(path)
    try:
        return parse_corpus(data)
    except GrFormatError as e:
        raise InputError("\n".join(d.format(path) for d in e.diagnostics)) from None


def _cmd_evaluate(args, out):
    gold, pred = _load(args.gold), _load(args.pred)
    table = score_corpus(pred, gold, args.policy)
    for w in table.warnings:
        print(f"{args.pred}: warning: {w.message}", file=sys.stderr)
    out.write(render_table(table, args.format))
    if args.per_sentence:
        with open(args.per_sentence, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["sentence", "predicted", "gold", "matched", "exact"],
                                    lineterminator="\n")
            writer.writeheader()
            writer.writerows(per_sentence_rows(pred, gold, args.policy))


def _cmd_stats(args, out):
    corpus = _load(args.corpus)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        freqs = relation_frequencies(corpus)
    for w in caught:
        print(f"{args.corpus}: warning: {w.message}", file=sys.stderr)
    mean = mean_grs_per_sentence(corpus) if len(corpus) else None

    genre = None
    if args.by_genre:
        cont = GenreContingency.from_corpus(corpus)
        try:
            result = genre_chi_square(corpus)
        except ValueError as e:
            raise InputError(f"{args.corpus}: genre test not possible: {e}") from None
        names, _ = pool_sparse_rows(cont.rows, cont.counts)
        genre = {"genres": list(cont.genres), "rows": cont.rows, "counts": cont.counts.tolist(),
                 "pooled_rows": names, "result": result}

    if args.format == "json":
        doc = {
            "schema": JSON_SCHEMA,
            "sentences": len(corpus),
            "grs": corpus.n_grs,
            "mean_grs_per_sentence": mean,
            "relations": [{"relation": r.value, "count": n, "percent": float(p)}
                          for r, _, n, p in freqs.rows()],
        }
        if genre:
            res = genre["result"]
            doc["genre_test"] = {
                "genres": genre["genres"],
                "contingency": dict(zip(genre["rows"], genre["counts"])),
                "pooled_rows": genre["pooled_rows"],
                "statistic": res.statistic, "dof": res.dof, "p_value": res.p_value,
                "significant": res.significant,
            }
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["relation", "count", "percent"])
        for r, _, n, p in freqs.rows():
            writer.writerow([r.value, n, p])
        if genre:
            res = genre["result"]
            writer.writerow([])
            writer.writerow(["relation", *genre["genres"]])
            for name, row in zip(genre["rows"], genre["counts"]):
                writer.writerow([name, *row])
            writer.writerow([])
            writer.writerow(["statistic", "dof", "p_value"])
            writer.writerow([res.statistic, res.dof, res.p_value])
        return

    out.write(f"{'Relation':<18}{'#':>7}{'%':>7}\n")
    for r, depth, n, p in freqs.rows():
        out.write(f"{' ' * depth + r.value:<18}{n:>7}{p:>7}\n")
    if mean is not None:
        out.write(f"\n{len(corpus)} sentences, {corpus.n_grs} GRs, {mean:.2f} GRs per sentence\n")
    if genre:
        res = genre["result"]
        out.write("\nGRs by genre (exact relation level)\n")
        out.write(f"{'Relation':<14}" + "".join(f"{g:>7}" for g in genre["genres"]) + "\n")
        for name, row in zip(genre["rows"], genre["counts"]):
            out.write(f"{name:<14}" + "".join(f"{c:>7}" for c in row) + "\n")
        verdict = "significant" if res.significant else "not significant"
        out.write(f"chi-square = {res.statistic:.3f}, df = {res.dof}, p = {res.p_value:.4g} "
                  f"({verdict} at 0.05; {len(genre['pooled_rows'])} rows after pooling)\n")


def _cmd_agree(args, out):
    a, b = _load(args.a), _load(args.b)
    try:
        report = inter_annotator_agreement(a, b)
    except ValueError as e:
        raise InputError(str(e)) from None
    if args.format == "json":
        doc = {"schema": JSON_SCHEMA, "f_score": report.f_score,
               "precision_a_given_b": report.precision_a_given_b,
               "precision_b_given_a": report.precision_b_given_a,
               "matched": report.matched, "a_grs": report.a_count, "b_grs": report.b_count,
               "relations": [row.as_dict() for row in report.table]}
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    if args.format == "csv":
        out.write("measure,value\n")
        out.write(f"f_score,{report.f_score}\nprecision_a_given_b,{report.precision_a_given_b}\n"
                  f"precision_b_given_a,{report.precision_b_given_a}\n")
        return
    out.write(f"matched {report.matched} of {report.a_count} / {report.b_count} GRs\n")
    out.write(f"agreement (F) {percent(report.f_score)}\n")
    out.write(f"A in B {percent(report.precision_a_given_b)}   B in A {percent(report.precision_b_given_a)}\n\n")
    out.write(render_table(report.table, "text"))


def _load_trees(path):
    data = _read_bytes(path)
    try:
        return parse_bracket_file(data.decode("utf-8"))
    except BracketFormatError as e:
        raise InputError("\n".join(f"{path}:{line}: record {rec}: {msg}" for rec, line, msg in e.problems)) from None
    except UnicodeDecodeError:
        raise InputError(f"{path}:1: input is not valid UTF-8") from None


def _cmd_parseval(args, out):
    gold, pred = _load_trees(args.gold), _load_trees(args.pred)
    try:
        score = score_bracket_corpus(gold, pred, args.labelled, args.drop_unary, args.drop_root)
    except ValueError as e:
        raise InputError(f"{args.pred}: {e}") from None
    if args.format == "json":
        doc = {"schema": JSON_SCHEMA, "matches": score.matches, "parser_brackets": score.parser_brackets,
               "corpus_brackets": score.corpus_brackets, "precision": score.precision,
               "recall": score.recall, "crossings": score.crossings, "sentences": score.sentences,
               "mean_crossings": score.mean_crossings, "labelled": args.labelled}
        out.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        out.write("matches,parser_brackets,corpus_brackets,precision,recall,mean_crossings\n")
        out.write(f"{score.matches},{score.parser_brackets},{score.corpus_brackets},"
                  f"{score.precision},{score.recall},{score.mean_crossings}\n")
    else:
        out.write(f"sentences        {score.sentences}\n")
        out.write(f"brackets M/P/C   {score.matches} / {score.parser_brackets} / {score.corpus_brackets}\n")
        out.write(f"precision        {percent(score.precision)}\n")
        out.write(f"recall           {percent(score.recall)}\n")
        out.write(f"mean crossings   {score.mean_crossings:.2f}\n")


def _cmd_validate(args, out):
    data = _read_bytes(args.corpus)
    corpus = _load(args.corpus)
    diags = validate(corpus, gold=not args.pred, lines=gr_line_numbers(data))
    for d in diags:
        print(d.format(args.corpus), file=sys.stderr)
    out.write(f"{args.corpus}: {len(corpus)} sentences, {corpus.n_grs} GRs, {len(diags)} warnings\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="greval", description="Grammatical-relation parser evaluation.")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("evaluate", help="score predicted GRs against a gold corpus")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument("--policy", choices=[m.value for m in MatchPolicy], default="paper")
    p.add_argument("--per-sentence", metavar="CSV", help="also write per-sentence counts to CSV")
    fmt(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("stats", help="relation frequencies of a corpus")
    p.add_argument("corpus")
    p.add_argument("--by-genre", action="store_true", help="add the genre homogeneity test")
    fmt(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("agree", help="inter-annotator agreement of two annotations")
    p.add_argument("a")
    p.add_argument("b")
    fmt(p)
    p.set_defaults(func=_cmd_agree)

    p = sub.add_parser("parseval", help="bracket precision/recall and crossing brackets")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument("--labelled", action="store_true")
    p.add_argument("--drop-unary", action="store_true", help="ignore width-1 brackets")
    p.add_argument("--drop-root", action="store_true", help="ignore the root bracket")
    fmt(p)
    p.set_defaults(func=_cmd_parseval)

    p = sub.add_parser("validate", help="check a corpus file")
    p.add_argument("corpus")
    p.add_argument("--pred", action="store_true",
                   help="treat the file as parser output (underspecified GRs allowed)")
    p.set_defaults(func=_cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.func(args, out)
    except UsageError as e:
        print(f"greval: error: {e}", file=sys.stderr)
        return 2
    except InputError as e:
        print(str(e), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
