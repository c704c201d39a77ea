"""Grammatical-relation based parser evaluation."""
from .agreement import AgreementReport, inter_annotator_agreement
from .corpus import (
    Corpus,
    Diagnostic,
    GrFormatError,
    Sentence,
    load_mini_corpus,
    parse_corpus,
    read_corpus,
    validate,
    write_corpus,
)
from .matching import Alignment, MatchPolicy, align_sentence, compatible
from .model import (
    PRO,
    UNSPECIFIED,
    GrInstance,
    GrName,
    Lexeme,
    Relation,
    Slot,
    cone,
    gr,
    normalize_lexeme,
    signature_of,
    subsumes,
)
from .parseval import (
    BracketScore,
    BracketTree,
    bracket_prf,
    crossing_brackets,
    parse_bracket_file,
    score_bracket_corpus,
)
from .scoring import PrfRow, ScoreTable, f_score, render_table, score_corpus
from .stats import genre_chi_square, mean_grs_per_sentence, relation_frequencies

__version__ = "0.1.0"
