"""Associative normal form of image constructions and question generation."""

from .core import (
    EMPTY,
    AnfTerm,
    AssociativePair,
    EncodingError,
    IcError,
    Image,
    InvalidPairError,
    NotFoundError,
    Placeholder,
    canonical_eq,
    cross,
    make_pair,
    oplus,
    reduce,
    render_pair,
    render_term,
)
from .graph import ImageGraph, export, from_json, reachable_edges, to_graph
from .ingest import (
    ParseError,
    PronounLexicon,
    lookup_label,
    parse_lexicon,
    parse_native,
    parse_treebank_subset,
    render_native,
)
from .normalize import (
    CoordinationGroup,
    EncodedSyntagma,
    encode,
    ensure_subject_predicate,
    expand_homogeneous,
    to_anf,
)
from .qa import LinearQA, QaPartition, enumerate_questions, linearize, partition, render_question

__version__ = "0.1.0"
