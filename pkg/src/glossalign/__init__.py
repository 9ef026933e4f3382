"""Gloss-to-subtitle alignment toolkit.

Re-assigns sign-language gloss tokens to the spoken-language subtitle
sentences they translate, by scoring embedding similarity between glosses
and words and greedily re-splitting gloss sequences at sentence
boundaries. Ships the corruption simulators and BLEU-1 evaluation used to
validate the aligner on synthetic corpora.
"""

__version__ = "0.1.0"

from .align import (
    AlignConfig,
    SplitCurve,
    align,
    best_split,
    combine_alignments,
    dump_matrix_csv,
    similarity_matrix,
    split_scores,
)
from .corpus import (
    Corpus,
    CorpusFormatError,
    NormalizationConfig,
    Pair,
    Side,
    Token,
    load_corpus,
    normalize_corpus,
    normalize_token,
    split_compounds,
    split_corpus_compounds,
    write_corpus,
)
from .corrupt import CorruptionLog, CorruptionSpec, gloss_misalign, offset_by_one
from .embeddings import (
    ContextCache,
    Providers,
    StaticTable,
    SyntheticEmbedder,
    VectorFormatError,
    attach_embeddings,
    embed_sequence,
    load_contextual_cache,
    load_static_vectors,
    synthetic_embed,
)
from .evaluate import EvalResult, bleu1_corpus, dump_result_json, emit_report
from .sweep import (
    PassRecord,
    SweepConfig,
    SweepReport,
    realign_pair,
    run_alignment,
    sweep_pass,
)

__all__ = [
    "AlignConfig",
    "ContextCache",
    "Corpus",
    "CorpusFormatError",
    "CorruptionLog",
    "CorruptionSpec",
    "EvalResult",
    "NormalizationConfig",
    "Pair",
    "PassRecord",
    "Providers",
    "Side",
    "SplitCurve",
    "StaticTable",
    "SweepConfig",
    "SweepReport",
    "SyntheticEmbedder",
    "Token",
    "VectorFormatError",
    "align",
    "attach_embeddings",
    "best_split",
    "bleu1_corpus",
    "combine_alignments",
    "dump_matrix_csv",
    "dump_result_json",
    "embed_sequence",
    "emit_report",
    "gloss_misalign",
    "load_contextual_cache",
    "load_corpus",
    "load_static_vectors",
    "normalize_corpus",
    "normalize_token",
    "offset_by_one",
    "realign_pair",
    "run_alignment",
    "similarity_matrix",
    "split_compounds",
    "split_corpus_compounds",
    "split_scores",
    "sweep_pass",
    "synthetic_embed",
    "write_corpus",
]
