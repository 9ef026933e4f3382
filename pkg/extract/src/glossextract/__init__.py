"""Offline embedding extraction for the gloss alignment engine.

Produces the two file formats the engine consumes: contextual-embedding
caches (JSONL, one record per sequence side, one vector per word) and
static word-vector files filtered down to a corpus vocabulary. The engine
itself is only ever touched through those formats.
"""

__version__ = "0.1.0"

from .contextual import ExtractConfig, extract_contextual
from .corpus_io import CorpusRecord, read_corpus
from .static import export_static

__all__ = [
    "CorpusRecord",
    "ExtractConfig",
    "export_static",
    "extract_contextual",
    "read_corpus",
]
