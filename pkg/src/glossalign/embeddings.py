"""Embedding providers and sequence embedding.

Three providers feed the aligner: a static word-vector table (the text
format public 300-d vector releases ship in), a precomputed contextual
cache (JSONL, one record per sequence side), and a deterministic synthetic
embedder for desk-scale runs without model files.

Every produced matrix row is either an exact zero (out-of-vocabulary or
empty normalized form) or L2-normalized, so downstream dot products are
cosines in [-1, 1]. Contextual lookups key on each token's ``origin``, and
rows attached to tokens are reused verbatim, so embeddings computed in a
token's original context travel with it when boundaries move.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus, Side, Token


class VectorFormatError(ValueError):
    """Raised for malformed vector or cache files."""


@dataclass
class StaticTable:
    """Word -> vector table keyed by normalized form."""

    dim: int
    entries: dict[str, np.ndarray] = field(default_factory=dict)


@dataclass
class ContextCache:
    """(sequence id, side, position) -> vector, from an offline extractor.

    ``duplicates`` counts keys that appeared more than once while loading
    (last occurrence wins).
    """

    dim: int
    entries: dict[tuple[str, Side, int], np.ndarray] = field(default_factory=dict)
    duplicates: int = 0

    def lookup(self, seq_id: str, side: Side, position: int) -> np.ndarray | None:
        return self.entries.get((seq_id, side, position))


@dataclass(frozen=True)
class SyntheticEmbedder:
    """Deterministic hash-seeded unit vectors; a test-scale Word2Vec stand-in."""

    dim: int
    seed: int


@dataclass
class Providers:
    """The embedding sources enabled for a run."""

    static: StaticTable | SyntheticEmbedder | None = None
    contextual: ContextCache | None = None


def load_static_vectors(
    path: str | Path, vocab_filter: set[str] | None = None
) -> StaticTable:
    """Parse a text vector file: header "<count> <dim>", then "<word> <floats>".

    Any line whose float count disagrees with the header dimension, or that
    contains a non-finite value, raises :class:`VectorFormatError` naming
    the line.
    """
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise VectorFormatError(f"{path}:1: expected header '<count> <dim>'")
        try:
            _count, dim = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise VectorFormatError(f"{path}:1: non-integer header: {header!r}") from exc
        if dim < 1:
            raise VectorFormatError(f"{path}:1: dimension must be positive, got {dim}")
        entries: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            cols = line.rstrip("\n").split(" ")
            cols = [c for c in cols if c != ""]
            word, values = cols[0], cols[1:]
            if len(values) != dim:
                raise VectorFormatError(
                    f"{path}:{lineno}: expected {dim} floats, got {len(values)}"
                )
            if vocab_filter is not None and word not in vocab_filter:
                continue
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as exc:
                raise VectorFormatError(f"{path}:{lineno}: bad float: {exc}") from exc
            if not np.all(np.isfinite(vec)):
                raise VectorFormatError(f"{path}:{lineno}: non-finite value")
            entries[word] = vec
    return StaticTable(dim=dim, entries=entries)


def load_contextual_cache(path: str | Path) -> ContextCache:
    """Load a JSONL contextual cache; duplicate keys are counted, last wins."""
    path = Path(path)
    cache: ContextCache | None = None
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise VectorFormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            try:
                seq_id = rec["id"]
                side = Side(rec["side"])
                dim = int(rec["dim"])
                vectors = rec["vectors"]
            except (KeyError, ValueError, TypeError) as exc:
                raise VectorFormatError(f"{path}:{lineno}: bad cache record: {exc}") from exc
            if cache is None:
                cache = ContextCache(dim=dim)
            elif dim != cache.dim:
                raise VectorFormatError(
                    f"{path}:{lineno}: dim {dim} conflicts with {cache.dim}"
                )
            for pos, vec in enumerate(vectors):
                if len(vec) != dim:
                    raise VectorFormatError(
                        f"{path}:{lineno}: vector {pos} has length {len(vec)}, expected {dim}"
                    )
                key = (seq_id, side, pos)
                if key in cache.entries:
                    cache.duplicates += 1
                cache.entries[key] = np.asarray(vec, dtype=np.float64)
    return cache if cache is not None else ContextCache(dim=0)


def synthetic_embed(normalized: str, dim: int, seed: int) -> np.ndarray:
    """Deterministic unit vector for a normalized form.

    A pure function of (normalized, dim, seed), stable across processes and
    platforms; distinct strings give |cosine| well below 0.9 for dim >= 16
    with overwhelming probability.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    digest = hashlib.blake2b(
        f"{seed}\x1f{normalized}".encode("utf-8"), digest_size=8
    ).digest()
    rng = np.random.default_rng(int.from_bytes(digest, "big"))
    vec = rng.standard_normal(dim)
    norm = math.sqrt(float(vec @ vec))
    if norm == 0.0:  # pragma: no cover - probability zero
        vec[0] = 1.0
        norm = 1.0
    return vec / norm


def _unit(vec: np.ndarray) -> np.ndarray:
    norm = math.sqrt(float(vec @ vec))
    if norm == 0.0:
        return np.zeros_like(vec, dtype=np.float64)
    return np.asarray(vec, dtype=np.float64) / norm


def _provider_dim(provider, tokens: list[Token], attr: str) -> int:
    if provider is not None:
        return provider.dim
    for tok in tokens:
        row = getattr(tok, attr)
        if row is not None:
            return row.shape[0]
    return 0


def embed_sequence(
    provider: StaticTable | SyntheticEmbedder | ContextCache | None,
    tokens: list[Token],
    seq_id: str = "",
    attach: bool = False,
) -> np.ndarray:
    """Embed a token sequence: one L2-normalized row per token, zeros for OOV.

    Rows already attached to tokens are reused as-is (the carry-along rule),
    so a gloss moved between pairs re-embeds identically. Contextual lookups
    use each token's origin, not ``seq_id``, which only labels diagnostics.
    With ``attach`` the computed rows are stored on the tokens.
    """
    contextual = isinstance(provider, ContextCache)
    attr = "ctx_emb" if contextual else "static_emb"
    dim = _provider_dim(provider, tokens, attr)
    out = np.zeros((len(tokens), dim), dtype=np.float64)
    for i, tok in enumerate(tokens):
        cached = getattr(tok, attr)
        if cached is not None:
            out[i] = cached
            continue
        row = out[i]  # stays zero on any miss
        if tok.normalized and provider is not None:
            if contextual:
                vec = provider.lookup(tok.origin[0], tok.side, tok.origin[1])
                if vec is not None:
                    row = _unit(vec)
            elif isinstance(provider, SyntheticEmbedder):
                row = synthetic_embed(tok.normalized, provider.dim, provider.seed)
            else:
                vec = provider.entries.get(tok.normalized)
                if vec is not None:
                    row = _unit(vec)
        out[i] = row
        if attach:
            setattr(tok, attr, out[i].copy())
    return out


def attach_embeddings(corpus: Corpus, providers: Providers, cfg) -> Corpus:
    """Attach rows for every enabled channel to every token, once.

    ``cfg`` is the alignment config whose ``use_static``/``use_contextual``
    flags pick the channels. Tokens that already carry a row keep it.
    """
    for pair in corpus.pairs:
        for tokens in (pair.text, pair.glosses):
            if cfg.use_static:
                embed_sequence(providers.static, tokens, pair.id, attach=True)
            if cfg.use_contextual:
                embed_sequence(providers.contextual, tokens, pair.id, attach=True)
    return corpus
