"""Contextual embedding extraction: one vector per word, cache-format out.

For every sequence (sentence words, or the gloss sequence fed as its own
sentence) the transformer runs over the full sequence once; each word's
vector is the arithmetic mean of its wordpiece vectors from the selected
hidden layer (default: the last one). Records conform to the engine's
cache format: {"id", "side", "dim", "vectors"}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus_io import read_corpus


@dataclass
class ExtractConfig:
    model: str
    corpus: str | Path
    out: str | Path
    layer: int = -1  # index into hidden_states; -1 = last hidden layer
    side: str = "both"  # text | gloss | both
    device: str = "cpu"

    def __post_init__(self) -> None:
        if self.side not in ("text", "gloss", "both"):
            raise ValueError(f"side must be text, gloss or both, got {self.side!r}")


def pool_word_vectors(
    pieces: np.ndarray, word_ids: list[int | None], n_words: int, seq_id: str
) -> np.ndarray:
    """Mean-pool piece vectors per word; every word must own >= 1 piece.

    ``pieces`` is (P, D) over all encoder positions including specials;
    ``word_ids[p]`` names the word of position p (None for specials).
    """
    dim = pieces.shape[1]
    out = np.zeros((n_words, dim), dtype=np.float64)
    counts = np.zeros(n_words, dtype=np.int64)
    for pos, widx in enumerate(word_ids):
        if widx is None:
            continue
        if widx >= n_words:
            raise ValueError(
                f"sequence {seq_id!r}: tokenizer produced word index {widx} "
                f"for {n_words} words"
            )
        out[widx] += pieces[pos]
        counts[widx] += 1
    missing = np.flatnonzero(counts == 0)
    if missing.size:
        raise ValueError(
            f"sequence {seq_id!r}: word(s) {missing.tolist()} tokenized to zero pieces"
        )
    return out / counts[:, None]


def _load_model(cfg: ExtractConfig):
    import torch
    from transformers import AutoModel, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(cfg.model)
    if not tokenizer.is_fast:
        raise ValueError(f"model {cfg.model!r} has no fast tokenizer (word_ids needed)")
    model = AutoModel.from_pretrained(cfg.model)
    model.eval()
    model.to(cfg.device)
    return torch.no_grad, tokenizer, model


def _embed_words(tokenizer, model, words: list[str], layer: int, seq_id: str, device: str) -> np.ndarray:
    enc = tokenizer(words, is_split_into_words=True, return_tensors="pt").to(device)
    out = model(**enc, output_hidden_states=True)
    hidden = out.hidden_states[layer][0].detach().cpu().numpy()
    return pool_word_vectors(hidden, enc.word_ids(0), len(words), seq_id)


def extract_contextual(cfg: ExtractConfig) -> Path:
    """Run the model over a corpus and write the cache JSONL; returns its path."""
    no_grad, tokenizer, model = _load_model(cfg)
    records = read_corpus(cfg.corpus)
    n_layers = model.config.num_hidden_layers + 1  # embeddings + encoder layers
    if not -n_layers <= cfg.layer < n_layers:
        raise ValueError(f"layer {cfg.layer} out of range for {n_layers} hidden states")
    dim = model.config.hidden_size
    sides = ("text", "gloss") if cfg.side == "both" else (cfg.side,)
    out_path = Path(cfg.out)
    with out_path.open("w", encoding="utf-8") as fh, no_grad():
        for rec in records:
            for side in sides:
                words = rec.text if side == "text" else rec.glosses
                if words:
                    vectors = _embed_words(tokenizer, model, words, cfg.layer, rec.id, cfg.device)
                    vec_lists = [[float(v) for v in row] for row in vectors]
                else:
                    vec_lists = []
                fh.write(
                    json.dumps(
                        {"id": rec.id, "side": side, "dim": dim, "vectors": vec_lists}
                    )
                    + "\n"
                )
    return out_path
