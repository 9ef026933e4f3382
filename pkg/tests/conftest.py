"""Shared fixtures: corpus builders and an independent BLEU-1 reference."""

from __future__ import annotations

import math
import string
from pathlib import Path

import numpy as np
import pytest

from glossalign import Corpus, Side, normalize_corpus
from glossalign.corpus import Pair, Token

REPO_ROOT = Path(__file__).resolve().parents[1]
DEMO_CORPUS = REPO_ROOT / "data" / "demo.jsonl"


@pytest.fixture
def demo_path() -> Path:
    return DEMO_CORPUS


def make_pair(pair_id: str, text: str, glosses: str, meta: dict | None = None) -> Pair:
    words = [
        Token(surface=s, side=Side.WORD, origin=(pair_id, i))
        for i, s in enumerate(text.split())
    ]
    gloss_toks = [
        Token(surface=s, side=Side.GLOSS, origin=(pair_id, i))
        for i, s in enumerate(glosses.split())
    ]
    return Pair(id=pair_id, text=words, glosses=gloss_toks, meta=meta)


def make_corpus(rows: list[tuple[str, str]], normalized: bool = True) -> Corpus:
    corpus = Corpus([make_pair(f"p{i}", text, glosses) for i, (text, glosses) in enumerate(rows)])
    return normalize_corpus(corpus) if normalized else corpus


def _alpha_word(i: int, j: int) -> str:
    # Letter-only unique word per (pair, slot); immune to variant stripping.
    s = ""
    n = i
    for _ in range(4):
        s += string.ascii_lowercase[n % 26]
        n //= 26
    return f"w{s}{string.ascii_lowercase[j]}"


def build_synthetic_corpus(
    n_pairs: int, seed: int, min_words: int = 3, max_words: int = 6
) -> Corpus:
    """Disjoint per-pair vocabularies; glosses share the words' normalized forms."""
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(n_pairs):
        m = int(rng.integers(min_words, max_words + 1))
        words = [_alpha_word(i, j) for j in range(m)]
        rows.append((" ".join(words), " ".join(w.upper() for w in words)))
    return make_corpus(rows)


def random_corpus(rng: np.random.Generator, max_pairs: int = 8, vocab_size: int = 12) -> Corpus:
    """Small random corpus with overlapping vocabulary across pairs."""
    vocab = [f"{a}{b}" for a in string.ascii_lowercase[:vocab_size] for b in "aeiou"]
    n = int(rng.integers(1, max_pairs + 1))
    rows = []
    for _ in range(n):
        w = int(rng.integers(0, 6))
        g = int(rng.integers(0, 6))
        text = " ".join(vocab[int(k)] for k in rng.integers(0, len(vocab), w))
        glosses = " ".join(vocab[int(k)].upper() for k in rng.integers(0, len(vocab), g))
        rows.append((text, glosses))
    return make_corpus(rows)


def gloss_signature(corpus: Corpus) -> list[tuple[str, tuple[str, int]]]:
    """Global concatenated gloss order as comparable (surface, origin) tuples."""
    return [(t.surface, t.origin) for t in corpus.gloss_tokens()]


def text_signature(corpus: Corpus) -> list[tuple[str, ...]]:
    return [tuple(t.surface for t in p.text) for p in corpus.pairs]


def naive_bleu1(candidate: Corpus, reference: Corpus) -> float:
    """Straight-line corpus BLEU-1: clipped counts, lengths, brevity penalty."""
    matches = 0
    c = 0
    r = 0
    for cand_pair, ref_pair in zip(candidate.pairs, reference.pairs):
        cand = [t.surface.lower() for t in cand_pair.glosses]
        ref = [t.surface.lower() for t in ref_pair.glosses]
        c += len(cand)
        r += len(ref)
        for tok in set(cand):
            matches += min(cand.count(tok), ref.count(tok))
    if c == 0:
        return 100.0 if r == 0 else 0.0
    precision = matches / c
    bp = 1.0 if c >= r else math.exp(1.0 - r / c)
    return 100.0 * bp * precision
