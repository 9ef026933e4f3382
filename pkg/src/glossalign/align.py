"""Alignment-matrix computation and split-point scoring for adjacent pairs.

The G x W alignment matrix between a gloss sequence and a sentence is the
sum of two channels: contextual similarities taken as-is and static
similarities filtered so only strong connections (>= alpha) contribute.
Splitting a concatenated gloss sequence back into two sentences scores
every boundary index k by summing each gloss's best word similarity
against the sentence it would land in, then takes the argmax.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .corpus import Token
from .embeddings import Providers, embed_sequence


@dataclass
class AlignConfig:
    """Channel selection and the static-channel filter.

    ``filter_mode="threshold"`` (default) keeps static similarities only at
    or above ``alpha``; ``"scale"`` multiplies the static channel by
    ``alpha`` instead, performing no filtering.
    """

    alpha: float = 0.9
    use_static: bool = True
    use_contextual: bool = False
    filter_mode: str = "threshold"

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.filter_mode not in ("threshold", "scale"):
            raise ValueError(f"filter_mode must be 'threshold' or 'scale', got {self.filter_mode!r}")
        if not (self.use_static or self.use_contextual):
            raise ValueError("at least one of use_static/use_contextual must be enabled")


@dataclass
class SplitCurve:
    """Scores over all split indices k in [0, G]; length is always G + 1."""

    scores: np.ndarray
    chosen_k: int | None = None


def similarity_matrix(y_emb: np.ndarray, x_emb: np.ndarray) -> np.ndarray:
    """All pairwise row dot products: scores[g, w] = y_emb[g] . x_emb[w].

    With unit-or-zero rows every entry is a cosine in [-1, 1]; zero (OOV)
    rows produce all-zero rows/columns.
    """
    y_emb = np.asarray(y_emb, dtype=np.float64)
    x_emb = np.asarray(x_emb, dtype=np.float64)
    if y_emb.shape[0] == 0 or x_emb.shape[0] == 0:
        return np.zeros((y_emb.shape[0], x_emb.shape[0]), dtype=np.float64)
    if y_emb.shape[1] != x_emb.shape[1]:
        raise ValueError(
            f"embedding dim mismatch: {y_emb.shape[1]} vs {x_emb.shape[1]}"
        )
    return y_emb @ x_emb.T


def combine_alignments(
    a_bert: np.ndarray | None, a_vec: np.ndarray | None, cfg: AlignConfig
) -> np.ndarray:
    """Join the contextual and static channels under the configured filter.

    Either channel may be None (single-channel configuration); the static
    channel always goes through the filter.
    """
    if a_bert is None and a_vec is None:
        raise ValueError("no alignment channel given")
    if a_bert is not None and a_vec is not None and a_bert.shape != a_vec.shape:
        raise ValueError(f"shape mismatch: {a_bert.shape} vs {a_vec.shape}")
    if a_vec is None:
        return np.array(a_bert, dtype=np.float64, copy=True)
    a_vec = np.asarray(a_vec, dtype=np.float64)
    if cfg.filter_mode == "scale":
        scaled = cfg.alpha * a_vec
        return scaled if a_bert is None else a_bert + scaled
    if a_bert is None:
        return np.where(a_vec >= cfg.alpha, a_vec, 0.0)
    return kernels.threshold_combine(a_bert, a_vec, cfg.alpha)


def align(
    text: list[Token],
    glosses: list[Token],
    providers: Providers | None,
    cfg: AlignConfig,
    seq_id: str = "",
) -> np.ndarray:
    """Full G x W alignment between a sentence and a gloss sequence.

    Composition of embedding, per-channel similarity, and channel
    combination. Empty sequences yield an empty matrix.
    """
    providers = providers or Providers()
    a_vec = None
    a_bert = None
    if cfg.use_static:
        y = embed_sequence(providers.static, glosses, seq_id)
        x = embed_sequence(providers.static, text, seq_id)
        a_vec = similarity_matrix(y, x)
    if cfg.use_contextual:
        y = embed_sequence(providers.contextual, glosses, seq_id)
        x = embed_sequence(providers.contextual, text, seq_id)
        a_bert = similarity_matrix(y, x)
    return combine_alignments(a_bert, a_vec, cfg)


def split_scores(a_left: np.ndarray, a_right: np.ndarray) -> SplitCurve:
    """Score every split of the concatenated glosses between two sentences.

    ``a_left``/``a_right`` align the same G_total glosses against the left
    and right sentence respectively (their word counts may differ). For
    each k, the first k glosses contribute their best similarity in
    ``a_left`` and the rest their best in ``a_right``; empty sums and
    maxima over an empty word axis are 0.
    """
    a_left = np.asarray(a_left, dtype=np.float64)
    a_right = np.asarray(a_right, dtype=np.float64)
    if a_left.shape[0] != a_right.shape[0]:
        raise ValueError(
            f"gloss row count mismatch: {a_left.shape[0]} vs {a_right.shape[0]}"
        )
    max_left = kernels.row_max(a_left)
    max_right = kernels.row_max(a_right)
    return SplitCurve(scores=kernels.split_curve(max_left, max_right))


def best_split(curve: SplitCurve, current_k: int) -> int:
    """Argmax split index; ties prefer the current boundary, then smaller k."""
    n = curve.scores.shape[0]
    if not 0 <= current_k < n:
        raise ValueError(f"current_k {current_k} out of range [0, {n - 1}]")
    k = kernels.argmax_near(curve.scores, current_k)
    curve.chosen_k = k
    return k


def dump_matrix_csv(
    matrix: np.ndarray,
    gloss_labels: list[str],
    path: str | Path,
    word_labels: list[str] | None = None,
) -> None:
    """Debug dump of an alignment matrix: gloss label then W score columns."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if len(gloss_labels) != matrix.shape[0]:
        raise ValueError(
            f"{len(gloss_labels)} labels for {matrix.shape[0]} matrix rows"
        )
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if word_labels is not None:
            if len(word_labels) != matrix.shape[1]:
                raise ValueError(
                    f"{len(word_labels)} word labels for {matrix.shape[1]} columns"
                )
            writer.writerow(["gloss"] + list(word_labels))
        for label, row in zip(gloss_labels, matrix):
            writer.writerow([label] + [f"{v:.6f}" for v in row])
