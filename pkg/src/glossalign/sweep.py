"""Auto-regressive alignment sweeps over the whole corpus.

Each pass walks the adjacent-pair boundaries in order (forward: left to
right, backward: right to left), re-splitting the concatenated glosses of
every pair at the best-scoring index. Every decision sees the corpus state
produced by the previous one, so a pass is strictly sequential; passes
alternate direction to cancel the positional bias of the greedy order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .align import AlignConfig, align, best_split, split_scores
from .corpus import Corpus
from .embeddings import Providers, attach_embeddings
from .evaluate import bleu1_corpus


@dataclass
class SweepConfig:
    max_passes: int = 8
    align_cfg: AlignConfig = field(default_factory=AlignConfig)
    stop_on_no_moves: bool = True

    def __post_init__(self) -> None:
        if self.max_passes < 1:
            raise ValueError(f"max_passes must be >= 1, got {self.max_passes}")


@dataclass
class PassRecord:
    """Statistics for one directional pass (index 0 is the baseline row)."""

    index: int
    direction: str  # "baseline" | "forward" | "backward"
    boundary_moves: int
    glosses_moved: int
    bleu1: float | None = None


@dataclass
class SweepReport:
    records: list[PassRecord] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        """True when the last real pass moved nothing."""
        real = [r for r in self.records if r.direction != "baseline"]
        return bool(real) and real[-1].boundary_moves == 0

    def to_csv(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["pass", "direction", "moves", "glosses_moved", "bleu1"])
            for rec in self.records:
                bleu = "" if rec.bleu1 is None else f"{rec.bleu1:.6f}"
                writer.writerow(
                    [rec.index, rec.direction, rec.boundary_moves, rec.glosses_moved, bleu]
                )


def realign_pair(
    corpus: Corpus, i: int, cfg: AlignConfig, providers: Providers | None = None
) -> int:
    """Re-split the concatenated glosses of pairs i and i+1; returns |k* - k|.

    The first k* glosses go to pair i, the rest to pair i+1; relative gloss
    order never changes. Tokens are expected to carry attached embeddings
    (see :func:`glossalign.embeddings.attach_embeddings`); otherwise
    ``providers`` supplies them per call.
    """
    if not 0 <= i < len(corpus.pairs) - 1:
        raise ValueError(f"pair index {i} out of range for {len(corpus.pairs)} pairs")
    left, right = corpus.pairs[i], corpus.pairs[i + 1]
    concat = left.glosses + right.glosses
    if not concat:
        return 0
    current_k = len(left.glosses)
    a_left = align(left.text, concat, providers, cfg, seq_id=left.id)
    a_right = align(right.text, concat, providers, cfg, seq_id=right.id)
    k = best_split(split_scores(a_left, a_right), current_k)
    if k != current_k:
        left.glosses = concat[:k]
        right.glosses = concat[k:]
    return abs(k - current_k)


def sweep_pass(
    corpus: Corpus,
    direction: str,
    cfg: AlignConfig,
    providers: Providers | None = None,
    index: int = 0,
) -> PassRecord:
    """One full pass over all adjacent boundaries; mutates the corpus."""
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    n = len(corpus.pairs)
    indices = range(n - 1) if direction == "forward" else range(n - 2, -1, -1)
    boundary_moves = 0
    glosses_moved = 0
    for i in indices:
        moved = realign_pair(corpus, i, cfg, providers)
        if moved:
            boundary_moves += 1
            glosses_moved += moved
    return PassRecord(index, direction, boundary_moves, glosses_moved)


def run_alignment(
    corpus: Corpus,
    providers: Providers | None,
    cfg: SweepConfig,
    reference: Corpus | None = None,
) -> tuple[Corpus, SweepReport]:
    """Alternate forward/backward passes until convergence or the pass cap.

    The input corpus is left untouched; embeddings are attached to the
    working copy up front and carried along for the whole run. With a
    reference, BLEU-1 is recorded after every pass and the index-0 record
    holds the un-aligned baseline.
    """
    work = corpus.clone()
    attach_embeddings(work, providers or Providers(), cfg.align_cfg)

    def score() -> float | None:
        if reference is None:
            return None
        return bleu1_corpus(work, reference).bleu1

    report = SweepReport([PassRecord(0, "baseline", 0, 0, score())])
    for p in range(1, cfg.max_passes + 1):
        direction = "forward" if p % 2 == 1 else "backward"
        rec = sweep_pass(work, direction, cfg.align_cfg, index=p)
        rec.bleu1 = score()
        report.records.append(rec)
        if cfg.stop_on_no_moves and rec.boundary_moves == 0:
            break
    return work, report
