"""BLEU-1 scoring of a gloss assignment against a reference corpus.

Corpus-level unigram BLEU with standard clipping and brevity penalty,
scaled to 0-100. Word order inside a pair does not matter (unigrams); the
brevity penalty only bites when the candidate is globally shorter than the
reference. Comparison is on case-folded surface forms, so corruption and
repair experiments round-trip through serialization unchanged.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus


@dataclass
class EvalResult:
    """bleu1 == 100 * brevity_penalty * unigram_precision at corpus level."""

    bleu1: float
    unigram_precision: float
    brevity_penalty: float
    exact_pair_match_rate: float

    def to_dict(self) -> dict:
        return {
            "bleu1": self.bleu1,
            "unigram_precision": self.unigram_precision,
            "brevity_penalty": self.brevity_penalty,
            "exact_pair_match_rate": self.exact_pair_match_rate,
        }


def _pair_stats(candidate, reference) -> tuple[int, int, int]:
    cand = [t.surface.lower() for t in candidate.glosses]
    ref = [t.surface.lower() for t in reference.glosses]
    ref_counts = Counter(ref)
    matches = sum(min(c, ref_counts[tok]) for tok, c in Counter(cand).items())
    return matches, len(cand), len(ref)


def _bleu1(matches: int, c: int, r: int) -> tuple[float, float, float]:
    """Returns (bleu1, precision, brevity_penalty) with empty-side conventions.

    An empty candidate scores precision 0 (or 1 against an empty reference)
    with the penalty pinned to 1 so it stays in (0, 1].
    """
    if c == 0:
        precision = 1.0 if r == 0 else 0.0
        bp = 1.0
    else:
        precision = matches / c
        bp = 1.0 if c >= r else math.exp(1.0 - r / c)
    return 100.0 * bp * precision, precision, bp


def bleu1_corpus(candidate: Corpus, reference: Corpus, level: str = "corpus") -> EvalResult:
    """Score a candidate gloss assignment against a reference, pair by index.

    ``level="corpus"`` (default) micro-averages: clipped matches and lengths
    are summed over pairs before the ratio. ``level="sentence"`` instead
    averages per-pair BLEU-1 scores; the bleu1/precision/penalty identity
    then no longer holds field-wise.
    """
    if level not in ("corpus", "sentence"):
        raise ValueError(f"level must be 'corpus' or 'sentence', got {level!r}")
    if len(candidate.pairs) != len(reference.pairs):
        raise ValueError(
            f"pair count mismatch: candidate has {len(candidate.pairs)}, "
            f"reference has {len(reference.pairs)}"
        )
    total_matches = 0
    total_c = 0
    total_r = 0
    exact = 0
    sentence_scores = []
    for cand_pair, ref_pair in zip(candidate.pairs, reference.pairs):
        matches, c, r = _pair_stats(cand_pair, ref_pair)
        total_matches += matches
        total_c += c
        total_r += r
        if [t.surface.lower() for t in cand_pair.glosses] == [
            t.surface.lower() for t in ref_pair.glosses
        ]:
            exact += 1
        if level == "sentence":
            sentence_scores.append(_bleu1(matches, c, r)[0])
    n = len(candidate.pairs)
    score, precision, bp = _bleu1(total_matches, total_c, total_r)
    if level == "sentence":
        score = sum(sentence_scores) / n if n else 100.0
    return EvalResult(
        bleu1=score,
        unigram_precision=precision,
        brevity_penalty=bp,
        exact_pair_match_rate=exact / n if n else 1.0,
    )


def emit_report(report, results: list[EvalResult], path: str | Path) -> None:
    """Write pass,direction,moves,bleu1 rows, one EvalResult per pass record."""
    records = report.records
    if len(results) != len(records):
        raise ValueError(
            f"{len(results)} results for {len(records)} pass records"
        )
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pass", "direction", "moves", "bleu1"])
        for rec, res in zip(records, results):
            writer.writerow(
                [rec.index, rec.direction, rec.boundary_moves, f"{res.bleu1:.6f}"]
            )


def dump_result_json(result: EvalResult, path: str | Path) -> None:
    """Serialize an EvalResult as deterministic JSON."""
    Path(path).write_text(
        json.dumps(result.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
