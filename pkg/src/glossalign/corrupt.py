"""Seeded corruption simulators for alignment experiments.

Two error modes: a whole-corpus offset (every gloss sequence shifted to
the following pair, worst-case total misalignment) and per-pair boundary
drift (up to three glosses shifted to the previous or next pair under
fixed probabilities). Both conserve pair count, text tokens, and the
global concatenated gloss order, and are deterministic given a seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus

# Event table: (direction, count). Probabilities per draw, in this order:
# none, then +/-1, +/-2, +/-3.
_EVENTS: list[tuple[str, int]] = [
    ("none", 0),
    ("prev", 1),
    ("next", 1),
    ("prev", 2),
    ("next", 2),
    ("prev", 3),
    ("next", 3),
]


@dataclass(frozen=True)
class CorruptionSpec:
    """Per-pair shift distribution; defaults follow the boundary-drift setup.

    ``p_move[k]`` is the probability of shifting k glosses in one given
    direction, so the total mass is 2 * sum(p_move.values()) + p_none = 1.
    """

    seed: int
    p_move: dict[int, float] = field(
        default_factory=lambda: {1: 0.15, 2: 0.20, 3: 0.10}
    )
    p_none: float = 0.10
    max_shift: int = 3

    def __post_init__(self) -> None:
        if set(self.p_move) != set(range(1, self.max_shift + 1)):
            raise ValueError(f"p_move must cover shifts 1..{self.max_shift}")
        total = 2.0 * sum(self.p_move.values()) + self.p_none
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities must sum to 1, got {total}")

    def event_probs(self) -> np.ndarray:
        return np.array(
            [self.p_none]
            + [self.p_move[k] for k in (1, 1, 2, 2, 3, 3)],
            dtype=np.float64,
        )


@dataclass
class CorruptionLog:
    """What happened to each pair, plus direction totals of moved glosses."""

    events: list[dict] = field(default_factory=list)
    moved_to_previous: int = 0
    moved_to_next: int = 0

    def to_json(self, path: str | Path) -> None:
        payload = {
            "moved_to_previous": self.moved_to_previous,
            "moved_to_next": self.moved_to_next,
            "events": self.events,
        }
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )


def offset_by_one(corpus: Corpus) -> Corpus:
    """Shift every gloss sequence to the next pair (new corpus).

    The first pair gets an empty gloss list and the last pair's original
    glosses are discarded, keeping N constant. Text is unchanged.
    """
    out = corpus.clone()
    gloss_lists = [p.glosses for p in out.pairs]
    for i, pair in enumerate(out.pairs):
        pair.glosses = gloss_lists[i - 1] if i > 0 else []
    return out


def gloss_misalign(corpus: Corpus, spec: CorruptionSpec) -> tuple[Corpus, CorruptionLog]:
    """Shift up to ``max_shift`` boundary glosses per pair (new corpus + log).

    One event is drawn per pair against the original corpus, then moves are
    applied in pair order: a "prev" move sends the pair's leading glosses
    to the end of the previous pair, a "next" move sends its trailing
    glosses to the front of the next pair. A pair that currently has fewer
    glosses than the drawn count, or whose target neighbour does not
    exist, is left unaltered and logged as skipped.
    """
    out = corpus.clone()
    rng = np.random.default_rng(spec.seed)
    n = len(out.pairs)
    log = CorruptionLog()
    if n == 0:
        return out, log
    draws = rng.choice(len(_EVENTS), size=n, p=spec.event_probs())
    for i, draw in enumerate(draws):
        direction, count = _EVENTS[int(draw)]
        pair = out.pairs[i]
        entry = {
            "pair": pair.id,
            "index": i,
            "direction": direction,
            "count": count,
            "applied": False,
        }
        if direction == "none":
            entry["applied"] = True
            log.events.append(entry)
            continue
        neighbour = i - 1 if direction == "prev" else i + 1
        if 0 <= neighbour < n and len(pair.glosses) >= count:
            if direction == "prev":
                moved, pair.glosses = pair.glosses[:count], pair.glosses[count:]
                out.pairs[neighbour].glosses.extend(moved)
                log.moved_to_previous += count
            else:
                pair.glosses, moved = pair.glosses[:-count], pair.glosses[-count:]
                out.pairs[neighbour].glosses[:0] = moved
                log.moved_to_next += count
            entry["applied"] = True
        log.events.append(entry)
    return out, log
