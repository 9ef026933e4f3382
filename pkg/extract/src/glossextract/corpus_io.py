"""Minimal reader for the engine's JSONL corpus format.

Kept independent of the engine package on purpose: the corpus file layout
(one object per line with ``id``, ``text``, ``glosses``) is the interface.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path


@dataclass
class CorpusRecord:
    id: str
    text: list[str]
    glosses: list[str]


def read_corpus(path: str | Path) -> list[CorpusRecord]:
    """Read pairs in file order; tokens are whitespace-split surfaces."""
    path = Path(path)
    records: list[CorpusRecord] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            try:
                pair_id, text, glosses = rec["id"], rec["text"], rec["glosses"]
            except (TypeError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: missing field: {exc}") from exc
            if pair_id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate id {pair_id!r}")
            seen.add(pair_id)
            records.append(CorpusRecord(id=pair_id, text=text.split(), glosses=glosses.split()))
    return records


_MARKER_RE = re.compile(r"[*^]+$")
_VARIANT_RE = re.compile(r"(?<=[^\W\d_])\d[^\W_]*$")


def normalize(token: str, is_gloss: bool, strip_variants: bool = True) -> str:
    """The engine's documented lookup normalization: lowercase, and for
    glosses strip trailing variant annotations (digit suffixes, ``*`` ``^``)."""
    lowered = token.lower()
    if len(lowered) != len(token):
        lowered = "".join(c if len(c.lower()) != 1 else c.lower() for c in token)
    if is_gloss and strip_variants:
        lowered = _MARKER_RE.sub("", lowered)
        lowered = _VARIANT_RE.sub("", lowered)
    return lowered


def corpus_vocabulary(records: list[CorpusRecord], strip_variants: bool = True) -> set[str]:
    """Normalized lookup keys the engine will use for this corpus."""
    vocab: set[str] = set()
    for rec in records:
        for tok in rec.text:
            vocab.add(normalize(tok, is_gloss=False, strip_variants=strip_variants))
        for tok in rec.glosses:
            vocab.add(normalize(tok, is_gloss=True, strip_variants=strip_variants))
    vocab.discard("")
    return vocab
