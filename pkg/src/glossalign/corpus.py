"""Parallel text-gloss corpus model, serialization, and token normalization.

A corpus is an ordered list of pairs; each pair holds one spoken-language
sentence (word tokens, immutable under alignment) and the gloss sequence
currently assigned to it (gloss tokens, movable across neighbouring pairs).
Two on-disk formats are supported:

* JSONL: one object per line with fields ``id``, ``text``, ``glosses``
  (space-separated strings) and an optional ``meta`` object.
* TSV: ``id<TAB>text<TAB>glosses`` with an optional header line.

Loading never normalizes; call :func:`normalize_corpus` (or
:func:`normalize_token` per token) before embedding.
"""

from __future__ import annotations

import dataclasses
import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator

import numpy as np


class CorpusFormatError(ValueError):
    """Raised for malformed corpus files or unserializable corpora."""


class Side(str, Enum):
    """Which half of a pair a token belongs to; values match the wire format."""

    WORD = "text"
    GLOSS = "gloss"


@dataclass(eq=False)
class Token:
    """One word or gloss occurrence.

    ``origin`` records (sequence id, position) at creation time and is the
    key used for contextual-embedding lookups; it never changes when the
    token is moved between pairs, so attached embeddings travel with it.
    """

    surface: str
    side: Side
    normalized: str = ""
    static_emb: np.ndarray | None = None
    ctx_emb: np.ndarray | None = None
    origin: tuple[str, int] = ("", -1)

    def copy(self) -> "Token":
        # Embedding rows are shared, never mutated in place.
        return dataclasses.replace(self)


@dataclass(eq=False)
class Pair:
    """One subtitle sentence plus its currently assigned gloss sequence."""

    id: str
    text: list[Token]
    glosses: list[Token]
    meta: dict | None = None

    def copy(self) -> "Pair":
        return Pair(
            id=self.id,
            text=[t.copy() for t in self.text],
            glosses=[t.copy() for t in self.glosses],
            meta=dict(self.meta) if self.meta is not None else None,
        )


@dataclass(eq=False)
class Corpus:
    """Ordered pairs; pair order and the global gloss order are invariants."""

    pairs: list[Pair] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    def clone(self) -> "Corpus":
        return Corpus([p.copy() for p in self.pairs])

    def gloss_tokens(self) -> list[Token]:
        """All gloss tokens in corpus order (the global order invariant)."""
        return [t for p in self.pairs for t in p.glosses]


@dataclass(frozen=True)
class NormalizationConfig:
    """Token normalization knobs.

    ``strip_variant_markers`` removes trailing gloss variant annotations
    (digit suffixes like "1A" and the markers ``*`` ``^``); enable for
    German-style gloss labels, disable for plain English spottings.
    """

    strip_variant_markers: bool = True


DEFAULT_NORMALIZATION = NormalizationConfig()

_MARKER_RE = re.compile(r"[*^]+$")
# A digit run preceded by a letter, followed only by letters/digits to the end.
_VARIANT_RE = re.compile(r"(?<=[^\W\d_])\d[^\W_]*$")


def normalize_token(
    surface: str, side: Side, cfg: NormalizationConfig = DEFAULT_NORMALIZATION
) -> str:
    """Lowercase a surface form; optionally strip gloss variant annotations.

    Total and idempotent; never returns a string longer than the input
    (pathological one-to-many lowercasings are left as-is). An all-marker
    gloss normalizes to the empty string, which embeds to a zero row.
    """
    lowered = surface.lower()
    if len(lowered) != len(surface):
        # one-to-many lowercasings ('İ'): fold per character instead
        lowered = "".join(c if len(c.lower()) != 1 else c.lower() for c in surface)
    if side is Side.GLOSS and cfg.strip_variant_markers:
        lowered = _MARKER_RE.sub("", lowered)
        lowered = _VARIANT_RE.sub("", lowered)
    return lowered


def normalize_corpus(
    corpus: Corpus, cfg: NormalizationConfig = DEFAULT_NORMALIZATION
) -> Corpus:
    """Fill the ``normalized`` field of every token in place; returns corpus."""
    for pair in corpus.pairs:
        for tok in pair.text:
            tok.normalized = normalize_token(tok.surface, Side.WORD, cfg)
        for tok in pair.glosses:
            tok.normalized = normalize_token(tok.surface, Side.GLOSS, cfg)
    return corpus


def split_compounds(token: str, lexicon: set[str], min_part_len: int = 4) -> list[str]:
    """Greedy longest-match decomposition of a compound over a lexicon.

    Every part must be in ``lexicon`` and at least ``min_part_len`` long;
    a single linking character may be consumed between adjacent parts
    (e.g. the "s" in "bahnhofshalle" -> ["bahnhof", "halle"]). Returns
    ``[token]`` when no full decomposition exists.
    """
    if min_part_len < 1:
        raise ValueError(f"min_part_len must be >= 1, got {min_part_len}")
    memo: dict[str, list[str] | None] = {}

    def decompose(s: str) -> list[str] | None:
        if s == "":
            return []
        if s in memo:
            return memo[s]
        result = None
        for plen in range(len(s), min_part_len - 1, -1):
            part = s[:plen]
            if part not in lexicon:
                continue
            rest = s[plen:]
            sub = decompose(rest)
            if sub is None and len(rest) >= 2:
                sub = decompose(rest[1:])
            if sub is not None:
                result = [part] + sub
                break
        memo[s] = result
        return result

    parts = decompose(token)
    return parts if parts else [token]


def split_corpus_compounds(
    corpus: Corpus, lexicon: set[str], min_part_len: int = 4
) -> Corpus:
    """Replace compound gloss tokens with their parts (new corpus).

    Operates on normalized forms (falling back to lowercased surfaces);
    origins are re-derived, so run this before extracting or attaching
    embeddings. Text tokens are untouched.
    """
    out = corpus.clone()
    for pair in out.pairs:
        new_glosses: list[Token] = []
        for tok in pair.glosses:
            key = tok.normalized or tok.surface.lower()
            parts = split_compounds(key, lexicon, min_part_len)
            if len(parts) == 1:
                new_glosses.append(tok)
            else:
                for part in parts:
                    new_glosses.append(Token(surface=part, side=Side.GLOSS, normalized=part))
        for pos, tok in enumerate(new_glosses):
            tok.origin = (pair.id, pos)
        pair.glosses = new_glosses
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

_TSV_HEADER = "id\ttext\tglosses"


def _make_pair(pair_id: str, text: str, glosses: str, meta: dict | None) -> Pair:
    words = [
        Token(surface=s, side=Side.WORD, origin=(pair_id, i))
        for i, s in enumerate(text.split())
    ]
    gloss_toks = [
        Token(surface=s, side=Side.GLOSS, origin=(pair_id, i))
        for i, s in enumerate(glosses.split())
    ]
    return Pair(id=pair_id, text=words, glosses=gloss_toks, meta=meta)


def load_corpus(path: str | Path, format: str = "jsonl") -> Corpus:
    """Load a corpus file; tokens are whitespace-split and not yet normalized."""
    path = Path(path)
    if format not in ("jsonl", "tsv"):
        raise ValueError(f"unknown corpus format {format!r}")
    pairs: list[Pair] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if format == "jsonl":
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusFormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
                if not isinstance(rec, dict):
                    raise CorpusFormatError(f"{path}:{lineno}: record is not an object")
                missing = [k for k in ("id", "text", "glosses") if k not in rec]
                if missing:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: missing field(s) {', '.join(missing)}"
                    )
                pair_id, text, glosses = rec["id"], rec["text"], rec["glosses"]
                if not all(isinstance(v, str) for v in (pair_id, text, glosses)):
                    raise CorpusFormatError(
                        f"{path}:{lineno}: id/text/glosses must be strings"
                    )
                meta = rec.get("meta")
                if meta is not None and not isinstance(meta, dict):
                    raise CorpusFormatError(f"{path}:{lineno}: meta must be an object")
            else:
                if lineno == 1 and line == _TSV_HEADER:
                    continue
                if not line.strip():
                    continue
                cols = line.split("\t")
                if len(cols) != 3:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: expected 3 tab-separated columns, got {len(cols)}"
                    )
                pair_id, text, glosses = cols
                meta = None
            if pair_id in seen:
                raise CorpusFormatError(f"{path}:{lineno}: duplicate pair id {pair_id!r}")
            seen.add(pair_id)
            pairs.append(_make_pair(pair_id, text, glosses, meta))
    return Corpus(pairs)


def write_corpus(corpus: Corpus, path: str | Path, format: str = "jsonl") -> None:
    """Write a corpus; embeddings are never serialized. TSV drops meta."""
    path = Path(path)
    if format not in ("jsonl", "tsv"):
        raise ValueError(f"unknown corpus format {format!r}")
    lines: list[str] = []
    if format == "tsv":
        lines.append(_TSV_HEADER)
    for pair in corpus.pairs:
        text = " ".join(t.surface for t in pair.text)
        glosses = " ".join(t.surface for t in pair.glosses)
        if format == "jsonl":
            rec: dict = {"id": pair.id, "text": text, "glosses": glosses}
            if pair.meta is not None:
                rec["meta"] = pair.meta
            lines.append(json.dumps(rec, ensure_ascii=False))
        else:
            fields = (pair.id, text, glosses)
            if any("\t" in f or "\n" in f for f in fields):
                raise CorpusFormatError(
                    f"pair {pair.id!r}: tabs/newlines cannot be serialized as TSV"
                )
            lines.append("\t".join(fields))
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
