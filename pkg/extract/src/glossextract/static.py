"""Filter a large static vector file down to a corpus vocabulary.

Kept lines are copied verbatim (bit-compatible vectors); only the header
count changes. Vocabulary words absent from the vector file go to an
optional sidecar report, one word per line.
"""

from __future__ import annotations

from pathlib import Path

from .corpus_io import corpus_vocabulary, read_corpus


def export_static(
    corpus_path: str | Path,
    vectors_path: str | Path,
    out_path: str | Path,
    oov_report: str | Path | None = None,
    strip_variants: bool = True,
) -> Path:
    """Write the subset of ``vectors_path`` covering the corpus vocabulary."""
    vocab = corpus_vocabulary(read_corpus(corpus_path), strip_variants=strip_variants)
    vectors_path = Path(vectors_path)
    kept: list[str] = []
    found: set[str] = set()
    with vectors_path.open(encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{vectors_path}:1: expected header '<count> <dim>'")
        try:
            dim = int(header[1])
        except ValueError as exc:
            raise ValueError(f"{vectors_path}:1: non-integer header") from exc
        for lineno, line in enumerate(fh, start=2):
            stripped = line.rstrip("\n")
            if not stripped.strip():
                continue
            cols = [c for c in stripped.split(" ") if c]
            if len(cols) - 1 != dim:
                raise ValueError(
                    f"{vectors_path}:{lineno}: expected {dim} floats, got {len(cols) - 1}"
                )
            word = cols[0]
            if word in vocab and word not in found:
                kept.append(stripped)
                found.add(word)
    out_path = Path(out_path)
    out_path.write_text(
        f"{len(kept)} {dim}\n" + "".join(line + "\n" for line in kept),
        encoding="utf-8",
    )
    if oov_report is not None:
        missing = sorted(vocab - found)
        Path(oov_report).write_text(
            "".join(w + "\n" for w in missing), encoding="utf-8"
        )
    return out_path
