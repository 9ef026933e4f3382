"""Command-line interface: align, corrupt, and eval subcommands.

Exit codes: 0 success, 1 runtime failure (message on stderr), 2 invalid
flags. Seeds are always explicit flags, never defaulted from the clock, so
every invocation is reproducible; ``align`` writes a JSON manifest next to
the output corpus capturing everything needed to re-run it bit-for-bit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .align import AlignConfig
from .corpus import load_corpus, normalize_corpus, write_corpus
from .corrupt import CorruptionSpec, gloss_misalign, offset_by_one
from .embeddings import (
    Providers,
    SyntheticEmbedder,
    load_contextual_cache,
    load_static_vectors,
)
from .evaluate import bleu1_corpus, dump_result_json
from .sweep import SweepConfig, run_alignment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glossalign",
        description="Re-align sign-language gloss sequences to subtitle sentences.",
    )
    parser.add_argument("--version", action="version", version=f"glossalign {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_align = sub.add_parser("align", help="run alignment sweeps over a corpus")
    p_align.add_argument("--corpus", required=True, type=Path)
    p_align.add_argument("--out", required=True, type=Path)
    p_align.add_argument("--static-vecs", type=Path, help="static word-vector file")
    p_align.add_argument("--ctx-cache", type=Path, help="contextual embedding cache (JSONL)")
    p_align.add_argument("--synthetic-dim", type=int, help="use synthetic embeddings of this dim")
    p_align.add_argument("--seed", type=int, help="seed for synthetic embeddings")
    p_align.add_argument("--alpha", type=float, default=0.9)
    p_align.add_argument("--max-passes", type=int, default=8)
    p_align.add_argument("--reference", type=Path, help="ground-truth corpus for per-pass BLEU-1")
    p_align.add_argument("--report", type=Path, help="per-pass CSV output")
    p_align.add_argument("--filter-mode", choices=["threshold", "scale"], default="threshold")

    p_corrupt = sub.add_parser("corrupt", help="apply a seeded corruption to a corpus")
    p_corrupt.add_argument("--corpus", required=True, type=Path)
    p_corrupt.add_argument("--out", required=True, type=Path)
    p_corrupt.add_argument("--mode", choices=["offset", "gloss"], required=True)
    p_corrupt.add_argument("--seed", type=int)
    p_corrupt.add_argument("--log", type=Path, help="JSON corruption log output")

    p_eval = sub.add_parser("eval", help="BLEU-1 of a candidate against a reference")
    p_eval.add_argument("--candidate", required=True, type=Path)
    p_eval.add_argument("--reference", required=True, type=Path)
    p_eval.add_argument("--json", type=Path, help="JSON result dump")
    return parser


def _atomic_write_json(payload: dict, path: Path) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_align(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if not 0.0 <= args.alpha <= 1.0:
        parser.error(f"--alpha must be in [0, 1], got {args.alpha}")
    if args.max_passes < 1:
        parser.error(f"--max-passes must be >= 1, got {args.max_passes}")
    if args.static_vecs is None and args.ctx_cache is None and args.synthetic_dim is None:
        parser.error("need an embedding source: --static-vecs, --ctx-cache or --synthetic-dim")
    if args.synthetic_dim is not None:
        if args.static_vecs is not None:
            parser.error("--synthetic-dim and --static-vecs are mutually exclusive")
        if args.synthetic_dim < 2:
            parser.error(f"--synthetic-dim must be >= 2, got {args.synthetic_dim}")
        if args.seed is None:
            parser.error("--synthetic-dim requires --seed")

    corpus = normalize_corpus(load_corpus(args.corpus))
    reference = (
        normalize_corpus(load_corpus(args.reference)) if args.reference is not None else None
    )
    static = None
    if args.static_vecs is not None:
        static = load_static_vectors(args.static_vecs)
    elif args.synthetic_dim is not None:
        static = SyntheticEmbedder(dim=args.synthetic_dim, seed=args.seed)
    contextual = load_contextual_cache(args.ctx_cache) if args.ctx_cache is not None else None
    providers = Providers(static=static, contextual=contextual)
    align_cfg = AlignConfig(
        alpha=args.alpha,
        use_static=static is not None,
        use_contextual=contextual is not None,
        filter_mode=args.filter_mode,
    )
    sweep_cfg = SweepConfig(max_passes=args.max_passes, align_cfg=align_cfg)

    aligned, report = run_alignment(corpus, providers, sweep_cfg, reference)
    write_corpus(aligned, args.out)
    if args.report is not None:
        report.to_csv(args.report)
    manifest = {
        "tool": "glossalign",
        "version": __version__,
        "command": "align",
        "inputs": {
            "corpus": str(args.corpus),
            "static_vecs": str(args.static_vecs) if args.static_vecs else None,
            "ctx_cache": str(args.ctx_cache) if args.ctx_cache else None,
            "reference": str(args.reference) if args.reference else None,
        },
        "params": {
            "alpha": args.alpha,
            "max_passes": args.max_passes,
            "filter_mode": args.filter_mode,
            "synthetic_dim": args.synthetic_dim,
            "seed": args.seed,
        },
        "outputs": {
            "corpus": str(args.out),
            "report": str(args.report) if args.report else None,
        },
        "passes": [
            {
                "pass": r.index,
                "direction": r.direction,
                "moves": r.boundary_moves,
                "glosses_moved": r.glosses_moved,
                "bleu1": r.bleu1,
            }
            for r in report.records
        ],
    }
    _atomic_write_json(manifest, Path(str(args.out) + ".manifest.json"))
    last = report.records[-1]
    print(
        f"aligned {len(aligned.pairs)} pairs in {last.index} pass(es); "
        f"converged={report.converged}"
    )
    return 0


def cmd_corrupt(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.mode == "gloss" and args.seed is None:
        parser.error("--mode gloss requires --seed")
    corpus = load_corpus(args.corpus)
    if args.mode == "offset":
        corrupted = offset_by_one(corpus)
        log_payload = {"mode": "offset", "pairs": len(corpus.pairs)}
        if args.log is not None:
            _atomic_write_json(log_payload, args.log)
    else:
        corrupted, log = gloss_misalign(corpus, CorruptionSpec(seed=args.seed))
        if args.log is not None:
            log.to_json(args.log)
    write_corpus(corrupted, args.out)
    print(f"wrote {len(corrupted.pairs)} pairs to {args.out}")
    return 0


def cmd_eval(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    candidate = load_corpus(args.candidate)
    reference = load_corpus(args.reference)
    result = bleu1_corpus(candidate, reference)
    print(f"{result.bleu1:.2f}")
    if args.json is not None:
        dump_result_json(result, args.json)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {"align": cmd_align, "corrupt": cmd_corrupt, "eval": cmd_eval}[args.command]
        return handler(args, parser)
    except SystemExit as exc:  # argparse validation
        return int(exc.code) if exc.code is not None else 0
    except (OSError, ValueError) as exc:
        print(f"glossalign: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:  # console-script wrapper
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
