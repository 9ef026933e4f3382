"""Command line for the extractor: contextual and static subcommands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .contextual import ExtractConfig, extract_contextual
from .static import export_static


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glossextract",
        description="Produce embedding files for the gloss alignment engine.",
    )
    parser.add_argument("--version", action="version", version=f"glossextract {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ctx = sub.add_parser("contextual", help="write a contextual embedding cache")
    p_ctx.add_argument("--corpus", required=True, type=Path)
    p_ctx.add_argument("--model", required=True, help="model identifier or local path")
    p_ctx.add_argument("--out", required=True, type=Path)
    p_ctx.add_argument("--layer", type=int, default=-1, help="hidden-state index (default: last)")
    p_ctx.add_argument("--side", choices=["text", "gloss", "both"], default="both")
    p_ctx.add_argument("--device", default="cpu")

    p_static = sub.add_parser("static", help="filter a vector file to a corpus vocabulary")
    p_static.add_argument("--corpus", required=True, type=Path)
    p_static.add_argument("--vectors", required=True, type=Path)
    p_static.add_argument("--out", required=True, type=Path)
    p_static.add_argument("--oov-report", type=Path)
    p_static.add_argument(
        "--no-strip-variants",
        action="store_true",
        help="build the vocabulary without gloss variant stripping",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "contextual":
            cfg = ExtractConfig(
                model=args.model,
                corpus=args.corpus,
                out=args.out,
                layer=args.layer,
                side=args.side,
                device=args.device,
            )
            path = extract_contextual(cfg)
            print(f"wrote cache {path}")
        else:
            path = export_static(
                args.corpus,
                args.vectors,
                args.out,
                oov_report=args.oov_report,
                strip_variants=not args.no_strip_variants,
            )
            print(f"wrote vectors {path}")
        return 0
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    except (OSError, ValueError) as exc:
        print(f"glossextract: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
