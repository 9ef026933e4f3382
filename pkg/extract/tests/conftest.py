"""Builds a tiny randomly-initialized local BERT so tests need no network."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
import torch
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import BertNormalizer
from tokenizers.pre_tokenizers import BertPreTokenizer
from tokenizers.processors import BertProcessing
from transformers import BertConfig, BertModel, BertTokenizerFast

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "where", "do", "you", "live", "me",
    "lon", "##don", "bread", "food", "fact", "##ory",
    "make", "so", "it", "the", "of", "bat", "##tle", "work",
    "super", "##market", "shop", "sister",
]

CORPUS_ROWS = [
    {"id": "s1", "text": "where do you live", "glosses": "YOU LIVE WHERE"},
    {"id": "s2", "text": "me the london", "glosses": "ME LONDON"},
    {"id": "s3", "text": "the food factory of london", "glosses": "FOOD FACTORY"},
    {"id": "s4", "text": "so it the battle of the bread", "glosses": "BREAD MAKE"},
    {"id": "s5", "text": "sister work the supermarket", "glosses": "SISTER SHOP WORK"},
    {"id": "s6", "text": "bread food shop", "glosses": ""},
]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory) -> Path:
    model_dir = tmp_path_factory.mktemp("tinybert")
    vocab = {tok: i for i, tok in enumerate(VOCAB)}
    backend = Tokenizer(WordPiece(vocab, unk_token="[UNK]"))
    backend.normalizer = BertNormalizer(lowercase=True)
    backend.pre_tokenizer = BertPreTokenizer()
    backend.post_processor = BertProcessing(
        sep=("[SEP]", vocab["[SEP]"]), cls=("[CLS]", vocab["[CLS]"])
    )
    tokenizer = BertTokenizerFast(
        tokenizer_object=backend,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )
    torch.manual_seed(1234)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=4,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    model = BertModel(config)
    model.save_pretrained(model_dir)
    tokenizer.save_pretrained(model_dir)
    return model_dir


@pytest.fixture(scope="session")
def corpus_rows() -> list[dict]:
    return CORPUS_ROWS


@pytest.fixture(scope="session")
def corpus_path(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("corpus") / "corpus.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in CORPUS_ROWS) + "\n")
    return path
