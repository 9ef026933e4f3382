import json

import numpy as np
import pytest

from glossalign import (
    CorruptionSpec,
    Corpus,
    gloss_misalign,
    offset_by_one,
)

from conftest import gloss_signature, make_corpus, text_signature

ONLY_SHIFT_3 = {1: 0.0, 2: 0.0, 3: 0.45}


def surfaces(corpus):
    return [[t.surface for t in p.glosses] for p in corpus.pairs]


class TestOffsetByOne:
    def test_three_pairs(self):
        corpus = make_corpus([("a", "A1 A2"), ("b", "B1"), ("c", "C1 C2")])
        out = offset_by_one(corpus)
        assert surfaces(out) == [[], ["A1", "A2"], ["B1"]]
        assert len(out) == 3

    def test_single_pair(self):
        out = offset_by_one(make_corpus([("a", "A1")]))
        assert surfaces(out) == [[]]

    def test_applied_twice(self):
        corpus = make_corpus([("a", "A"), ("b", "B"), ("c", "C")])
        out = offset_by_one(offset_by_one(corpus))
        assert surfaces(out) == [[], [], ["A"]]

    def test_text_unchanged_and_input_untouched(self):
        corpus = make_corpus([("a x", "A"), ("b", "B")])
        before = gloss_signature(corpus)
        out = offset_by_one(corpus)
        assert text_signature(out) == text_signature(corpus)
        assert gloss_signature(corpus) == before


class TestCorruptionSpec:
    def test_default_distribution_normalizes(self):
        spec = CorruptionSpec(seed=0)
        assert abs(spec.event_probs().sum() - 1.0) < 1e-9

    def test_bad_mass_rejected(self):
        with pytest.raises(ValueError, match="sum"):
            CorruptionSpec(seed=0, p_move={1: 0.2, 2: 0.2, 3: 0.2}, p_none=0.1)

    def test_missing_shift_rejected(self):
        with pytest.raises(ValueError, match="p_move"):
            CorruptionSpec(seed=0, p_move={1: 0.45}, p_none=0.1)


class TestGlossMisalign:
    def test_identity_corruption(self):
        corpus = make_corpus([("a", "A B"), ("b", "C")])
        spec = CorruptionSpec(seed=3, p_move={1: 0.0, 2: 0.0, 3: 0.0}, p_none=1.0)
        out, log = gloss_misalign(corpus, spec)
        assert surfaces(out) == surfaces(corpus)
        assert log.moved_to_previous == 0 and log.moved_to_next == 0
        assert all(e["direction"] == "none" for e in log.events)

    def test_short_pair_skipped(self):
        # every non-none draw shifts 3; all pairs hold only 2 glosses
        corpus = make_corpus([(f"t{i}", f"G{i}a G{i}b") for i in range(12)])
        out, log = gloss_misalign(corpus, CorruptionSpec(seed=5, p_move=ONLY_SHIFT_3))
        assert surfaces(out) == surfaces(corpus)
        skipped = [e for e in log.events if not e["applied"]]
        assert skipped and all(e["count"] == 3 for e in skipped)

    def test_edge_pairs_never_move_outside(self):
        corpus = make_corpus([(f"t{i}", f"G{i}a G{i}b G{i}c") for i in range(2)])
        for seed in range(40):
            out, log = gloss_misalign(corpus, CorruptionSpec(seed=seed, p_move=ONLY_SHIFT_3))
            for e in log.events:
                if e["index"] == 0 and e["direction"] == "prev":
                    assert not e["applied"]
                if e["index"] == len(corpus.pairs) - 1 and e["direction"] == "next":
                    assert not e["applied"]
            assert len(out.gloss_tokens()) == len(corpus.gloss_tokens())

    def test_prev_and_next_take_boundary_glosses(self):
        corpus = make_corpus([("a", "A1 A2 A3"), ("b", "B1 B2 B3"), ("c", "C1 C2 C3")])
        # find seeds where only the middle pair moves, in each direction
        found_prev = found_next = False
        for seed in range(300):
            out, log = gloss_misalign(corpus, CorruptionSpec(seed=seed))
            e0, e1, e2 = log.events
            neighbours_inert = not (
                (e0["applied"] and e0["direction"] != "none")
                or (e2["applied"] and e2["direction"] != "none")
            )
            if not (neighbours_inert and e1["applied"] and e1["direction"] != "none"):
                continue
            k = e1["count"]
            if e1["direction"] == "prev" and not found_prev:
                assert surfaces(out)[0] == ["A1", "A2", "A3"] + ["B1", "B2", "B3"][:k]
                assert surfaces(out)[1] == ["B1", "B2", "B3"][k:]
                found_prev = True
            if e1["direction"] == "next" and not found_next:
                assert surfaces(out)[2] == ["B1", "B2", "B3"][3 - k :] + ["C1", "C2", "C3"]
                assert surfaces(out)[1] == ["B1", "B2", "B3"][: 3 - k]
                found_next = True
            if found_prev and found_next:
                break
        assert found_prev and found_next

    def test_determinism(self):
        corpus = make_corpus([(f"t{i}", f"G{i}a G{i}b G{i}c G{i}d") for i in range(50)])
        out1, log1 = gloss_misalign(corpus, CorruptionSpec(seed=13))
        out2, log2 = gloss_misalign(corpus, CorruptionSpec(seed=13))
        assert surfaces(out1) == surfaces(out2)
        assert log1.events == log2.events

    def test_conserves_global_gloss_order(self):
        rng = np.random.default_rng(17)
        for trial in range(20):
            rows = []
            for i in range(int(rng.integers(1, 10))):
                g = int(rng.integers(0, 6))
                rows.append((f"t{i}", " ".join(f"G{trial}x{i}x{j}" for j in range(g))))
            corpus = make_corpus(rows)
            before = gloss_signature(corpus)
            out, _ = gloss_misalign(corpus, CorruptionSpec(seed=trial))
            assert gloss_signature(out) == before
            assert text_signature(out) == text_signature(corpus)
            assert len(out) == len(corpus)

    def test_direction_balance_on_large_corpus(self):
        corpus = make_corpus([(f"t{i}", f"G{i}a G{i}b G{i}c G{i}d") for i in range(10_000)])
        _, log = gloss_misalign(corpus, CorruptionSpec(seed=8))
        hi = max(log.moved_to_previous, log.moved_to_next)
        lo = min(log.moved_to_previous, log.moved_to_next)
        assert (hi - lo) / hi < 0.10

    def test_totals_match_event_log(self):
        corpus = make_corpus([(f"t{i}", f"G{i}a G{i}b G{i}c") for i in range(100)])
        _, log = gloss_misalign(corpus, CorruptionSpec(seed=9))
        prev_total = sum(e["count"] for e in log.events if e["applied"] and e["direction"] == "prev")
        next_total = sum(e["count"] for e in log.events if e["applied"] and e["direction"] == "next")
        assert prev_total == log.moved_to_previous
        assert next_total == log.moved_to_next

    def test_log_json_round_trip(self, tmp_path):
        corpus = make_corpus([("a", "A1 A2 A3"), ("b", "B1")])
        _, log = gloss_misalign(corpus, CorruptionSpec(seed=1))
        path = tmp_path / "log.json"
        log.to_json(path)
        payload = json.loads(path.read_text())
        assert payload["moved_to_previous"] == log.moved_to_previous
        assert len(payload["events"]) == 2

    def test_empty_corpus(self):
        out, log = gloss_misalign(Corpus([]), CorruptionSpec(seed=0))
        assert len(out) == 0 and log.events == []
