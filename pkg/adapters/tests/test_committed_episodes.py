"""The committed episodes stay reproducible and contract-clean."""

import pytest

from make_episodes import EPISODES_DIR, EXPORTERS

from traceqa import load_episode, validate_trace
from traceqa.generator import GenerationConfig, generate_suite
from traceqa.oracle import answer_suite
from traceqa.scoring import score_suite


@pytest.mark.parametrize("run_id", sorted(EXPORTERS))
def test_regeneration_matches_committed_bytes(tmp_path, run_id):
    fresh = tmp_path / run_id
    EXPORTERS[run_id](fresh)
    for name in ("trace.jsonl", "sidecar.jsonl"):
        committed = EPISODES_DIR / run_id / name
        assert committed.exists(), f"missing {committed}; run make_episodes.py"
        assert (fresh / name).read_bytes() == committed.read_bytes()


@pytest.mark.parametrize("run_id", sorted(EXPORTERS))
def test_committed_episode_validates_and_closes(run_id):
    base = EPISODES_DIR / run_id
    trace, sidecar = load_episode(base / "trace.jsonl", base / "sidecar.jsonl")
    assert validate_trace(trace, sidecar) == []
    assert trace.length <= 200
    assert trace.run_id == run_id
    suite = generate_suite(trace, sidecar, GenerationConfig())
    report = score_suite(suite, answer_suite(suite))
    assert report["accuracy"] == 1.0
    assert report["f1"] == 1.0
