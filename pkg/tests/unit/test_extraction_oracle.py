"""Extraction checked against the naive re-scanning extractor."""

import numpy as np
import pytest

from tests.builders import DESCRIPTOR, random_stream, session
from tests.unit.reference_extractor import ReferenceEpisode, reference_episodes
from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.domain.value_objects.extraction import ExtractionConfig
from tick2impact.infrastructure.analytics.imbalance import extract_episodes

STREAMS = 1000


class TestReferenceOracle:
    """Incremental extraction equals the naive one on random streams."""

    @pytest.mark.parametrize("require_post_quote", [True, False])
    def test_random_streams(self, require_post_quote: bool) -> None:
        rng = np.random.default_rng(20_240_601)
        checked = 0
        for seed in range(STREAMS):
            events = random_stream(seed)
            target = int(rng.integers(1, 16))
            tol = float(rng.uniform(0.05, 0.5))
            cfg = ExtractionConfig(overshoot_tol=tol, require_post_quote=require_post_quote)

            got = [ReferenceEpisode.of(e) for e in extract_episodes(session(*events), target, cfg)]
            expected = reference_episodes(events, DESCRIPTOR, target, tol, require_post_quote)
            assert got == expected, f"stream {seed}, V_T={target}"
            checked += len(got)
        assert checked > STREAMS

    def test_empty_stream(self) -> None:
        assert extract_episodes(session(), 3) == []
        assert reference_episodes([], DESCRIPTOR, 3, 0.1) == []

    @pytest.mark.parametrize("chunk_events", [1, 3, 16])
    def test_chunking_does_not_change_episodes(self, chunk_events: int) -> None:
        cfg = ExtractionConfig(require_post_quote=False)
        for seed in range(200):
            events = random_stream(seed)
            whole = extract_episodes(session(*events), 2, cfg)
            chunked = extract_episodes(session(*events, chunk_events=chunk_events), 2, cfg)
            assert chunked == whole, f"stream {seed}"

    @pytest.mark.parametrize("require_post_quote", [True, False])
    def test_session_window(self, require_post_quote: bool) -> None:
        cfg = ExtractionConfig(require_post_quote=require_post_quote)
        checked = 0
        for seed in range(300):
            events = random_stream(seed)
            start = events[len(events) // 4].timestamp
            end = events[3 * len(events) // 4].timestamp
            if end <= start:
                continue
            window = SessionDescriptor("TEST", DESCRIPTOR.tick_size, start, end)
            inside = [e for e in events if start <= e.timestamp <= end]

            got = extract_episodes(session(*events, descriptor=window, chunk_events=7), 2, cfg)
            expected = reference_episodes(inside, window, 2, cfg.overshoot_tol, require_post_quote)
            assert [ReferenceEpisode.of(e) for e in got] == expected, f"stream {seed}"
            checked += len(expected)
        assert checked > 0
