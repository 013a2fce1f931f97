"""Tests for the imbalance state machine and the session scan."""

from decimal import Decimal

import numpy as np
import pytest

from tests.builders import DESCRIPTOR, quote, random_stream, session, trade
from tick2impact.domain.entities.episode import EpisodeBatch, ImbalanceEpisode
from tick2impact.domain.entities.events import Level1Event
from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.domain.value_objects.extraction import ExtractionConfig, target_for, volume_grid
from tick2impact.domain.value_objects.trade_sign import Direction
from tick2impact.infrastructure.analytics.imbalance import (
    ImbalanceTracker,
    episode_participation,
    episodes_by_volume,
    extract_episodes,
    fused_multi_target_scan,
)
from tick2impact.infrastructure.analytics.tape import SessionTape, scan_session
from tick2impact.shared.exceptions import ConfigInvalidError, ZeroVolumeWindowError
from tick2impact.shared.logging import RunDiagnostics

CFG = ExtractionConfig()
END = DESCRIPTOR.session_end_ns


def posts(tape: SessionTape) -> list[int | None]:
    return [int(p) if h else None for p, h in zip(tape.post_half, tape.has_post, strict=True)]


class TestScanSession:
    """Tests for the single pass building the trade tape."""

    def test_pre_open_events_skipped(self) -> None:
        tape = scan_session(
            session(
                trade(0, 10_000, 1),
                quote(1, 10_000, 10_000),
                quote(2, 10_000, 10_001),
                trade(3, 10_001, 2),
            )
        )
        assert len(tape) == 1
        assert tape.counters["pre_open_events"] == 2
        assert tape.signs.tolist() == [1]
        assert tape.mid_half.tolist() == [20_001]

    def test_invalid_book_leaves_trades_unsigned(self) -> None:
        tape = scan_session(
            session(quote(0, 10_000, 10_001), quote(1, 10_000, None), trade(2, 10_001, 1))
        )
        assert tape.signs.tolist() == [0]
        assert tape.counters["invalid_quotes"] == 1
        assert tape.counters["unclassified_trades"] == 1

    def test_post_quote_is_first_valid_after(self) -> None:
        tape = scan_session(
            session(
                quote(0, 10_000, 10_001),
                trade(1, 10_001, 1),
                trade(1, 10_001, 1),
                quote(2, 10_001, 10_001),
                quote(3, 10_001, 10_002),
                trade(4, 10_002, 1),
            )
        )
        assert posts(tape) == [20_003, 20_003, None]
        assert tape.last_mid_half == 20_003

    def test_session_without_quotes(self) -> None:
        tape = scan_session(session(trade(1, 10_000, 1)))
        assert tape.touch is None
        assert tape.touch_bounds is None
        assert tape.last_mid_half is None
        assert episodes_by_volume(tape, (0.5, 1.0), CFG) == {0.5: [], 1.0: []}

    def test_events_after_session_end_skipped(self) -> None:
        tape = scan_session(
            session(
                quote(0, 10_000, 10_001),
                trade(END + 10, 10_001, 10),
                quote(END + 11, 10_000, 10_002),
            )
        )
        assert len(tape) == 0
        assert tape.counters["events_after_session"] == 2
        assert tape.last_mid_half == 20_001

    def test_events_before_session_start_skipped(self) -> None:
        descriptor = SessionDescriptor("TEST", Decimal("0.01"), 10, END)
        tape = scan_session(
            session(
                quote(0, 10_000, 10_001),
                trade(5, 10_001, 1),
                quote(10, 10_001, 10_002),
                trade(11, 10_002, 1),
                descriptor=descriptor,
            )
        )
        assert tape.counters["events_before_session"] == 2
        assert tape.counters["pre_open_events"] == 0
        assert tape.mid_half.tolist() == [20_003]

    def test_session_end_is_inclusive(self) -> None:
        tape = scan_session(session(quote(0, 10_000, 10_001), trade(END, 10_001, 1)))
        assert tape.timestamps.tolist() == [END]
        assert "events_after_session" not in tape.counters

    @pytest.mark.parametrize("chunk_events", [1, 2, 7, 64])
    def test_chunking_does_not_change_the_tape(self, chunk_events: int) -> None:
        for seed in range(40):
            events = random_stream(seed)
            whole = scan_session(session(*events))
            cut = scan_session(session(*events, chunk_events=chunk_events))
            for name in ("timestamps", "sizes", "signs", "mid_half", "has_post"):
                assert np.array_equal(getattr(cut, name), getattr(whole, name)), (seed, name)
            assert posts(cut) == posts(whole)
            assert (cut.touch, cut.last_mid_half) == (whole.touch, whole.last_mid_half)
            assert cut.counters == whole.counters


class TestImbalanceTracker:
    """Tests for single-target extraction."""

    def test_simple_buy_episode(self) -> None:
        source = session(
            quote(0, 10_000, 10_001),
            trade(1, 10_001, 2),
            trade(2, 10_001, 1),
            quote(3, 10_001, 10_002),
        )
        [episode] = extract_episodes(source, 3)
        assert episode.imbalance == 3
        assert episode.direction is Direction.BUY
        assert episode.p0_half_ticks == 20_001
        assert episode.post_half_ticks == 20_003
        assert episode.impact == 1.0
        assert episode.total_traded == 3
        assert (episode.t_first_trade, episode.t_last_trade) == (1, 2)
        assert episode.accepted

    def test_zero_crossing_restarts(self) -> None:
        diagnostics = RunDiagnostics()
        source = session(
            quote(0, 10_000, 10_001),
            trade(1, 10_001, 2),
            trade(2, 10_000, 2),
            trade(3, 10_000, 3),
            quote(4, 9_999, 10_000),
        )
        [episode] = extract_episodes(source, 3, diagnostics=diagnostics)
        assert episode.direction is Direction.SELL
        assert episode.t_first_trade == 3
        assert episode.total_traded == 3
        assert episode.impact == 1.0
        assert diagnostics.counters["zero_crossings"] == 1

    def test_sign_flip_discards_run(self) -> None:
        source = session(
            quote(0, 10_000, 10_001),
            trade(1, 10_001, 2),
            trade(2, 10_000, 5),
            quote(3, 9_999, 10_000),
        )
        assert extract_episodes(source, 3) == []

    def test_overshoot_rejected_but_reported(self) -> None:
        source = session(
            quote(0, 10_000, 10_001),
            trade(1, 10_001, 2),
            trade(2, 10_001, 3),
            quote(3, 10_000, 10_001),
        )
        [strict] = extract_episodes(source, 4)
        assert strict.imbalance == 5
        assert strict.overshoot == 0.25
        assert not strict.accepted
        [loose] = extract_episodes(source, 4, ExtractionConfig(overshoot_tol=0.3))
        assert loose.accepted

    def test_overshoot_at_tolerance_accepted(self) -> None:
        source = session(quote(0, 10_000, 10_001), trade(1, 10_001, 11), quote(2, 10_000, 10_001))
        [episode] = extract_episodes(source, 10)
        assert episode.accepted

    def test_unsigned_trades_count_toward_window(self) -> None:
        source = session(
            quote(0, 10_000, 10_002),
            trade(1, 10_001, 9),
            trade(2, 10_002, 2),
            trade(3, 10_001, 4),
            trade(4, 10_002, 1),
            quote(5, 10_001, 10_002),
        )
        [episode] = extract_episodes(source, 3)
        assert episode.total_traded == 7
        assert episode.t_first_trade == 2
        assert episode_participation(episode) == pytest.approx(3 / 7)

    def test_episodes_share_a_post_quote(self) -> None:
        source = session(
            quote(0, 10_000, 10_001),
            trade(1, 10_001, 1),
            trade(1, 10_001, 1),
            quote(2, 10_000, 10_002),
        )
        episodes = extract_episodes(source, 1)
        assert len(episodes) == 2
        assert {e.post_half_ticks for e in episodes} == {20_002}
        assert all(e.impact == 0.5 for e in episodes)

    def test_missing_post_quote_dropped(self) -> None:
        diagnostics = RunDiagnostics()
        source = session(quote(0, 10_000, 10_001), trade(1, 10_001, 3))
        assert extract_episodes(source, 3, diagnostics=diagnostics) == []
        assert diagnostics.counters["dropped_episodes"] == 1

    def test_missing_post_quote_uses_last_mid(self) -> None:
        source = session(quote(0, 10_000, 10_001), trade(1, 10_001, 3))
        cfg = ExtractionConfig(require_post_quote=False)
        [episode] = extract_episodes(source, 3, cfg)
        assert episode.post_half_ticks == 20_001
        assert episode.impact == 0.0

    def test_target_must_be_positive(self) -> None:
        with pytest.raises(ConfigInvalidError):
            ImbalanceTracker(0, delta=0.01, overshoot_tol=0.1)

    def test_trade_after_session_end_opens_no_episode(self) -> None:
        source = session(
            quote(0, 10_000, 10_001),
            trade(END + 10, 10_001, 10),
            quote(END + 11, 10_000, 10_002),
        )
        assert extract_episodes(source, 10) == []

    def test_episode_waiting_at_session_end(self) -> None:
        events = [
            quote(0, 10_000, 10_001),
            trade(END, 10_001, 3),
            quote(END + 1, 10_001, 10_002),
        ]
        diagnostics = RunDiagnostics()
        assert extract_episodes(session(*events), 3, diagnostics=diagnostics) == []
        assert diagnostics.counters["dropped_episodes"] == 1

        cfg = ExtractionConfig(require_post_quote=False)
        [episode] = extract_episodes(session(*events), 3, cfg)
        assert episode.post_half_ticks == 20_001

    def test_runs_on_a_tape(self) -> None:
        tape = scan_session(
            session(quote(0, 10_000, 10_001), trade(1, 10_001, 4), quote(2, 10_001, 10_002))
        )
        tracker = ImbalanceTracker(4, delta=0.01, overshoot_tol=0.1)
        episodes = tracker.run(tape)
        assert isinstance(episodes, EpisodeBatch)
        assert [e.impact for e in episodes] == [1.0]
        assert tracker.counters["rejected_episodes"] == 0


class TestMultiTarget:
    """Tests for the fused scan over the volume grid."""

    @pytest.fixture
    def events(self) -> list[Level1Event]:
        return [
            quote(0, 10_000, 10_001, 4, 4),
            trade(1, 10_001, 2),
            quote(1, 10_000, 10_001, 4, 2),
            trade(2, 10_001, 2),
            quote(2, 10_000, 10_002, 4, 4),
            trade(3, 10_002, 4),
            quote(3, 10_000, 10_003, 4, 4),
            trade(4, 10_000, 1),
            quote(5, 10_001, 10_002, 4, 4),
        ]

    def test_matches_independent_runs(self, events: list[Level1Event]) -> None:
        cfg = ExtractionConfig(v_grid=volume_grid(0.25, 2.0), touch_volume=4.0)
        fused = fused_multi_target_scan(session(*events), cfg=cfg)
        for v, episodes in fused.items():
            assert episodes == extract_episodes(session(*events), target_for(v, 4.0), cfg)

    def test_touch_from_session(self, events: list[Level1Event]) -> None:
        tape = scan_session(session(*events))
        assert tape.touch is not None
        by_v = episodes_by_volume(tape, (1.0,), CFG)
        assert all(e.target == target_for(1.0, tape.touch) for e in by_v[1.0])


class TestParticipation:
    """Tests for episode participation."""

    def test_capped_at_one(self) -> None:
        episode = ImbalanceEpisode(3, 3, 0, 1, 0.01, 0, 0, 3, True)
        assert episode_participation(episode) == 1.0

    def test_zero_volume_window(self) -> None:
        episode = ImbalanceEpisode(3, 3, 0, 1, 0.01, 0, 0, 0, True)
        with pytest.raises(ZeroVolumeWindowError):
            episode_participation(episode)


class TestEpisodeBatch:
    """Tests for the column-backed episode sequence."""

    @pytest.fixture
    def batch(self) -> EpisodeBatch:
        source = session(
            quote(0, 10_000, 10_001),
            trade(1, 10_001, 1),
            quote(2, 10_001, 10_002),
            trade(3, 10_001, 2),
            quote(4, 10_000, 10_001),
            trade(5, 10_001, 1),
            quote(6, 10_001, 10_002),
        )
        return extract_episodes(source, 1)

    def test_items_are_episodes(self, batch: EpisodeBatch) -> None:
        assert len(batch) == 3
        assert [e.direction for e in batch] == [Direction.BUY, Direction.SELL, Direction.BUY]
        assert batch[-1] == batch[2]
        assert batch[1].imbalance == -2
        assert not batch[1].accepted
        assert batch.accepted_count == 2

    def test_slices_are_lists(self, batch: EpisodeBatch) -> None:
        assert batch[1:] == [batch[1], batch[2]]
        assert batch[::-1] == list(reversed(list(batch)))

    def test_index_out_of_range(self, batch: EpisodeBatch) -> None:
        with pytest.raises(IndexError):
            _ = batch[3]
        with pytest.raises(IndexError):
            _ = batch[-4]

    def test_equality(self, batch: EpisodeBatch) -> None:
        assert batch == list(batch)
        assert batch != list(batch)[:2]
        assert EpisodeBatch.empty(1, 0.01) == []
        assert batch != "episodes"
