"""End-to-end tests: simulate a session, analyze it, merge the results."""

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from tests.builders import quote, session, trade
from tick2impact.application.dto import AnalysisOptions, AnalysisResult, ReportOptions
from tick2impact.application.services import AnalysisService, ReportService, SimulationService
from tick2impact.infrastructure.parsing.artifact_reader import read_summary, read_table
from tick2impact.infrastructure.parsing.tick_format import InMemorySession
from tick2impact.infrastructure.simulation.config import SimConfig
from tick2impact.infrastructure.simulation.market import SimulatedSession
from tick2impact.infrastructure.writing.artifact_writer import ArtifactWriter
from tick2impact.shared.constants import (
    BINS_FILE,
    DESCRIPTOR_FILE,
    EPISODES_FILE,
    HISTOGRAM_FILE,
    SESSION_FILE,
    SUMMARY_FILE,
    TABLE_COLUMNS,
    TRUTH_FILE,
)
from tick2impact.shared.exceptions import EmptySessionError
from tick2impact.shared.result import Err, Ok

MakeConfig = Callable[..., SimConfig]


def simulate(sim_config: MakeConfig, **overrides: object) -> SimulatedSession:
    return SimulationService().run(sim_config(**overrides)).session


def analyze(sim: SimulatedSession, **options: object) -> AnalysisResult:
    source = InMemorySession(sim.descriptor, sim.events)
    result = AnalysisService().analyze_source(source, AnalysisOptions(**options))
    assert isinstance(result, Ok), result
    return result.value


class TestImpactRecovery:
    """Known impact laws are recovered from synthetic sessions."""

    def test_half_tick_per_touch(self, sim_config: MakeConfig) -> None:
        sim = simulate(
            sim_config,
            session_seconds=1000.0,
            touch_size=10,
            noise_rate=0.001,
            informed={"target_volume": [10, 20, 30, 40, 50], "spacing": 1},
        )
        result = analyze(sim, v_step=1.0, v_max=5.0, min_count=30)

        assert result.touch_volume == 10.0
        assert result.targets == {1.0: 10, 2.0: 20, 3.0: 30, 4.0: 40, 5.0: 50}
        assert [b.v for b in result.fit_bins] == [1.0, 2.0, 3.0, 4.0, 5.0]
        assert sum(b.n for b in result.fit_bins) >= 500
        for b in result.bins:
            assert b.median == 0.5 * b.v

        fit = result.regression
        assert fit is not None
        assert fit.lam == pytest.approx(0.5, abs=0.02)
        assert fit.mu == pytest.approx(0.0, abs=0.05)
        assert fit.r2 >= 0.99
        assert fit.lambda_err < 4.0

    @pytest.mark.slow
    @pytest.mark.parametrize("pov_rate", [0.15, 0.21, 0.35])
    def test_participation_asymptote(self, sim_config: MakeConfig, pov_rate: float) -> None:
        sim = simulate(
            sim_config,
            seed=11,
            session_seconds=3000.0,
            touch_size=20,
            noise_rate=5.0,
            informed={"target_volume": 400, "style": "pov", "pov_rate": pov_rate, "spacing": 0},
        )
        result = analyze(sim, min_count=10)

        assert result.touch_volume == 20.0
        assert result.curve is not None
        assert result.curve.asymptote_v == 5.0
        assert result.curve.asymptote == pytest.approx(pov_rate, abs=0.05)

    def test_aggressive_execution_dominates_small_volumes(self, sim_config: MakeConfig) -> None:
        sim = simulate(
            sim_config,
            touch_size=20,
            noise_rate=0.01,
            informed={"target_volume": [10, 11], "spacing": 0.1},
        )
        result = analyze(sim, v_step=0.5, v_max=1.0, min_count=1)

        [small] = [b for b in result.bins if b.v == 0.5]
        assert small.target == 10
        assert small.median_participation >= 0.9

    def test_noise_only_has_no_impact(self, sim_config: MakeConfig) -> None:
        seconds, rate = 2000.0, 1.0
        sim = simulate(
            sim_config, session_seconds=seconds, touch_size=20, noise_rate=rate, noise_size_mean=1.5
        )
        result = analyze(sim, v_max=1.0, min_count=5)

        assert result.bins
        for b in result.bins:
            se = b.sd_impact / np.sqrt(b.n)
            assert abs(b.mean_impact) <= 3 * se + 1e-12
        assert result.regression is not None
        assert result.regression.lam == 0.0

        # geometric sizes with mean 1.5 have E[X^2] = 3
        imbalance = sim.counters["noise_buy_volume"] - sim.counters["noise_sell_volume"]
        sigma = np.sqrt(2 * rate * seconds * 3.0)
        assert abs(imbalance) <= 3 * sigma


class TestArtifacts:
    """Simulation and analysis write reproducible files."""

    def test_simulate_then_analyze_files(self, sim_config: MakeConfig, tmp_path: Path) -> None:
        config = sim_config(informed={"target_volume": [10, 20], "spacing": 2})
        simulated = SimulationService().run(config, tmp_path / "sim")
        assert [p.name for p in simulated.artifacts] == [SESSION_FILE, DESCRIPTOR_FILE, TRUTH_FILE]

        options = AnalysisOptions(
            ticks_path=tmp_path / "sim" / SESSION_FILE,
            descriptor_path=tmp_path / "sim" / DESCRIPTOR_FILE,
            output_dir=tmp_path / "out",
            v_max=2.0,
            min_count=3,
        )
        result = AnalysisService().analyze(options)
        assert isinstance(result, Ok), result
        names = {p.name for p in result.value.artifacts}
        assert names == {EPISODES_FILE, BINS_FILE, HISTOGRAM_FILE, SUMMARY_FILE}

        summary = read_summary(tmp_path / "out" / SUMMARY_FILE)
        assert summary["instrument"] == "SIM"
        assert summary["tick_size"] == "0.01"
        assert summary["touch"] == "10"
        assert summary["v_max"] == "2"

    def test_byte_identical_reruns(self, sim_config: MakeConfig, tmp_path: Path) -> None:
        config = sim_config(informed={"target_volume": 15, "spacing": 3})
        for run in ("a", "b"):
            SimulationService().run(config, tmp_path / run / "sim")
            options = AnalysisOptions(
                ticks_path=tmp_path / run / "sim" / SESSION_FILE,
                descriptor_path=tmp_path / run / "sim" / DESCRIPTOR_FILE,
                output_dir=tmp_path / run / "out",
                min_count=2,
            )
            assert isinstance(AnalysisService().analyze(options), Ok)

        for sub in ("sim", "out"):
            for path in sorted((tmp_path / "a" / sub).iterdir()):
                twin = tmp_path / "b" / sub / path.name
                assert path.read_bytes() == twin.read_bytes(), path.name

    def test_simulated_session_replays_through_check(self, sim_config: MakeConfig, tmp_path: Path) -> None:
        SimulationService().run(sim_config(), tmp_path)
        checked = AnalysisService().check(tmp_path / SESSION_FILE, tmp_path / DESCRIPTOR_FILE)
        assert isinstance(checked, Ok)
        assert checked.value.ok


class TestDegenerateSessions:
    def test_no_valid_quote(self) -> None:
        result = AnalysisService().analyze_source(session(quote(0, 10_000, None), trade(1, 10_000, 2)))
        assert isinstance(result, Err)
        assert isinstance(result.error, EmptySessionError)

    def test_no_trades(self) -> None:
        result = AnalysisService().analyze_source(session(quote(0, 10_000, 10_001, 8, 8)))
        assert isinstance(result, Ok)
        analysis = result.value
        assert analysis.touch_volume == 8.0
        assert analysis.bins == []
        assert analysis.regression is None
        assert any("no trades" in w for w in analysis.diagnostics.warnings)
        assert any(w.startswith("No regression") for w in analysis.diagnostics.warnings)
        assert analysis.summary_values()["fit"] == "unavailable"

    def test_missing_descriptor_is_config_error(self, tmp_path: Path) -> None:
        ticks = tmp_path / "t.csv"
        ticks.write_text("", encoding="utf-8")
        result = AnalysisService().analyze(AnalysisOptions(ticks_path=ticks, descriptor_path=tmp_path / "d"))
        assert isinstance(result, Err)
        assert result.error.key == "desc"  # type: ignore[attr-defined]


class TestReport:
    """Merging several analysis summaries into one table."""

    @staticmethod
    def write_summary(directory: Path, instrument: str, mu: float, lam: float) -> Path:
        values = {
            "instrument": instrument,
            "tick_size": "0.01",
            "touch": 14.0,
            "mu": mu,
            "lambda": lam,
            "r2": 0.95,
            "p_value": 1e-5,
            "part_rate": 0.21,
        }
        ArtifactWriter().write_summary(values, directory / SUMMARY_FILE).unwrap()
        return directory

    def test_table_with_concave_flag(self, tmp_path: Path) -> None:
        linear = self.write_summary(tmp_path / "a", "AAA.L", 0.02, 0.64)
        concave = self.write_summary(tmp_path / "b", "BBB.PA", 0.52, 0.31)
        out = tmp_path / "table.csv"

        result = ReportService().report(ReportOptions(inputs=[linear, concave], output_path=out))
        assert isinstance(result, Ok)
        report = result.value
        assert [r.instrument for r in report.concave_rows] == ["BBB.PA"]
        assert report.rows[0].lambda_err == pytest.approx(28.0)
        assert report.output_path == out

        assert out.read_text(encoding="utf-8").splitlines()[0] == ",".join(TABLE_COLUMNS)
        rows = read_table(out)
        assert [r["RIC"] for r in rows] == ["AAA.L", "BBB.PA"]
        assert float(rows[0]["lambda_err_pct"]) == pytest.approx(28.0)
        assert rows[1]["delta"] == "0.01"

    def test_summary_without_fit(self, tmp_path: Path) -> None:
        directory = self.write_summary(tmp_path / "a", "CCC.DE", float("nan"), float("nan"))
        result = ReportService().report(ReportOptions(inputs=[directory]))
        assert isinstance(result, Ok)
        [row] = result.value.rows
        assert not row.concave

    def test_missing_summary(self, tmp_path: Path) -> None:
        result = ReportService().report(ReportOptions(inputs=[tmp_path]))
        assert isinstance(result, Err)
