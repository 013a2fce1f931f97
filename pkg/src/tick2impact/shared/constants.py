"""
Constants used throughout the application.

Includes the tick-file layout, artifact column sets and analysis defaults.
"""

from typing import Final

# Canonical tick file: one event per line, eight comma-separated fields
TICK_FIELDS: Final[tuple[str, ...]] = (
    "timestamp_ns",
    "kind",
    "trade_price",
    "trade_size",
    "bid_price",
    "ask_price",
    "bid_size",
    "ask_size",
)
TICK_FIELD_COUNT: Final[int] = len(TICK_FIELDS)
TICK_HEADER: Final[str] = ",".join(TICK_FIELDS)

TRADE_KIND: Final[str] = "T"
QUOTE_KIND: Final[str] = "Q"

NANOS_PER_SECOND: Final[int] = 1_000_000_000

# Tick files are read in blocks of whole lines; in-memory sessions are
# handed to the scanner in chunks of this many events
READ_BLOCK_BYTES: Final[int] = 8 << 20
COLUMN_CHUNK_EVENTS: Final[int] = 1 << 16

# Relative tolerance (in units of the tick) for price comparisons
PRICE_TOLERANCE: Final[float] = 1e-6

# Estimator slope: an order that takes the whole touch moves the mid by half a tick
ESTIMATED_SLOPE_TICKS: Final[float] = 0.5

# Analysis defaults
DEFAULT_OVERSHOOT_TOL: Final[float] = 0.1
DEFAULT_V_STEP: Final[float] = 0.25
DEFAULT_V_MAX: Final[float] = 5.0
DEFAULT_MIN_COUNT: Final[int] = 30
DEFAULT_CONCAVE_INTERCEPT: Final[float] = 0.25
IQR_FENCE: Final[float] = 1.5

# Artifact file names
SESSION_FILE: Final[str] = "session.csv"
DESCRIPTOR_FILE: Final[str] = "session.desc"
TRUTH_FILE: Final[str] = "truth.csv"
EPISODES_FILE: Final[str] = "episodes.csv"
BINS_FILE: Final[str] = "bins.csv"
HISTOGRAM_FILE: Final[str] = "histogram.csv"
SUMMARY_FILE: Final[str] = "summary.txt"

# Artifact columns
EPISODE_COLUMNS: Final[tuple[str, ...]] = (
    "v",
    "V_T",
    "direction",
    "V_I",
    "impact_ticks",
    "duration_ns",
    "total_traded",
    "participation",
    "accepted",
)

BIN_COLUMNS: Final[tuple[str, ...]] = (
    "v",
    "V_T",
    "n",
    "mean_impact",
    "sd_impact",
    "q1",
    "median",
    "q3",
    "n_outliers",
    "outliers",
    "estimate_ticks",
    "median_participation",
    "mean_duration_s",
    "mean_duration_raw_s",
    "median_duration_s",
    "q1_duration_s",
    "q3_duration_s",
    "zero_time_fraction",
    "trading_rate",
    "median_trading_rate",
    "sparse",
)

HISTOGRAM_COLUMNS: Final[tuple[str, ...]] = ("v", "impact_ticks", "count")

TRUTH_COLUMNS: Final[tuple[str, ...]] = (
    "episode_id",
    "t_start_ns",
    "t_end_ns",
    "V_T",
    "style",
    "true_participation",
)

TABLE_COLUMNS: Final[tuple[str, ...]] = (
    "RIC",
    "touch",
    "delta",
    "mu",
    "lambda",
    "lambda_err_pct",
    "r2",
    "p_value",
    "part_rate",
)
