"""Monte Carlo campaigns and the varentropy-based normality screen.

A campaign runs R independent replications of the estimator at each sample
size in an ascending grid and reports mean, bias, variance, and MSE against
the family's oracle values. Replication r of size n draws from the stream
(seed, n, r); a replication that hits coincident points is redrawn on the
bumped stream (seed, n, r, attempt), at most five times, and every redraw
is counted in the report. Replications may execute on a thread pool; rows
are merged in replication order, so a report is bit-identical for a given
config and seed regardless of worker count.

The normality screen compares the varentropy estimate against its value
for any non-degenerate normal law (half the dimension). No limiting
distribution is assumed: the null distribution of the centered statistic
is calibrated by Monte Carlo on standard-normal samples of the same shape,
and the p-value is the usual add-one-corrected two-sided rank.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_sample
from .distributions import Distribution, parse_distribution
from .estimator import estimate
from .exceptions import (
    CalibrationBudgetTooSmallError,
    ConfigError,
    DuplicatePointsError,
    InvalidParamsError,
    TooFewPointsError,
)
from .streams import substream

_MAX_REDRAWS = 5
_MIN_CALIBRATION = 199
_MIN_SCREEN_POINTS = 50
_MIN_STDERR_REPLICATIONS = 30

_CAL_STREAM_TAG = 301

ESTIMANDS = ("entropy", "varentropy", "both")


@dataclass(frozen=True)
class CampaignConfig:
    """Declarative description of one Monte Carlo campaign."""

    distribution: Distribution
    n_grid: tuple
    replications: int
    seed: int
    estimand: str = "varentropy"
    engine: str = "tree"

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if len(grid) == 0:
            raise ConfigError("n_grid must not be empty")
        if any(n < 2 for n in grid):
            raise ConfigError("every sample size must be >= 2")
        if list(grid) != sorted(set(grid)):
            raise ConfigError(f"n_grid must be strictly ascending, got {list(grid)}")
        object.__setattr__(self, "n_grid", grid)
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if self.estimand not in ESTIMANDS:
            raise ConfigError(
                f"estimand must be one of {ESTIMANDS}, got {self.estimand!r}"
            )

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        try:
            dist_spec = data.pop("distribution")
            n_grid = data.pop("n_grid")
            replications = data.pop("replications")
            seed = data.pop("seed")
        except KeyError as exc:
            raise ConfigError(f"campaign config missing key {exc.args[0]!r}") from None
        estimand = data.pop("estimand", "varentropy")
        engine = data.pop("engine", "tree")
        if data:
            raise ConfigError(f"unknown campaign config keys {sorted(data)}")
        if not isinstance(n_grid, (list, tuple)):
            raise ConfigError("n_grid must be a list")
        return cls(
            distribution=parse_distribution(dist_spec),
            n_grid=tuple(n_grid),
            replications=int(replications),
            seed=int(seed),
            estimand=str(estimand),
            engine=str(engine),
        )

    def planned_streams(self):
        """(n, r) stream ids the campaign will draw from, in order."""
        return [(n, r) for n in self.n_grid for r in range(self.replications)]


@dataclass(frozen=True)
class CampaignRow:
    """Aggregates for one sample size.

    ``mse`` is accumulated directly as the mean squared deviation from the
    oracle; it must agree with bias^2 + variance to within 1e-12, which is
    asserted at construction time as a cheap aggregation cross-check.
    Standard errors are reported only when the replication count supports
    them (>= 30); otherwise they are None.
    """

    n: int
    mean: float
    bias: float
    variance: float
    mse: float
    stderr_mean: float | None
    stderr_mse: float | None
    runtime_seconds: float
    redraws: int

    def __post_init__(self):
        recomposed = self.bias ** 2 + self.variance
        if abs(self.mse - recomposed) > 1e-12 * max(1.0, abs(self.mse)):
            raise RuntimeError(
                f"MSE cross-check failed at n={self.n}: direct {self.mse!r} "
                f"vs bias^2+variance {recomposed!r}"
            )

    def to_dict(self):
        return {
            "n": self.n, "mean": self.mean, "bias": self.bias,
            "variance": self.variance, "mse": self.mse,
            "stderr_mean": self.stderr_mean, "stderr_mse": self.stderr_mse,
            "runtime_seconds": self.runtime_seconds, "redraws": self.redraws,
        }


_CSV_COLUMNS = ("n", "mean", "bias", "variance", "mse", "stderr_mean", "stderr_mse")


@dataclass(frozen=True)
class McReport:
    """Campaign results: one table of rows per estimand."""

    config: CampaignConfig
    tables: dict
    oracle: dict
    total_redraws: int = 0

    def to_json_dict(self):
        return {
            "schema": "1",
            "distribution": self.config.distribution.spec_string(),
            "n_grid": list(self.config.n_grid),
            "replications": self.config.replications,
            "seed": self.config.seed,
            "estimand": self.config.estimand,
            "oracle": dict(self.oracle),
            "total_redraws": self.total_redraws,
            "tables": {
                name: [row.to_dict() for row in rows]
                for name, rows in self.tables.items()
            },
        }

    def to_csv_text(self, estimand):
        rows = self.tables[estimand]
        lines = [",".join(_CSV_COLUMNS)]
        for row in rows:
            d = row.to_dict()
            lines.append(",".join(
                "" if d[c] is None else repr(d[c]) if isinstance(d[c], float) else str(d[c])
                for c in _CSV_COLUMNS
            ))
        return "\n".join(lines) + "\n"


def _one_replication(dist, n, r, seed, engine):
    """Run replication r at size n, redrawing on coincident points."""
    redraws = 0
    for attempt in range(_MAX_REDRAWS + 1):
        key = (n, r) if attempt == 0 else (n, r, attempt)
        X = dist.sample(n, substream(seed, *key))
        try:
            report = estimate(X, engine=engine)
            return report.entropy, report.varentropy, redraws
        except DuplicatePointsError:
            redraws += 1
    raise RuntimeError(
        f"replication (n={n}, r={r}) still degenerate after {_MAX_REDRAWS} redraws; "
        "the sampler is producing coincident points"
    )


def _aggregate(values, oracle, replications):
    mean = float(np.mean(values))
    bias = mean - oracle
    variance = float(np.mean((values - mean) ** 2))
    sq_err = (values - oracle) ** 2
    mse = float(np.mean(sq_err))
    if replications >= _MIN_STDERR_REPLICATIONS:
        stderr_mean = math.sqrt(variance / (replications - 1))
        stderr_mse = float(np.std(sq_err, ddof=1) / math.sqrt(replications))
    else:
        stderr_mean = None
        stderr_mse = None
    return mean, bias, variance, mse, stderr_mean, stderr_mse


def run_campaign(config, threads=1):
    """Execute a campaign and aggregate the per-n statistics.

    Returns
    -------
    McReport
    """
    dist = config.distribution
    oracle = dist.oracle_values()
    wanted = ("entropy", "varentropy") if config.estimand == "both" else (config.estimand,)
    oracle_map = {"entropy": oracle.entropy, "varentropy": oracle.varentropy}

    tables = {name: [] for name in wanted}
    total_redraws = 0
    for n in config.n_grid:
        t0 = time.perf_counter()
        R = config.replications
        ent = np.empty(R)
        var = np.empty(R)
        red = np.zeros(R, dtype=int)

        def work(r, n=n):
            return _one_replication(dist, n, r, config.seed, config.engine)

        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for r, (h, v, k) in enumerate(pool.map(work, range(R))):
                    ent[r], var[r], red[r] = h, v, k
        else:
            for r in range(R):
                ent[r], var[r], red[r] = work(r)
        runtime = time.perf_counter() - t0
        n_redraws = int(red.sum())
        total_redraws += n_redraws

        for name in wanted:
            values = ent if name == "entropy" else var
            mean, bias, variance, mse, se_mean, se_mse = _aggregate(
                values, oracle_map[name], R
            )
            tables[name].append(CampaignRow(
                n=n, mean=mean, bias=bias, variance=variance, mse=mse,
                stderr_mean=se_mean, stderr_mse=se_mse,
                runtime_seconds=runtime, redraws=n_redraws,
            ))
    return McReport(
        config=config, tables=tables,
        oracle={name: oracle_map[name] for name in wanted},
        total_redraws=total_redraws,
    )


# ---------------------------------------------------------------------------
# normality screen
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullCalibration:
    """Monte Carlo null distribution of the centered varentropy statistic.

    Built once per (n, dim, r_cal, seed) and reusable across screens of
    samples with the same shape.
    """

    n: int
    dim: int
    r_cal: int
    seed: int
    statistics: np.ndarray


def build_null_calibration(n, dim, r_cal=199, seed=0, engine="tree"):
    """Simulate the null statistic on r_cal standard-normal samples."""
    if r_cal < _MIN_CALIBRATION:
        raise CalibrationBudgetTooSmallError(
            f"calibration needs at least {_MIN_CALIBRATION} replications, got {r_cal}"
        )
    null_value = dim / 2
    stats = np.empty(r_cal)
    for j in range(r_cal):
        rng = substream(seed, _CAL_STREAM_TAG, n, dim, j)
        X = rng.standard_normal((n, dim))
        stats[j] = estimate(X, engine=engine).varentropy - null_value
    return NullCalibration(n=n, dim=dim, r_cal=r_cal, seed=seed, statistics=stats)


@dataclass(frozen=True)
class NormalityTestResult:
    """Outcome of the varentropy normality screen."""

    statistic: float
    p_value: float
    reject: bool
    level: float
    null_value: float
    n: int
    dim: int
    r_cal: int
    calibration_seed: int

    def to_json_dict(self):
        return {
            "schema": "1",
            "statistic": self.statistic,
            "p_value": self.p_value,
            "reject": self.reject,
            "level": self.level,
            "null_value": self.null_value,
            "n": self.n,
            "dim": self.dim,
            "calibration": {"r_cal": self.r_cal, "seed": self.calibration_seed},
        }


def normality_screen(X, level=0.05, r_cal=199, seed=0, calibration=None,
                     engine="tree"):
    """Two-sided Monte Carlo test of normality based on the varentropy.

    The statistic is the varentropy estimate minus dim/2, its value for
    every non-degenerate normal law. The p-value is
    (1 + #{|null stats| >= |observed|}) / (r_cal + 1); pass a prebuilt
    :class:`NullCalibration` to amortize the simulation across screens.

    Raises
    ------
    TooFewPointsError
        If the sample has fewer than 50 points.
    CalibrationBudgetTooSmallError
        If r_cal < 199.
    """
    X = check_sample(X)
    n, dim = X.shape
    if n < _MIN_SCREEN_POINTS:
        raise TooFewPointsError(
            f"normality screen needs at least {_MIN_SCREEN_POINTS} points, got {n}"
        )
    if not 0.0 < level < 1.0:
        raise InvalidParamsError(f"level must be in (0, 1), got {level}")
    null_value = dim / 2
    # compute the statistic first so degenerate samples fail before any
    # calibration work is spent
    statistic = estimate(X, engine=engine).varentropy - null_value
    if calibration is None:
        calibration = build_null_calibration(n, dim, r_cal=r_cal, seed=seed,
                                             engine=engine)
    elif (calibration.n, calibration.dim) != (n, dim):
        raise InvalidParamsError(
            f"calibration built for (n={calibration.n}, d={calibration.dim}) "
            f"cannot screen a (n={n}, d={dim}) sample"
        )
    exceed = int(np.sum(np.abs(calibration.statistics) >= abs(statistic)))
    p_value = (1 + exceed) / (calibration.r_cal + 1)
    return NormalityTestResult(
        statistic=statistic, p_value=p_value, reject=p_value <= level,
        level=level, null_value=null_value, n=n, dim=dim,
        r_cal=calibration.r_cal, calibration_seed=calibration.seed,
    )


class NormalityScreen(BaseEstimator):
    """Scikit-learn style wrapper around :func:`normality_screen`.

    Attributes set by ``fit``: ``statistic_``, ``p_value_``, ``reject_``,
    ``result_``.
    """

    def __init__(self, level=0.05, r_cal=199, seed=0, engine="tree"):
        self.level = level
        self.r_cal = r_cal
        self.seed = seed
        self.engine = engine

    def fit(self, X, y=None):
        result = normality_screen(
            X, level=self.level, r_cal=self.r_cal, seed=self.seed,
            engine=self.engine,
        )
        self.result_ = result
        self.statistic_ = result.statistic
        self.p_value_ = result.p_value
        self.reject_ = result.reject
        return self
