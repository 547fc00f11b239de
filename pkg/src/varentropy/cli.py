"""Command-line front end.

Subcommands: ``estimate``, ``sample``, ``conditions``, ``campaign``,
``normality``. Data files are headerless CSV, N rows by d numeric columns,
comma-delimited; the dimension is inferred from the column count. All
output is deterministic under a fixed ``--seed``; ``--no-meta`` strips the
timestamped metadata block so stdout is byte-identical across runs.

Exit codes: 0 success, 2 usage/parse error, 3 degenerate data (coincident
points), 4 insufficient data.
"""

import argparse
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .conditions import condition_report
from .distributions import parse_distribution, sample_distribution
from .estimator import estimate
from .exceptions import (
    BudgetTooSmallError,
    CalibrationBudgetTooSmallError,
    ConfigError,
    DuplicatePointsError,
    EmptySampleError,
    InvalidParamsError,
    TooFewPointsError,
    VarentropyError,
)
from .experiments import CampaignConfig, normality_screen, run_campaign

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_INSUFFICIENT = 4


class _CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _fail(code, message):
    raise _CliError(code, message)


def read_csv_matrix(path):
    """Parse a headerless numeric CSV into an (n, d) float64 array.

    Every cell must parse as a finite real; errors name the offending
    1-based row and column.
    """
    rows = []
    width = None
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, f"cannot open {path}: {exc}")
    with handle:
        for i, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                _fail(EXIT_USAGE,
                      f"{path}: row {i} has {len(cells)} columns, expected {width}")
            parsed = []
            for j, cell in enumerate(cells, start=1):
                try:
                    value = float(cell)
                except ValueError:
                    _fail(EXIT_USAGE,
                          f"{path}: row {i}, column {j}: {cell.strip()!r} is not a number")
                if not np.isfinite(value):
                    _fail(EXIT_USAGE,
                          f"{path}: row {i}, column {j}: value is not finite")
                parsed.append(value)
            rows.append(parsed)
    if not rows:
        _fail(EXIT_INSUFFICIENT, f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


def write_csv_matrix(path, X):
    """Write a matrix as headerless CSV with round-trip-exact floats."""
    with open(path, "w", encoding="utf-8") as handle:
        for row in X:
            handle.write(",".join(repr(float(v)) for v in row) + "\n")


def _emit_json(payload, args, out_path=None):
    if not getattr(args, "no_meta", False):
        payload = dict(payload)
        payload["meta"] = {
            "tool": f"varentropy {__version__}",
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_estimate(args):
    X = read_csv_matrix(args.input)
    if X.shape[0] < 2:
        _fail(EXIT_INSUFFICIENT, f"{args.input}: need at least 2 rows, got {X.shape[0]}")
    policy = "jitter" if args.jitter is not None else "error"
    try:
        report = estimate(X, engine=args.engine, duplicate_policy=policy,
                          jitter_width=args.jitter, jitter_seed=args.seed)
    except DuplicatePointsError as exc:
        _fail(EXIT_DEGENERATE, f"{exc} (rerun with --jitter WIDTH)")
    except EmptySampleError as exc:
        _fail(EXIT_INSUFFICIENT, str(exc))
    payload = {"schema": "1", **report.to_dict(emit_zeta=args.emit_zeta)}
    if args.out:
        _emit_json(payload, args, args.out)
    if args.json:
        if not args.out:
            _emit_json(payload, args, None)
    else:
        lines = [
            f"n             {report.n}",
            f"dim           {report.dim}",
            f"entropy       {report.entropy!r}",
            f"second_moment {report.second_moment!r}",
            f"varentropy    {report.varentropy!r}",
        ]
        if report.unstable:
            lines.append("note          n < 10: varentropy estimate is unstable")
        print("\n".join(lines))
    return EXIT_OK


def cmd_sample(args):
    try:
        dist = parse_distribution(args.spec)
        X = sample_distribution(dist, args.n, args.seed)
    except (ConfigError, InvalidParamsError) as exc:
        _fail(EXIT_USAGE, str(exc))
    write_csv_matrix(args.out, X)
    if not args.quiet:
        print(f"wrote {X.shape[0]} x {X.shape[1]} sample to {args.out}")
    return EXIT_OK


def cmd_conditions(args):
    try:
        dist = parse_distribution(args.spec)
        report = condition_report(
            dist,
            alphas=tuple(args.alpha),
            eps0=args.eps0, eps1=args.eps1, eps2=args.eps2,
            radius_cap_sup=args.r1, radius_cap_inf=args.r2,
            budget_pairs=args.budget, budget_profile=args.profile_budget,
            grid_size=args.grid_size, seed=args.seed,
        )
    except (ConfigError, InvalidParamsError, BudgetTooSmallError) as exc:
        _fail(EXIT_USAGE, str(exc))
    # verdicts are data, not failures: always exit 0 once the report exists
    _emit_json(report.to_json_dict(), args, args.out)
    return EXIT_OK


def cmd_campaign(args):
    try:
        raw = load_config_file(args.config)
        config = CampaignConfig.from_dict(raw)
    except (ConfigError, InvalidParamsError) as exc:
        _fail(EXIT_USAGE, str(exc))
    threads = args.threads if args.threads else (os.cpu_count() or 1)
    if args.dry_run:
        streams = config.planned_streams()
        print(f"distribution   {config.distribution.spec_string()}")
        print(f"estimand       {config.estimand}")
        print(f"replications   {len(streams)} total "
              f"({config.replications} per n, n_grid {list(config.n_grid)})")
        print(f"streams        (seed={config.seed}, n, r):")
        for n, r in streams[:5]:
            print(f"  ({config.seed}, {n}, {r})")
        if len(streams) > 5:
            print(f"  ... {len(streams) - 5} more")
        return EXIT_OK
    try:
        report = run_campaign(config, threads=threads)
    except RuntimeError as exc:
        _fail(EXIT_DEGENERATE, str(exc))

    os.makedirs(args.out_dir, exist_ok=True)
    json_path = os.path.join(args.out_dir, "report.json")
    _emit_json(report.to_json_dict(), args, json_path)
    for name in report.tables:
        csv_path = os.path.join(args.out_dir, f"{name}.csv")
        with open(csv_path, "w", encoding="utf-8") as handle:
            handle.write(report.to_csv_text(name))

    for name, rows in report.tables.items():
        print(f"{name} (oracle {report.oracle[name]!r})")
        print(f"  {'n':>7s} {'mean':>12s} {'bias':>12s} {'mse':>12s}")
        for row in rows:
            print(f"  {row.n:7d} {row.mean:12.6f} {row.bias:12.6f} {row.mse:12.6f}")
    print(f"reports written to {args.out_dir}")
    return EXIT_OK


def cmd_normality(args):
    X = read_csv_matrix(args.input)
    try:
        result = normality_screen(X, level=args.level, r_cal=args.r_cal,
                                  seed=args.seed)
    except TooFewPointsError as exc:
        _fail(EXIT_INSUFFICIENT, str(exc))
    except (CalibrationBudgetTooSmallError, InvalidParamsError) as exc:
        _fail(EXIT_USAGE, str(exc))
    except DuplicatePointsError as exc:
        _fail(EXIT_DEGENERATE, str(exc))
    _emit_json(result.to_json_dict(), args, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# campaign config files: a flat key = value grammar (TOML-like)
# ---------------------------------------------------------------------------


def load_config_file(path):
    """Parse a flat config file of ``key = value`` lines.

    Values are numbers, double-quoted strings, or bracketed numeric lists.
    ``#`` starts a comment. This is a deliberate subset of TOML.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot open {path}: {exc}") from None
    data = {}
    for i, line in enumerate(lines, start=1):
        text = _strip_comment(line).strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{i}: expected key = value")
        key, _, value = text.partition("=")
        key = key.strip()
        if not key or key in data:
            raise ConfigError(f"{path}:{i}: bad or duplicate key {key!r}")
        data[key] = _parse_config_value(value.strip(), f"{path}:{i}")
    return data


def _strip_comment(line):
    out = []
    in_string = False
    for ch in line:
        if ch == '"':
            in_string = not in_string
        if ch == "#" and not in_string:
            break
        out.append(ch)
    return "".join(out)


def _parse_config_value(text, where):
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            return []
        return [_parse_config_value(part.strip(), where) for part in inner.split(",")]
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{where}: cannot parse value {text!r}") from None


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed for every random stream (default 0)")
    parser.add_argument("--no-meta", action="store_true",
                        help="omit the timestamped meta block from JSON output")
    parser.add_argument("--out", default=None,
                        help="write JSON output to this file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="varentropy",
        description="Nearest-neighbor entropy and varentropy estimation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate entropy/varentropy of a CSV sample")
    p.add_argument("input", help="headerless CSV, one point per row")
    p.add_argument("--engine", choices=("tree", "brute"), default="tree")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--emit-zeta", action="store_true",
                   help="include the per-point zeta vector in the JSON report")
    p.add_argument("--jitter", type=float, default=None, metavar="WIDTH",
                   help="break coincident points with uniform noise of this half-width")
    _add_common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sample", help="draw a synthetic sample to CSV")
    p.add_argument("spec", help='distribution spec, e.g. "normal(d=2, sigma=[1,2])"')
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("conditions", help="estimate the density-condition functionals")
    p.add_argument("spec", help="distribution spec string")
    p.add_argument("--alpha", type=int, nargs="+", default=[1, 2, 3, 4],
                   help="gauge exponents to evaluate (default 1 2 3 4)")
    p.add_argument("--eps0", type=float, default=0.5)
    p.add_argument("--eps1", type=float, default=0.5)
    p.add_argument("--eps2", type=float, default=0.5)
    p.add_argument("--r1", type=float, default=1.0,
                   help="radius cap of the sup-profile functional")
    p.add_argument("--r2", type=float, default=1.0,
                   help="radius cap of the inf-profile functional")
    p.add_argument("--budget", type=int, default=1_000_000,
                   help="pair budget of the smallest diagnostic stage")
    p.add_argument("--profile-budget", type=int, default=16_000,
                   help="outer-draw budget of the profile functionals")
    p.add_argument("--grid-size", type=int, default=16)
    _add_common(p)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("campaign", help="run a Monte Carlo campaign from a config file")
    p.add_argument("config", help="campaign config file")
    p.add_argument("--out-dir", default="campaign_out",
                   help="directory for JSON/CSV reports (default campaign_out)")
    p.add_argument("--threads", type=int, default=0,
                   help="worker threads for replications (default: logical cores)")
    p.add_argument("--dry-run", action="store_true",
                   help="print the replication plan and stream ids, write nothing")
    p.add_argument("--no-meta", action="store_true")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("normality", help="varentropy-based normality screen of a CSV sample")
    p.add_argument("input", help="headerless CSV, one point per row")
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--r-cal", type=int, default=199,
                   help="Monte Carlo calibration replications (default 199)")
    _add_common(p)
    p.set_defaults(func=cmd_normality)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching our contract
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except VarentropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
