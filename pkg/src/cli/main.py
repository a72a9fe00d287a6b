"""
Command Line Interface
======================

Subcommands over CSV inputs:

- detect:   score a series, run one detector, write a JSON report
- compare:  run the baseline and a grid of detectors, report deltas
- synth:    write a labeled synthetic series
- plotdata: write the per-point band and verdict trace of one detector

Exit codes: 0 success, 2 usage or input error, 1 internal failure.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple, Union
import argparse
import logging
import sys

import numpy as np
import pandas as pd

from src.core.config import FILTER_AUTO, RunConfig
from src.core.model import LabelSeries, ScoreSeries
from src.dataio.csvio import read_csv, split, write_series_csv
from src.dataio.report import DetectionReport, MethodResult, write_report
from src.dataio.synth import Burst, Regime, SynthSpec, generate
from src.detectors.baseline import baseline_detect, baseline_fit, rolling_quantile_detect
from src.detectors.macs import macs_detect
from src.detectors.scs import scs_detect, scs_fit
from src.detectors.verdicts import Verdicts
from src.evaluation.metrics import confusion, delta_report, metrics
from src.scoring.scorers import SCORER_KINDS, ScorerSpec, score

logger = logging.getLogger(__name__)

METHODS = ("baseline", "scs-apca", "scs-kmeans", "macs", "rolling-quantile")
REFERENCE_METHODS = ("baseline", "rolling-quantile")
PLOT_COLUMNS = ("index", "score", "lower", "upper", "flag")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2


# --------------------------------------------------------------------------
# Flag parsing
# --------------------------------------------------------------------------

def _confidence_grid(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid confidence list '{text}'") from None


def _filter_percentile(text: str) -> Optional[Union[float, str]]:
    word = text.strip().lower()
    if word == "off":
        return None
    if word == FILTER_AUTO:
        return FILTER_AUTO
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"filter percentile must be 'off', '{FILTER_AUTO}' or a number, "
            f"got '{text}'") from None


def _windows(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid window list '{text}'") from None


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="CSV with timestamp,value[,label]")
    parser.add_argument("--output", required=True, help="Output file")
    parser.add_argument("--config", help="YAML run configuration; flags override it")
    parser.add_argument("--filter-percentile", type=_filter_percentile, default=argparse.SUPPRESS,
                        help="Global percentile gate in (0, 1), 'auto' or 'off'")
    parser.add_argument("--scorer", choices=SCORER_KINDS, help="Anomaly scorer")
    parser.add_argument("--scorer-window", type=int, help="Window of rolling_residual")
    parser.add_argument("--seasonal-lag", type=int, help="Seasonal differencing lag")
    parser.add_argument("--split", type=float, help="Train fraction (default 0.7)")
    parser.add_argument("--seed", type=int, help="Seed for randomized steps")
    parser.add_argument("--segments", type=int, dest="n_segments", help="K-means cluster count")
    parser.add_argument("--min-segment-length", type=int, help="Minimum SCS segment length")
    parser.add_argument("--windows", type=_windows, help="MACS windows short,medium,long")
    parser.add_argument("--decision-rule", choices=("regime", "vote"), help="MACS decision rule")
    parser.add_argument("--violation-threshold", type=int, help="MACS scale votes needed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptive-thresholds",
        description="Adaptive-threshold anomaly detection over time series")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output")
    commands = parser.add_subparsers(dest="command", required=True)

    detect = commands.add_parser("detect", help="Run one detector and write a report")
    _add_run_arguments(detect)
    detect.add_argument("--method", choices=METHODS, default="macs")
    detect.add_argument("--confidence", type=float, help="Confidence level in (0, 1)")

    compare = commands.add_parser("compare", help="Compare detectors against the baseline")
    _add_run_arguments(compare)
    compare.add_argument("--methods", default="scs-apca,scs-kmeans,macs",
                         help="Comma-separated methods run besides the baseline")
    compare.add_argument("--confidence", type=_confidence_grid, default=[0.99, 0.95],
                         help="Comma-separated confidence grid, e.g. 0.99,0.95")
    compare.add_argument("--jobs", type=int, default=1, help="Methods run in parallel")

    synth = commands.add_parser("synth", help="Write a labeled synthetic series")
    synth.add_argument("--output", required=True, help="Output CSV")
    synth.add_argument("--n", type=int, required=True, help="Series length")
    synth.add_argument("--regimes", help="Regimes as len:mean:std,... (default n:0:1)")
    synth.add_argument("--rate", type=float, default=0.01, help="Anomaly rate in [0, 1)")
    synth.add_argument("--magnitude", type=float, default=6.0,
                       help="Anomaly size in regime standard deviations")
    synth.add_argument("--burst", help="Burst as start:length:offset")
    synth.add_argument("--seed", type=int, default=0, help="PRNG seed")

    plot = commands.add_parser("plotdata", help="Write a per-point band and verdict trace")
    _add_run_arguments(plot)
    plot.add_argument("--method", choices=METHODS, default="macs")
    plot.add_argument("--confidence", type=float, help="Confidence level in (0, 1)")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """Config file values (or defaults) overridden by the flags that were given."""
    config = RunConfig.from_yaml(args.config) if args.config else RunConfig()
    overrides = {}
    for name in ("split", "seed", "n_segments", "min_segment_length", "windows",
                 "decision_rule", "violation_threshold"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if hasattr(args, "filter_percentile"):
        overrides["filter_percentile"] = args.filter_percentile
    confidence = getattr(args, "confidence", None)
    if isinstance(confidence, float):
        overrides["confidence_level"] = confidence

    scorer = config.scorer
    if args.scorer or args.scorer_window is not None or args.seasonal_lag is not None:
        scorer = ScorerSpec(
            kind=args.scorer or scorer.kind,
            window=args.scorer_window if args.scorer_window is not None else scorer.window,
            seasonal_lag=args.seasonal_lag if args.seasonal_lag is not None else scorer.seasonal_lag)
        overrides["scorer"] = scorer
    return config.replace(**overrides)


# --------------------------------------------------------------------------
# Pipeline
# --------------------------------------------------------------------------

def run_method(method: str, scores: ScoreSeries, train_length: int,
               config: RunConfig) -> Verdicts:
    """
    Run one detector over the whole score series.

    The baseline threshold and SCS segmentation are fitted on the first
    train_length scores; MACS and the rolling quantile are fully rolling.
    SCS judges the rest of the series through its online stream, each
    point before it refreshes the last band.
    """
    if method == "baseline":
        theta = baseline_fit(scores.slice(0, train_length), config.baseline_percentile)
        return baseline_detect(scores, theta)
    if method == "rolling-quantile":
        return rolling_quantile_detect(scores, config.quantile_window, config.baseline_percentile)
    if method == "macs":
        return macs_detect(scores, config)
    if method in ("scs-apca", "scs-kmeans"):
        scs_config = config.replace(segmentation_method=method.split("-", 1)[1])
        model = scs_fit(scores.slice(0, train_length), scs_config)
        logger.debug("%s", model.summary())
        return scs_detect(scores, model, online=True)
    raise ValueError(f"unknown method '{method}'")


def evaluate(verdicts: Verdicts, labels: Optional[LabelSeries]) -> MethodResult:
    """Anomaly indices, plus confusion counts and metrics when labels exist."""
    indices = verdicts.anomaly_indices().tolist()
    if labels is None:
        return MethodResult(anomaly_indices=indices)
    counts = confusion(verdicts.final_anomaly, labels)
    return MethodResult(anomaly_indices=indices, confusion=counts, metrics=metrics(counts))


def _prepare(args: argparse.Namespace):
    config = load_config(args)
    series, labels = read_csv(args.input)
    train, _ = split(series, config.split)
    scores = score(series.values, config.scorer)
    return config, scores, labels, len(train)


def cmd_detect(args: argparse.Namespace) -> int:
    config, scores, labels, train_length = _prepare(args)
    verdicts = run_method(args.method, scores, train_length, config)
    result = evaluate(verdicts, labels)
    echo = dict(config.to_dict(), method=args.method, input=args.input)
    report = DetectionReport(config=echo, methods={args.method: result})
    write_report(report, args.output)
    print(f"{args.method}: {verdicts.anomaly_count} anomalies in {len(verdicts)} points")
    return EXIT_OK


def compare_jobs(methods: Sequence[str], grid: Sequence[float],
                 config: RunConfig) -> List[Tuple[str, str, RunConfig]]:
    """Expand methods × confidence grid into named runs; the baseline always runs."""
    jobs = [("baseline", "baseline", config)]
    for method in methods:
        if method == "baseline":
            continue
        if method in REFERENCE_METHODS:
            jobs.append((method, method, config))
            continue
        for level in grid:
            jobs.append((f"{method}@{level}", method, config.replace(confidence_level=level)))
    return jobs


def cmd_compare(args: argparse.Namespace) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown method '{unknown[0]}'")
    if not args.confidence:
        raise ValueError("empty confidence grid")
    if args.jobs < 1:
        raise ValueError("jobs must be a positive integer")
    config, scores, labels, train_length = _prepare(args)
    if labels is None:
        raise ValueError("labels required")
    jobs = compare_jobs(methods, args.confidence, config)

    def run(job: Tuple[str, str, RunConfig]) -> MethodResult:
        _, method, job_config = job
        return evaluate(run_method(method, scores, train_length, job_config), labels)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        outcomes = list(pool.map(run, jobs))
    results: Dict[str, MethodResult] = {
        name: outcome for (name, _, _), outcome in sorted(zip(jobs, outcomes),
                                                           key=lambda pair: pair[0][0])}

    baseline_counts = results["baseline"].confusion
    compared = {name: r.confusion for name, r in results.items() if name != "baseline"}
    if not compared:
        compared = {"baseline": baseline_counts}
    deltas = delta_report(compared, baseline_counts)

    echo = dict(config.to_dict(), confidence_levels=list(args.confidence),
                methods=methods, input=args.input)
    del echo["confidence_level"]
    if config.filter_percentile == FILTER_AUTO:
        echo["filter"] = dict(echo["filter"], percentile=[
            config.replace(confidence_level=level).resolved_filter_percentile
            for level in args.confidence])
    report = DetectionReport(config=echo, methods=results, deltas=deltas)
    write_report(report, args.output)
    print(report.summary())
    return EXIT_OK


def parse_burst(text: str) -> Burst:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"malformed burst '{text}', expected start:length:offset")
    return Burst(int(parts[0]), int(parts[1]), float(parts[2]))


def cmd_synth(args: argparse.Namespace) -> int:
    regimes = (SynthSpec.parse_regimes(args.regimes) if args.regimes
               else (Regime(args.n, 0.0, 1.0),))
    spec = SynthSpec(n=args.n, regimes=regimes, anomaly_rate=args.rate,
                     anomaly_magnitude_sigmas=args.magnitude,
                     burst=parse_burst(args.burst) if args.burst else None, seed=args.seed)
    series, labels = generate(spec)
    write_series_csv(args.output, series, labels)
    print(f"wrote {len(series)} rows ({labels.anomaly_count} anomalies) to {args.output}")
    return EXIT_OK


def cmd_plotdata(args: argparse.Namespace) -> int:
    config, scores, _, train_length = _prepare(args)
    verdicts = run_method(args.method, scores, train_length, config)
    frame = pd.DataFrame({"index": np.arange(len(verdicts)), "score": scores.scores,
                          "lower": verdicts.lower, "upper": verdicts.upper,
                          "flag": verdicts.final_anomaly.astype(int)},
                         columns=list(PLOT_COLUMNS))
    frame.to_csv(args.output, index=False, float_format="%.17g", na_rep="",
                 lineterminator="\n")
    print(f"{args.method}: wrote {len(frame)} trace rows to {args.output}")
    return EXIT_OK


COMMANDS = {"detect": cmd_detect, "compare": cmd_compare, "synth": cmd_synth,
            "plotdata": cmd_plotdata}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        logger.exception("Internal failure in %s", args.command)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
