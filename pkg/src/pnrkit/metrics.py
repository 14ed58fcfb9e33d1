"""Accuracy, localization error, and per-position error reports.

Coverage is strict in both directions: every annotated clip must carry
a prediction and every prediction must refer to an annotated clip.
Silently skipping clips inflates metrics, so mismatches raise instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping

from pnrkit.errors import CoverageError, DomainError, EmptyInputError
from pnrkit.ingest import Dataset, bin_index
from pnrkit.model import PnrPrediction, frame_to_fraction


@dataclass(frozen=True)
class BinError:
    """Mean absolute error of the clips whose truth falls in one bin."""

    lo: float
    hi: float
    count: int
    mean_error_sec: float | None


@dataclass(frozen=True)
class MetricsReport:
    """One evaluation result: task, clip count, headline, optional bins.

    The headline is accuracy for the classification task and mean
    absolute error in seconds for localization.
    """

    task: str
    n_clips: int
    headline: float
    per_bin: tuple[BinError, ...] | None = None


def _check_coverage(predicted: set[str], annotated: set[str], what: str) -> None:
    missing = annotated - predicted
    if missing:
        raise CoverageError(
            f"missing {what} prediction for annotated clip(s)", tuple(sorted(missing))
        )
    extra = predicted - annotated
    if extra:
        raise CoverageError(
            f"{what} prediction for unannotated clip(s)", tuple(sorted(extra))
        )


def oscc_accuracy(preds: Mapping[str, bool], ds: Dataset) -> MetricsReport:
    """Fraction of clips whose predicted state-change label is correct."""
    _check_coverage(set(preds), set(ds.oscc), "state-change")
    if not ds.oscc:
        raise EmptyInputError("no state-change annotations to evaluate")
    correct = sum(1 for clip_id, ann in ds.oscc.items() if preds[clip_id] == ann.state_change)
    return MetricsReport(task="oscc", n_clips=len(ds.oscc), headline=correct / len(ds.oscc))


def _clip_errors(preds: Mapping[str, PnrPrediction], ds: Dataset) -> dict[str, float]:
    _check_coverage(set(preds), set(ds.pnr), "localization")
    if not ds.pnr:
        raise EmptyInputError("no state-change frame annotations to evaluate")
    errors = {}
    for clip_id, ann in ds.pnr.items():
        truth = ann.positive_frame / ds.clips[clip_id].fps
        errors[clip_id] = abs(preds[clip_id].time_sec - truth)
    return errors


def pnr_mae(preds: Mapping[str, PnrPrediction], ds: Dataset) -> MetricsReport:
    """Mean absolute localization error in seconds."""
    errors = _clip_errors(preds, ds)
    return MetricsReport(
        task="pnr",
        n_clips=len(errors),
        headline=math.fsum(errors.values()) / len(errors),
    )


def per_position_error(
    preds: Mapping[str, PnrPrediction], ds: Dataset, bins: int = 10
) -> MetricsReport:
    """Localization error broken down by ground-truth clip position.

    Clips group by the fractional position of their true state-change
    frame, using the same bin rule as the position histogram.  The
    report's headline is aggregated from the bin means with counts as
    weights, so the weighted-mean identity holds exactly.
    """
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")
    errors = _clip_errors(preds, ds)
    grouped: list[list[float]] = [[] for _ in range(bins)]
    for clip_id, err in errors.items():
        ann = ds.pnr[clip_id]
        fraction = frame_to_fraction(ann.positive_frame, ds.clips[clip_id].num_frames)
        grouped[bin_index(fraction, bins)].append(err)

    per_bin = tuple(
        BinError(
            lo=k / bins,
            hi=(k + 1) / bins,
            count=len(grouped[k]),
            mean_error_sec=math.fsum(grouped[k]) / len(grouped[k]) if grouped[k] else None,
        )
        for k in range(bins)
    )
    headline = (
        math.fsum(b.mean_error_sec * b.count for b in per_bin if b.count) / len(errors)
    )
    return MetricsReport(task="pnr", n_clips=len(errors), headline=headline, per_bin=per_bin)


def render_report(report: MetricsReport) -> str:
    """Plain-text table form of a report."""
    name = "accuracy" if report.task == "oscc" else "mae_sec"
    lines = [
        f"task: {report.task}",
        f"clips: {report.n_clips}",
        f"{name}: {report.headline:.6f}",
    ]
    if report.per_bin is not None:
        lines.append("bin          count  mean_error_sec")
        for b in report.per_bin:
            mean = f"{b.mean_error_sec:.6f}" if b.mean_error_sec is not None else "-"
            lines.append(f"[{b.lo:.2f},{b.hi:.2f})  {b.count:>5d}  {mean}")
    return "\n".join(lines) + "\n"


def report_to_json(report: MetricsReport) -> str:
    """Machine-readable single-record form of a report."""
    record: dict = {
        "task": report.task,
        "n_clips": report.n_clips,
        "headline": report.headline,
    }
    if report.per_bin is not None:
        record["per_bin"] = [
            {"lo": b.lo, "hi": b.hi, "count": b.count, "mean_error_sec": b.mean_error_sec}
            for b in report.per_bin
        ]
    return json.dumps(record) + "\n"


def error_plot_data(report: MetricsReport) -> str:
    """Per-bin TSV: bin center, mean error in seconds, count."""
    if report.per_bin is None:
        raise EmptyInputError("report carries no per-bin data")
    rows = ["# bin_center\tmean_error_sec\tcount"]
    for b in report.per_bin:
        mean = f"{b.mean_error_sec:.6f}" if b.mean_error_sec is not None else "nan"
        rows.append(f"{(b.lo + b.hi) / 2:.6f}\t{mean}\t{b.count}")
    return "\n".join(rows) + "\n"
