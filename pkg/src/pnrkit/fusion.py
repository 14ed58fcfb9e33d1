"""Score-level fusion across heterogeneous scorers.

Classification probabilities fuse by arithmetic mean.  Window series
fuse on the union of the input window geometries: each series
contributes, at every union point, the confidence of its own window
whose center lies nearest that point's center, and the fused confidence
is the mean of the contributions.  When all series share one geometry
this reduces to plain per-window averaging.  Fusion is score-level
only; downstream selection runs on the fused series unchanged.
"""

from __future__ import annotations

import math
from typing import Sequence

from pnrkit.errors import DomainError, EmptyInputError, ValidationError
from pnrkit.model import (
    Clip,
    FrameWindow,
    ScoredWindow,
    ScoreSeries,
    ensure_window_in_clip,
    window_center_frame,
)

# A fused series is an ordinary score series whose windows are the union
# of the inputs' geometries, sorted by center; it feeds select_pnr and
# the score emitter unchanged.
FusedSeries = ScoreSeries


def _mean(values: Sequence[float]) -> float:
    # fsum makes the result independent of argument order; the clamp
    # repairs the final rounding, which can drift one ulp outside the
    # value range (e.g. three equal values)
    mean = math.fsum(values) / len(values)
    return min(max(mean, min(values)), max(values))


def fuse_oscc(probs: Sequence[float]) -> float:
    """Arithmetic mean of state-change probabilities (>= 0.5 means change)."""
    if len(probs) == 0:
        raise EmptyInputError("no probabilities to fuse")
    for p in probs:
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"probability must be in [0, 1], got {p}")
    return _mean(probs)


def _sort_key(window: FrameWindow) -> tuple[float, int, int]:
    return (window_center_frame(window), window.start, window.end)


def _nearest_confidence(series: ScoreSeries, point_center: float) -> float:
    best = min(
        series.windows,
        key=lambda sw: (
            abs(window_center_frame(sw.window) - point_center),
            window_center_frame(sw.window),
            sw.window.start,
            sw.window.end,
        ),
    )
    return best.confidence


def fuse_pnr(series_list: Sequence[ScoreSeries], clip: Clip | None = None) -> FusedSeries:
    """Fuse window series from several scorers for one clip.

    Evaluation points are the union of all input windows, deduplicated
    by (start, end) and sorted by center.  Each series contributes the
    confidence of its own window with the nearest center (ties broken
    toward the earlier window); contributions average into the fused
    confidence.  Passing the clip additionally bounds-checks every
    window.  The result does not depend on the order of the series.
    """
    if len(series_list) == 0:
        raise EmptyInputError("no series to fuse")
    clip_id = series_list[0].clip_id
    for series in series_list:
        if series.clip_id != clip_id:
            raise ValidationError(
                f"cannot fuse series for clips {clip_id!r} and {series.clip_id!r}"
            )
        if not series.windows:
            raise EmptyInputError(f"clip {clip_id!r}: a series has no windows")
        if clip is not None:
            for sw in series.windows:
                ensure_window_in_clip(sw.window, clip)
    if clip is not None and clip.clip_id != clip_id:
        raise ValidationError(
            f"series are for clip {clip_id!r}, not {clip.clip_id!r}"
        )

    union: dict[tuple[int, int], FrameWindow] = {}
    for series in series_list:
        for sw in series.windows:
            union.setdefault((sw.window.start, sw.window.end), sw.window)
    points = sorted(union.values(), key=_sort_key)

    fused = []
    for point in points:
        center = window_center_frame(point)
        contributions = [_nearest_confidence(series, center) for series in series_list]
        fused.append(ScoredWindow(point, _mean(contributions)))
    return ScoreSeries(clip_id, tuple(fused))
