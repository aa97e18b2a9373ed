"""Budget-versus-earnings correlation, least-squares trend lines and SVG plots."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .dataset import Dataset
from .errors import UndefinedCorrelationError

EARNINGS = ("domestic", "foreign", "worldwide")

SVG_WIDTH, SVG_HEIGHT = 800, 600
MARGIN = 0.10


def _is_missing(v) -> bool:
    return v is None or (isinstance(v, float) and math.isnan(v))


@dataclass(frozen=True)
class PairedSeries:
    x: tuple[float, ...]
    y: tuple[float, ...]
    x_label: str = "x"
    y_label: str = "y"

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y differ in length")

    @classmethod
    def from_values(cls, x: Sequence, y: Sequence, x_label="x", y_label="y") -> "PairedSeries":
        """Pairs with a missing member are dropped."""
        if len(x) != len(y):
            raise ValueError("x and y differ in length")
        pairs = [(float(a), float(b)) for a, b in zip(x, y) if not _is_missing(a) and not _is_missing(b)]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), x_label, y_label)

    def __len__(self):
        return len(self.x)


def _centered(values: Sequence[float]) -> list[float]:
    mean = math.fsum(values) / len(values)
    return [v - mean for v in values]


def pearson(series: PairedSeries) -> float:
    """Sample Pearson coefficient, computed two-pass on mean-centred values."""
    if len(series) < 2:
        raise UndefinedCorrelationError(f"need at least 2 pairs, got {len(series)}")
    dx, dy = _centered(series.x), _centered(series.y)
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    if sxx == 0 or syy == 0:
        raise UndefinedCorrelationError("correlation of a constant variable")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class TrendLine:
    slope: float
    intercept: float

    def __call__(self, x: float) -> float:
        return self.slope * x + self.intercept


def trend_line(series: PairedSeries) -> TrendLine:
    """Ordinary least-squares fit of y on x."""
    if len(series) < 1:
        raise UndefinedCorrelationError("trend line of an empty series")
    dx, dy = _centered(series.x), _centered(series.y)
    sxx = math.fsum(a * a for a in dx)
    if sxx == 0:
        raise UndefinedCorrelationError("trend line needs a non-constant x")
    slope = math.fsum(a * b for a, b in zip(dx, dy)) / sxx
    intercept = math.fsum(series.y) / len(series) - slope * math.fsum(series.x) / len(series)
    return TrendLine(slope, intercept)


def direction(r: float | None) -> str:
    if r is None or r == 0:
        return "none"
    return "positive" if r > 0 else "negative"


@dataclass(frozen=True)
class CorrelationPair:
    x_name: str
    y_name: str
    r: float | None
    direction: str
    n: int


@dataclass(frozen=True)
class CorrelationReport:
    pairs: tuple[CorrelationPair, ...]


def budget_series(dataset: Dataset, other: str) -> PairedSeries:
    return PairedSeries.from_values(dataset.column("budget"), dataset.column(other), "budget", other)


def correlate_dataset2(dataset: Dataset) -> CorrelationReport:
    """Correlate budget with each earnings column; undefined pairs get ``r=None``."""
    for name in ("budget",) + EARNINGS:
        dataset.index(name)
    pairs = []
    for other in EARNINGS:
        series = budget_series(dataset, other)
        try:
            r = pearson(series)
        except UndefinedCorrelationError:
            r = None
        pairs.append(CorrelationPair("budget", other, r, direction(r), len(series)))
    return CorrelationReport(tuple(pairs))


def render_correlation(report: CorrelationReport, format: str = "plain") -> str:
    if format == "json":
        data = {"pairs": [
            {"x": p.x_name, "y": p.y_name, "r": p.r, "direction": p.direction, "n": p.n}
            for p in report.pairs
        ]}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    lines = [f"{'Attribute names':<24}{'Correlation coefficient':>25}{'Correlation':>13}{'n':>7}"]
    for p in report.pairs:
        r = "undefined" if p.r is None else f"{p.r:.4f}"
        lines.append(f"{p.x_name.capitalize() + ' + ' + p.y_name.capitalize():<24}{r:>25}"
                     f"{p.direction.capitalize():>13}{p.n:>7}")
    return "\n".join(lines) + "\n"


def nice_number(x: float, round_: bool) -> float:
    """Closest 1, 2, 5 or 10 times a power of ten (Heckbert's nice numbers)."""
    if x <= 0:
        return 1.0
    exp = math.floor(math.log10(x))
    f = x / 10 ** exp
    if round_:
        nf = 1 if f < 1.5 else 2 if f < 3 else 5 if f < 7 else 10
    else:
        nf = 1 if f <= 1 else 2 if f <= 2 else 5 if f <= 5 else 10
    return nf * 10 ** exp


def nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        pad = abs(lo) * 0.5 or 1.0
        lo, hi = lo - pad, hi + pad
    step = nice_number(nice_number(hi - lo, False) / (count - 1), True)
    start = math.floor(lo / step) * step
    stop = math.ceil(hi / step) * step
    n = int(round((stop - start) / step))
    return [start + i * step for i in range(n + 1)]


def _tick_label(v: float) -> str:
    a = abs(v)
    for scale, suffix in ((1e9, "G"), (1e6, "M"), (1e3, "k")):
        if a >= scale:
            return f"{v / scale:g}{suffix}"
    return f"{v:g}"


def render_svg(series: PairedSeries, trend: TrendLine | None = None, title: str | None = None,
               comment: str | None = None) -> str:
    """Static SVG scatter plot.

    Contains exactly one ``<circle>`` per pair and, when ``trend`` is given,
    exactly one ``<line>`` spanning the x-range of the data. Axes and ticks
    are drawn as a single ``<path>``.
    """
    if not len(series):
        raise ValueError("cannot plot an empty series")
    xs, ys = series.x, series.y
    x0, x1 = min(xs), max(xs)
    y_extent = list(ys)
    if trend is not None:
        y_extent += [trend(x0), trend(x1)]
    xt = nice_ticks(x0, x1)
    yt = nice_ticks(min(y_extent), max(y_extent))
    left, right = SVG_WIDTH * MARGIN, SVG_WIDTH * (1 - MARGIN)
    top, bottom = SVG_HEIGHT * MARGIN, SVG_HEIGHT * (1 - MARGIN)

    def px(v):
        return left + (v - xt[0]) / (xt[-1] - xt[0]) * (right - left)

    def py(v):
        return bottom - (v - yt[0]) / (yt[-1] - yt[0]) * (bottom - top)

    axis = [f"M{left:.2f},{top:.2f}V{bottom:.2f}H{right:.2f}"]
    axis += [f"M{px(v):.2f},{bottom:.2f}v6" for v in xt]
    axis += [f"M{left:.2f},{py(v):.2f}h-6" for v in yt]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
    ]
    if comment:
        out.append(f"<!-- {escape(comment).replace('--', '- -')} -->")
    out.append(f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>')
    if title:
        out.append(f'<text x="{SVG_WIDTH / 2:.2f}" y="{top / 2:.2f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="18">{escape(title)}</text>')
    out.append(f'<path d="{"".join(axis)}" stroke="black" fill="none" stroke-width="1"/>')
    out.append('<g font-family="sans-serif" font-size="12">')
    for v in xt:
        out.append(f'<text x="{px(v):.2f}" y="{bottom + 20:.2f}" text-anchor="middle">{_tick_label(v)}</text>')
    for v in yt:
        out.append(f'<text x="{left - 10:.2f}" y="{py(v) + 4:.2f}" text-anchor="end">{_tick_label(v)}</text>')
    out.append(f'<text x="{(left + right) / 2:.2f}" y="{SVG_HEIGHT - 15:.2f}" '
               f'text-anchor="middle">{escape(series.x_label)}</text>')
    out.append(f'<text x="20" y="{(top + bottom) / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {(top + bottom) / 2:.2f})">{escape(series.y_label)}</text>')
    out.append("</g>")
    out.append('<g fill="steelblue" fill-opacity="0.7">')
    for a, b in zip(xs, ys):
        out.append(f'<circle cx="{px(a):.2f}" cy="{py(b):.2f}" r="3"/>')
    out.append("</g>")
    if trend is not None:
        out.append(f'<line x1="{px(x0):.2f}" y1="{py(trend(x0)):.2f}" x2="{px(x1):.2f}" '
                   f'y2="{py(trend(x1)):.2f}" stroke="firebrick" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def scatter_plot(series: PairedSeries, trend: TrendLine | None, path, title: str | None = None,
                 comment: str | None = None) -> tuple[Path, Path]:
    """Write ``path`` (SVG) and a companion CSV of the plotted points next to it."""
    path = Path(path)
    svg = render_svg(series, trend, title, comment)
    csv_path = path.with_suffix(".csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg, encoding="utf-8")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([series.x_label, series.y_label])
        writer.writerows((repr(a), repr(b)) for a, b in zip(series.x, series.y))
    return path, csv_path
