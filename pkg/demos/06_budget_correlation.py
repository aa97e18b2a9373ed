"""Correlate budget with box-office earnings and draw the scatter plots.

Run: python3 demos/06_budget_correlation.py [output-dir]
"""

import sys
import tempfile
from pathlib import Path

from moviepop.correlation import (EARNINGS, budget_series, correlate_dataset2, render_correlation, scatter_plot,
                                  trend_line)

from _corpus import dataset

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="moviepop-plots-"))
data = dataset(2)

print(render_correlation(correlate_dataset2(data)))

for other in EARNINGS:
    series = budget_series(data, other)
    trend = trend_line(series)
    svg, points = scatter_plot(series, trend, out / f"budget_vs_{other}.svg", title=f"Budget vs {other}")
    print(f"{other:<10} slope {trend.slope:.3f}  ->  {svg}  ({points.name})")
