"""How detection time grows with k on a fixed random graph.

Run with ``python3 demos/04_scaling.py`` (about a minute).  The same table is
available from the command line as ``kpath bench``.
"""

import math

from kpath.cli import bench_rows

# %% Each step in k should roughly double the time once fixed costs fade.
g, rows = bench_rows("random", 60, 0.2, range(8, 16), repeats=3, rate_trials=8)
print(f"G(60, 0.2) with {g.m} edges")
for r in rows:
    ratio = "" if math.isnan(r["log2_ratio"]) else f"{r['log2_ratio']:+.2f}"
    print(f"k={r['k']:2d}  {r['median_s'] * 1000:8.1f} ms  rate {r['trial_rate']:.2f}  log2 ratio {ratio}")
