"""Detecting and extracting k-vertex paths on small graphs.

Run with ``python3 demos/02_detecting_paths.py``.
"""

import numpy as np

from kpath import detect, find, generate_instance, is_simple_path
from kpath.graph import grid_graph, star_graph
from kpath.oracle import brute_force_kpath, count_k_walks
from kpath.paths import trial_outcomes, walk_sum

# %% A grid has long paths; a star has none with more than three vertices.
grid = grid_graph(3, 4)
star = star_graph(5)
for name, g in (("grid 3x4", grid), ("star", star)):
    answers = {k: detect(g, k).answer for k in range(2, 8)}
    print(name, answers)

# %% A single trial succeeds with probability above 1/5 on yes-instances;
# detect repeats trials until one succeeds.
g = generate_instance("hampath", 8, 0.0, seed=3)
rates = trial_outcomes(g, 8, 2000, seed=1)
print(f"hidden Hamiltonian path, k=8: per-trial rate {rates.mean():.3f}")
d = detect(g, 8)
print("decision:", d)

# %% A no-answer from a single trial is never wrong in the other direction:
# without a k-path every trial evaluates to zero.
print("star, k=4, 2000 trials, any yes?", bool(trial_outcomes(star, 4, 2000).any()))

# %% Extraction removes vertices while a path survives, then orders the rest.
g = generate_instance("random", 14, 0.25, seed=11)
for k in (5, 8, 11):
    path = find(g, k, seed=k)
    ok = path is not None and is_simple_path(g, path, k)
    print(f"k={k}: {path} verified={ok} exact={brute_force_kpath(g, k) is not None}")

# %% With every variable set to one, the walk polynomial just counts walks.
print("walks on 4 vertices:", walk_sum(grid, 4), count_k_walks(grid, 4))
print("adjacency power check:", int(np.ones(12) @ np.linalg.matrix_power(grid.adjacency.astype(int), 3) @ np.ones(12)))
