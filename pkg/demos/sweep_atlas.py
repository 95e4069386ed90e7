"""
An atlas of shape and extremal categories
=========================================

Sweep all four parameters over a small grid and count how often each
combination of shapes and end-point behaviour occurs.
"""

from collections import Counter

from betaroc import SweepGrid, run_sweep

axis = (0.3, 0.7, 1.5, 4.0)
rows = run_sweep(SweepGrid(axis, axis, axis, axis))
print(len(rows), "cells")

counts = Counter((r.client_shape.fine.value, r.imposter_shape.fine.value,
                  r.extremal.above_diagonal_near_0, r.extremal.above_diagonal_near_1)
                 for r in rows)
for (cs, ims, a0, a1), n in counts.most_common(10):
    print(f"{cs:9s} vs {ims:9s} above@0={a0!s:5s} above@1={a1!s:5s} {n:4d}")

# %%
# With n_per_cell > 0 every cell also samples data and refits it.
small = SweepGrid((0.5, 3.0), (2.0,), (0.4,), (8.0,), seed=1, n_per_cell=5000)
for r in run_sweep(small):
    print(r.params, "->", tuple(round(v, 3) for v in r.recovered_params))
