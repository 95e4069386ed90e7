"""
Where does the ROC curve cross the diagonal?
============================================

Near the ends of the ROC curve the slope behaves like a power of the
threshold, so it tends to zero or to infinity depending only on how the
alphas (at 0) and betas (at 1) of the two classes compare.
"""

import numpy as np

from betaroc import (empirical_auc, extremal_analysis, generate_dataset, roc_slope,
                     theoretical_auc)
from betaroc.reference_fits import reference_pairs

for (col, row), pair in reference_pairs():
    e = extremal_analysis(pair)
    print(f"{col:10s} {row:5s} slope@0={e.slope_limit_at_0.value:14s} "
          f"slope@1={e.slope_limit_at_1.value:14s} "
          f"above near 0: {e.above_diagonal_near_0!s:5s} near 1: {e.above_diagonal_near_1}")

# %%
# The slope at thresholds approaching 0, for one of the two pairs whose
# curve dips below the diagonal there.
pair = dict(reference_pairs())[("slr-cross", "imp0")]
for t in np.logspace(-1, -6, 6):
    print(f"t={t:.0e}  dTPR/dFPR={roc_slope(pair, t):.4g}")

# %%
# Fitted-model AUC against the empirical AUC of a large synthetic sample.
data = generate_dataset(pair, 100_000, 100_000, seed=3)
print("theoretical AUC", round(theoretical_auc(pair), 4))
print("empirical AUC  ", round(empirical_auc(data.clients, data.imposters), 4))
