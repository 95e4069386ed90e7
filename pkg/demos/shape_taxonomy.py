"""
Shapes of the published response distributions
===============================================

Each beta density falls into one of a handful of shape classes decided by
where alpha and beta sit relative to 1. Classifier responses are almost
never bell shaped: they pile up at one or both ends.
"""

from betaroc import classify_shape
from betaroc.reference_fits import COLUMNS, ROWS, reference_params

# One line per table entry: parameters, fine class, coarse class.
print(f"{'':8s}" + "".join(f"{c:>24s}" for c in COLUMNS))
for row in ROWS:
    cells = []
    for col in COLUMNS:
        p = reference_params(row, col)
        s = classify_shape(p)
        cells.append(f"({p.alpha:.2f},{p.beta:.2f}) {s.fine.value:>9s}")
    print(f"{row:8s}" + "".join(f"{c:>24s}" for c in cells))

# %%
# Swapping alpha and beta mirrors the density about 1/2, so J becomes
# reverse-J and U stays U.
p = reference_params("imp0", "ann-within")
print(p, classify_shape(p).fine.value, "->", p.swapped(), classify_shape(p.swapped()).fine.value)
