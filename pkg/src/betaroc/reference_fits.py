"""Published beta fits of face-liveness classifier responses.

Maximum-likelihood ``(alpha, beta)`` estimates for two classifiers
(sparse logistic regression, a one-hidden-layer ANN), each trained with a
cross-subject and a within-subject protocol. Client responses are shared
across test sets; imposter test sets were sharpened by 0, 1, 5 and 50.

The values are used as regression fixtures and as ground truth for
synthetic data, not as targets for digit-level reproduction.
"""

from .beta import BetaPair, BetaParams

__all__ = ["COLUMNS", "ROWS", "IMPOSTER_ROWS", "REFERENCE_FITS", "reference_params",
           "reference_pair", "reference_pairs"]

COLUMNS = ("slr-cross", "slr-within", "ann-cross", "ann-within")
ROWS = ("client", "imp0", "imp1", "imp5", "imp50")
IMPOSTER_ROWS = ROWS[1:]

REFERENCE_FITS = {
    "client": ((0.47, 0.36), (3.27, 0.67), (0.61, 0.27), (1.47, 0.29)),
    "imp0": ((0.77, 1.91), (0.71, 5.04), (0.18, 1.66), (0.24, 17.5)),
    "imp1": ((0.59, 1.36), (0.57, 5.39), (0.18, 1.63), (0.23, 17.8)),
    "imp5": ((0.34, 0.70), (0.30, 4.26), (0.17, 1.38), (0.21, 14.2)),
    "imp50": ((0.22, 0.39), (0.13, 1.39), (0.14, 1.12), (0.17, 1.79)),
}


def reference_params(row, column):
    """:class:`BetaParams` of one table entry, e.g. ``("imp0", "ann-within")``."""
    return BetaParams(*REFERENCE_FITS[row][COLUMNS.index(column)])


def reference_pair(column, imposter_row):
    """Client/imposter pair for one column and sharpening level."""
    if imposter_row not in IMPOSTER_ROWS:
        raise KeyError(f"unknown imposter row {imposter_row!r}")
    return BetaPair(reference_params("client", column),
                    reference_params(imposter_row, column))


def reference_pairs():
    """All 16 ``((column, imposter_row), BetaPair)`` combinations."""
    return [((col, row), reference_pair(col, row))
            for col in COLUMNS for row in IMPOSTER_ROWS]
