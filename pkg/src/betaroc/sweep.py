"""Synthetic datasets and dense sweeps over the four beta parameters.

Each sweep cell is one client/imposter parameter quadruple. Analytic
fields (shapes, extremal limits, theoretical AUC) depend only on the
parameters; when ``n_per_cell > 0`` the cell also samples a synthetic
dataset and records the maximum-likelihood round trip.

Cell ``k`` (row-major over ``alpha1, beta1, alpha2, beta2``) draws client
scores from sub-seed ``derive_seed(seed, k, 0)`` and imposter scores from
``derive_seed(seed, k, 1)`` (SplitMix64 mixing, see :mod:`betaroc.rng`),
so cells can be evaluated in any order or in parallel.

Round-trip fits clamp at ``SYNTHETIC_CLAMP_EPSILON`` rather than the
1e-6 used for classifier output: synthetic draws never sit exactly on
0 or 1, and a coarse clamp visibly biases fits of shapes below about 0.2.
"""

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import as_pair, extremal_analysis, theoretical_auc
from .beta import BetaPair, classify_shape, sample
from .errors import BetaRocError, DomainError
from .fitting import FitConfig, fit_mle
from .ingest import LabeledScores
from .rng import derive_seed

__all__ = ["SweepGrid", "SweepRow", "generate_dataset", "run_sweep", "iter_sweep",
           "write_sweep_csv", "SWEEP_COLUMNS", "RECOVERY_COLUMNS", "parse_axis",
           "SYNTHETIC_CLAMP_EPSILON"]

SWEEP_COLUMNS = ("alpha1", "beta1", "alpha2", "beta2", "client_shape",
                 "imposter_shape", "slope0", "slope1", "above0", "above1", "auc")
SYNTHETIC_CLAMP_EPSILON = 1e-12
RECOVERY_COLUMNS = ("rec_alpha1", "rec_beta1", "rec_alpha2", "rec_beta2",
                    "rec_converged", "error")


def generate_dataset(pair, n_c, n_i, seed):
    """Seeded synthetic scores for a client/imposter pair.

    The two classes use decorrelated sub-seeds of ``seed``.
    """
    if n_c < 1 or n_i < 1:
        raise DomainError("both classes need at least one sample")
    pair = as_pair(pair)
    clients = sample(pair.client, n_c, derive_seed(seed, 0))
    imposters = sample(pair.imposter, n_i, derive_seed(seed, 1))
    return LabeledScores(clients, imposters, source=f"synthetic:seed={int(seed)}")


def parse_axis(text):
    """Parse ``"0.5,1.5"`` or ``"start:stop:step"`` (stop inclusive).

    >>> parse_axis("0.1:0.5:0.1")
    [0.1, 0.2, 0.3, 0.4, 0.5]
    """
    text = str(text).strip()
    if not text:
        raise ValueError("empty axis specification")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"invalid range {text!r}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        # Round away the accumulation noise of start + k * step.
        values = [round(start + k * step, 12) for k in range(count)]
    else:
        values = [float(p) for p in text.split(",") if p.strip()]
    if not values or any(not v > 0 for v in values):
        raise ValueError(f"axis values must be positive, got {text!r}")
    return values


@dataclass(frozen=True)
class SweepGrid:
    alpha1: tuple
    beta1: tuple
    alpha2: tuple
    beta2: tuple
    seed: int = 0
    n_per_cell: int = 0
    shape_tol: float = 1e-9
    clamp_epsilon: float = SYNTHETIC_CLAMP_EPSILON

    def __post_init__(self):
        for name in ("alpha1", "beta1", "alpha2", "beta2"):
            axis = tuple(float(v) for v in getattr(self, name))
            if not axis:
                raise DomainError(f"axis {name} is empty")
            if any(not v > 0 for v in axis):
                raise DomainError(f"axis {name} has non-positive values")
            object.__setattr__(self, name, axis)
        if self.n_per_cell < 0:
            raise DomainError("n_per_cell must be >= 0")
        FitConfig(clamp_epsilon=self.clamp_epsilon)  # validates the range

    def fit_config(self):
        return FitConfig(clamp_epsilon=self.clamp_epsilon)

    def cells(self):
        return itertools.product(self.alpha1, self.beta1, self.alpha2, self.beta2)

    def __len__(self):
        return len(self.alpha1) * len(self.beta1) * len(self.alpha2) * len(self.beta2)


@dataclass(frozen=True)
class SweepRow:
    index: int
    params: tuple
    client_shape: object
    imposter_shape: object
    extremal: object
    theoretical_auc: float
    recovered_params: tuple = None
    recovered_converged: bool = None
    error: str = None

    def as_record(self):
        ext = self.extremal
        rec = {
            "alpha1": self.params[0], "beta1": self.params[1],
            "alpha2": self.params[2], "beta2": self.params[3],
            "client_shape": self.client_shape.fine.value,
            "imposter_shape": self.imposter_shape.fine.value,
            "slope0": ext.slope_limit_at_0.value,
            "slope1": ext.slope_limit_at_1.value,
            "above0": ext.above_diagonal_near_0,
            "above1": ext.above_diagonal_near_1,
            "auc": self.theoretical_auc,
        }
        if self.recovered_params is not None:
            rec.update(zip(RECOVERY_COLUMNS[:4], self.recovered_params))
        rec["rec_converged"] = self.recovered_converged
        rec["error"] = self.error
        return rec


def _evaluate_cell(grid, index, params):
    a1, b1, a2, b2 = params
    pair = BetaPair.from_values(a1, b1, a2, b2)
    row = dict(
        index=index,
        params=params,
        client_shape=classify_shape(pair.client, grid.shape_tol),
        imposter_shape=classify_shape(pair.imposter, grid.shape_tol),
        extremal=extremal_analysis(pair),
        theoretical_auc=theoretical_auc(pair),
    )
    if grid.n_per_cell > 0:
        n = grid.n_per_cell
        try:
            c = sample(pair.client, n, derive_seed(grid.seed, index, 0))
            i = sample(pair.imposter, n, derive_seed(grid.seed, index, 1))
            cfg = grid.fit_config()
            fc = fit_mle(c, cfg)
            fi = fit_mle(i, cfg)
            row["recovered_params"] = (fc.alpha, fc.beta, fi.alpha, fi.beta)
            row["recovered_converged"] = fc.converged and fi.converged
        except BetaRocError as exc:
            row["error"] = str(exc)
    return SweepRow(**row)


def _evaluate_chunk(args):
    grid, chunk = args
    return [_evaluate_cell(grid, k, p) for k, p in chunk]


def iter_sweep(grid, workers=1, chunk_size=64):
    """Yield :class:`SweepRow` objects in grid order.

    With ``workers > 1`` chunks of cells are evaluated in a process pool;
    results are still yielded in grid order.
    """
    cells = enumerate(grid.cells())
    if workers <= 1:
        for k, p in cells:
            yield _evaluate_cell(grid, k, p)
        return
    chunks = iter(lambda: list(itertools.islice(cells, chunk_size)), [])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for rows in pool.map(_evaluate_chunk, ((grid, c) for c in chunks)):
            yield from rows


def run_sweep(grid, workers=1):
    """Evaluate every cell of ``grid``; one row per cell, in grid order."""
    return list(iter_sweep(grid, workers=workers))


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_sweep_csv(rows, fh, with_recovery=False):
    """Stream rows to ``fh`` as CSV; returns the number of rows written."""
    columns = list(SWEEP_COLUMNS)
    if with_recovery:
        columns += RECOVERY_COLUMNS
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    count = 0
    for row in rows:
        rec = row.as_record()
        writer.writerow([_fmt(rec.get(c)) for c in columns])
        count += 1
    return count


def sweep_to_csv(grid, workers=1):
    """Whole sweep as a CSV string (convenience for small grids)."""
    buf = io.StringIO()
    write_sweep_csv(iter_sweep(grid, workers), buf, with_recovery=grid.n_per_cell > 0)
    return buf.getvalue()
