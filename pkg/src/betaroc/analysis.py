"""ROC curves, AUC, KS, threshold metrics and extremal ROC behaviour.

Orientation
-----------
The imposter class is the positive class and a response is predicted
positive when it is at or below the threshold ``t``. Hence

    TPR(t) = F_imposter(t),    FPR(t) = F_client(t)

and the slope of the theoretical ROC curve at threshold ``x`` is
``f_imposter(x) / f_client(x)``, proportional to
``x**(a2 - a1) * (1 - x)**(b2 - b1)`` with ``(a1, b1)`` the client and
``(a2, b2)`` the imposter parameters. Passing ``positive_below=False``
flips the rule (positive when the response is at or above ``t``), which
is the same as analysing ``1 - response``.
"""

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .beta import BetaPair, BetaParams, cdf_array, quantile
from .errors import DomainError, InputError
from .special import log_beta, reg_inc_beta

__all__ = [
    "RocKind", "RocCurve", "SlopeLimit", "ExtremalReport", "ConfusionCounts",
    "ThresholdMetrics", "empirical_roc", "empirical_auc", "theoretical_roc",
    "roc_slope", "extremal_analysis", "confusion_counts", "threshold_metrics",
    "ks_statistic", "theoretical_auc", "trapezoid_area", "as_pair",
    "EXPONENT_TOL", "DEFAULT_ROC_GRID",
]

EXPONENT_TOL = 1e-9
DEFAULT_ROC_GRID = 1001
_PERCENTILES = np.arange(1, 100) / 100.0


class RocKind(str, enum.Enum):
    EMPIRICAL = "Empirical"
    THEORETICAL = "Theoretical"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RocCurve:
    """Ordered ``(fpr, tpr)`` points from ``(0, 0)`` to ``(1, 1)``."""

    fpr: np.ndarray
    tpr: np.ndarray
    kind: RocKind
    thresholds: np.ndarray = None

    @property
    def points(self):
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))

    def area(self):
        return trapezoid_area(self.fpr, self.tpr)

    def __len__(self):
        return len(self.fpr)


class SlopeLimit(str, enum.Enum):
    ZERO = "Zero"
    INFINITE = "Infinite"
    FINITE_POSITIVE = "FinitePositive"

    def __str__(self):
        return self.value

    def transposed(self):
        if self is SlopeLimit.ZERO:
            return SlopeLimit.INFINITE
        if self is SlopeLimit.INFINITE:
            return SlopeLimit.ZERO
        return self


@dataclass(frozen=True)
class ExtremalReport:
    """One-sided limits of the ROC slope at thresholds 0 and 1.

    ``exponent_at_0`` is ``alpha1 - alpha2`` (positive means an infinite
    slope at 0); ``exponent_at_1`` is ``beta2 - beta1`` (positive means a
    zero slope at 1).
    """

    slope_limit_at_0: SlopeLimit
    slope_limit_at_1: SlopeLimit
    above_diagonal_near_0: bool
    above_diagonal_near_1: bool
    exponent_at_0: float
    exponent_at_1: float


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self):
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class ThresholdMetrics:
    """TPR, PPV and F1 at one threshold; ``None`` marks an undefined value."""

    threshold: float
    counts: ConfusionCounts
    tpr: float
    ppv: float = None
    f1: float = None


def as_pair(pair):
    """Accept a :class:`BetaPair`, a fitted pair, a 4-tuple or two (alpha, beta) pairs."""
    if hasattr(pair, "as_pair"):
        return pair.as_pair()
    if isinstance(pair, (tuple, list)) and len(pair) == 4:
        return BetaPair.from_values(*pair)
    if isinstance(pair, (tuple, list)) and len(pair) == 2:
        return BetaPair(*(p if isinstance(p, BetaParams) else BetaParams(*p) for p in pair))
    raise TypeError(f"cannot interpret {pair!r} as a client/imposter pair")


def _oriented_pair(pair, positive_below):
    pair = as_pair(pair)
    if positive_below:
        return pair
    return BetaPair(pair.client.swapped(), pair.imposter.swapped())


def _scores(values, label, positive_below=True):
    x = np.asarray(values, dtype=float).ravel()
    if x.size == 0:
        raise InputError(f"{label} scores are empty")
    if not np.all(np.isfinite(x)):
        raise InputError(f"{label} scores contain non-finite values")
    return x if positive_below else 1.0 - x


def trapezoid_area(fpr, tpr):
    """Trapezoidal area under a polyline."""
    fpr = np.asarray(fpr, dtype=float)
    tpr = np.asarray(tpr, dtype=float)
    return float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1])) / 2.0)


def empirical_roc(clients, imposters, positive_below=True):
    """Step ROC curve swept over every distinct score.

    At threshold ``t``: TPR is the fraction of imposters with score
    ``<= t`` and FPR the fraction of clients with score ``<= t``.
    """
    c = np.sort(_scores(clients, "client", positive_below))
    i = np.sort(_scores(imposters, "imposter", positive_below))
    thresholds = np.unique(np.concatenate([c, i]))
    fpr = np.searchsorted(c, thresholds, side="right") / c.size
    tpr = np.searchsorted(i, thresholds, side="right") / i.size
    fpr = np.concatenate([[0.0], fpr])
    tpr = np.concatenate([[0.0], tpr])
    thresholds = np.concatenate([[-np.inf], thresholds])
    return RocCurve(fpr, tpr, RocKind.EMPIRICAL, thresholds)


def empirical_auc(clients, imposters, positive_below=True):
    """Mann-Whitney AUC: P(client > imposter) + 0.5 P(client == imposter)."""
    c = _scores(clients, "client", positive_below)
    i = np.sort(_scores(imposters, "imposter", positive_below))
    below = np.searchsorted(i, c, side="left")
    not_above = np.searchsorted(i, c, side="right")
    # Integer count of (wins * 2 + ties), then a single division.
    twice = int(np.sum(below, dtype=np.int64)) + int(np.sum(not_above, dtype=np.int64))
    return twice / (2.0 * c.size * i.size)


def ks_statistic(clients, imposters):
    """Largest gap between the two empirical CDFs."""
    roc = empirical_roc(clients, imposters)
    return float(np.max(np.abs(roc.tpr - roc.fpr)))


def confusion_counts(clients, imposters, t, positive_below=True):
    c = _scores(clients, "client")
    i = _scores(imposters, "imposter")
    if positive_below:
        tp = int(np.count_nonzero(i <= t))
        fp = int(np.count_nonzero(c <= t))
    else:
        tp = int(np.count_nonzero(i >= t))
        fp = int(np.count_nonzero(c >= t))
    return ConfusionCounts(tp=tp, fp=fp, tn=c.size - fp, fn=i.size - tp)


def threshold_metrics(clients, imposters, t, positive_below=True):
    """TPR, PPV and F1 at threshold ``t`` (imposter = positive)."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"threshold must lie in [0, 1], got {t!r}")
    k = confusion_counts(clients, imposters, t, positive_below)
    tpr = k.tp / (k.tp + k.fn)
    if k.tp + k.fp == 0:
        return ThresholdMetrics(t, k, tpr)
    ppv = k.tp / (k.tp + k.fp)
    # Harmonic mean of TPR and PPV, written so that it is 0 (not 0/0)
    # when tp == 0.
    f1 = 2.0 * k.tp / (2.0 * k.tp + k.fp + k.fn)
    return ThresholdMetrics(t, k, tpr, ppv, f1)


def theoretical_roc(pair, grid=DEFAULT_ROC_GRID, positive_below=True):
    """ROC curve of the fitted distributions.

    Thresholds are ``grid`` uniformly spaced points in [0, 1] merged with
    the 1st..99th percentiles of both distributions, so that curves of
    J- and U-shaped densities are resolved near the endpoints.
    """
    if grid < 2:
        raise DomainError(f"grid must have at least 2 points, got {grid}")
    pair = _oriented_pair(pair, positive_below)
    ts = [np.linspace(0.0, 1.0, int(grid))]
    for p in (pair.client, pair.imposter):
        ts.append(np.array([quantile(p, q) for q in _PERCENTILES]))
    t = np.unique(np.clip(np.concatenate(ts), 0.0, 1.0))
    fpr = cdf_array(pair.client, t)
    tpr = cdf_array(pair.imposter, t)
    # Quantile round-off can produce microscopic non-monotonicity between
    # merged grids; the CDFs themselves are monotone.
    fpr = np.maximum.accumulate(fpr)
    tpr = np.maximum.accumulate(tpr)
    fpr[0] = tpr[0] = 0.0
    fpr[-1] = tpr[-1] = 1.0
    return RocCurve(fpr, tpr, RocKind.THEORETICAL, t)


def roc_slope(pair, x, normalized=True):
    """Slope dTPR/dFPR of the theoretical ROC curve at threshold ``x``.

    With ``normalized=False`` this is the bare power law
    ``x**(a2 - a1) * (1 - x)**(b2 - b1)``, which is the true slope up to
    the constant ``B(a1, b1) / B(a2, b2)``; the constant does not affect
    the limits at 0 and 1.
    """
    pair = as_pair(pair)
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(
            f"slope is only defined for 0 < x < 1 (got {x!r}); use extremal_analysis")
    c, i = pair.client, pair.imposter
    log_s = (i.alpha - c.alpha) * math.log(x) + (i.beta - c.beta) * math.log1p(-x)
    if normalized:
        log_s += log_beta(c.alpha, c.beta) - log_beta(i.alpha, i.beta)
    return math.exp(log_s)


def _limit(exponent, tol):
    # Slope behaves like s**(-exponent) as s -> 0+.
    if exponent > tol:
        return SlopeLimit.INFINITE
    if exponent < -tol:
        return SlopeLimit.ZERO
    return SlopeLimit.FINITE_POSITIVE


def extremal_analysis(pair, tol=EXPONENT_TOL):
    """Classify the ROC slope limits at thresholds 0 and 1.

    Near threshold 0 the slope behaves like ``x**(a2 - a1)``: infinite
    when ``a1 > a2`` (curve leaves the origin above the diagonal), zero
    when ``a1 < a2``. Near 1 it behaves like ``(1 - x)**(b2 - b1)``: zero
    when ``b1 < b2`` (curve reaches (1, 1) from above the diagonal),
    infinite when ``b1 > b2``. Exponents within ``tol`` of 0 give a finite
    positive limit and no above-diagonal verdict.
    """
    pair = as_pair(pair)
    e0 = pair.client.alpha - pair.imposter.alpha
    e1 = pair.imposter.beta - pair.client.beta
    lim0 = _limit(e0, tol)
    lim1 = _limit(-e1, tol)
    return ExtremalReport(
        slope_limit_at_0=lim0,
        slope_limit_at_1=lim1,
        above_diagonal_near_0=lim0 is SlopeLimit.INFINITE,
        above_diagonal_near_1=lim1 is SlopeLimit.ZERO,
        exponent_at_0=e0,
        exponent_at_1=e1,
    )


def theoretical_auc(pair, positive_below=True, tol=1e-11):
    """P(client response > imposter response) under the fitted pair.

    Computes ``∫ F_imposter(x) f_client(x) dx`` by adaptive quadrature.
    Below 1/2 the integral runs over ``s = x**a1`` and above 1/2 over
    ``w = (1 - x)**b1``; both substitutions absorb the endpoint behaviour
    of the client density into the measure. The range is further split at
    quantiles of both distributions so narrow peaks are never stepped over.
    """
    pair = _oriented_pair(pair, positive_below)
    c, i = pair.client, pair.imposter
    a1, b1 = c.alpha, c.beta
    lb = log_beta(a1, b1)

    def left(s):
        if s <= 0.0:
            return 0.0
        x = s ** (1.0 / a1)
        return reg_inc_beta(x, i.alpha, i.beta) * math.exp((b1 - 1.0) * math.log1p(-x) - lb) / a1

    def right(w):
        if w <= 0.0:
            return 0.0
        y = w ** (1.0 / b1)
        # Upper tail 1 - F_imposter keeps full relative precision near x = 1.
        return reg_inc_beta(y, i.beta, i.alpha) * math.exp((a1 - 1.0) * math.log1p(-y) - lb) / b1

    probs = (1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-4)
    cuts = {quantile(p, q) for p in (c, i) for q in probs}
    below = sorted({0.0, 0.5} | {x for x in cuts if 0.0 < x < 0.5})
    above = sorted({0.0, 0.5} | {1.0 - x for x in cuts if 0.5 < x < 1.0})

    opts = dict(epsabs=tol * 1e-2, epsrel=tol, limit=200)
    total = 0.0
    with warnings.catch_warnings():
        # Quadpack reports roundoff once it is at the level of double
        # precision; the answer is still as good as the integrand.
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for x0, x1 in zip(below, below[1:]):
            total += integrate.quad(left, x0 ** a1, x1 ** a1, **opts)[0]
        # Above 1/2: ∫ F_imp f_cli = P_cli(x > 1/2) - ∫ (1 - F_imp) f_cli.
        total += reg_inc_beta(0.5, b1, a1)
        for y0, y1 in zip(above, above[1:]):
            total -= integrate.quad(right, y0 ** b1, y1 ** b1, **opts)[0]
    return min(1.0, max(0.0, total))
