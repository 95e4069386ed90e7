"""The beta distribution as an immutable value type.

:class:`BetaParams` carries the two shape parameters and exposes the
density, CDF, quantile function, moments, seeded sampling and the shape
taxonomy (bell, U, J, reverse J and the singular boundary cases).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import rng as _rng
from .errors import DomainError
from .special import log_beta, reg_inc_beta

__all__ = [
    "BetaParams", "BetaPair", "FineShape", "CoarseShape", "ShapeClass",
    "pdf", "cdf", "quantile", "moments", "classify_shape", "sample",
    "DEFAULT_SHAPE_TOL",
]

DEFAULT_SHAPE_TOL = 1e-9


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters ``(alpha, beta)`` of a beta distribution."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError) as exc:
                raise DomainError(f"{name} must be a real number, got {v!r}") from exc
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)

    def swapped(self):
        """Parameters of the mirrored distribution ``1 - X``."""
        return BetaParams(self.beta, self.alpha)

    def as_tuple(self):
        return (self.alpha, self.beta)

    @property
    def shape(self):
        return classify_shape(self)

    # Convenience wrappers so a BetaParams can be used like a frozen
    # distribution object.
    def pdf(self, x):
        return pdf(self, x)

    def cdf(self, x):
        return cdf(self, x)

    def quantile(self, q):
        return quantile(self, q)


@dataclass(frozen=True)
class BetaPair:
    """Client and imposter distributions of one classifier/dataset.

    Index 1 in the usual notation (``alpha_1, beta_1``) is the client,
    index 2 the imposter.
    """

    client: BetaParams
    imposter: BetaParams

    @classmethod
    def from_values(cls, alpha1, beta1, alpha2, beta2):
        return cls(BetaParams(alpha1, beta1), BetaParams(alpha2, beta2))

    def swapped(self):
        """The same pair with the class roles exchanged."""
        return BetaPair(self.imposter, self.client)

    def as_pair(self):
        return self


class FineShape(str, enum.Enum):
    BELL = "Bell"
    U = "U"
    J = "J"
    REVERSE_J = "ReverseJ"
    UNIFORM = "Uniform"
    INCREASING_LINEAR_LIKE = "IncreasingLinearLike"
    DECREASING_LINEAR_LIKE = "DecreasingLinearLike"
    LEFT_BOUNDARY = "LeftBoundary"
    RIGHT_BOUNDARY = "RightBoundary"

    def __str__(self):
        return self.value


class CoarseShape(str, enum.Enum):
    BELL = "Bell"
    U = "U"
    J_FAMILY = "JFamily"
    SINGULAR = "Singular"

    def __str__(self):
        return self.value


_COARSE = {
    FineShape.BELL: CoarseShape.BELL,
    FineShape.U: CoarseShape.U,
    FineShape.J: CoarseShape.J_FAMILY,
    FineShape.REVERSE_J: CoarseShape.J_FAMILY,
}

_MIRROR = {
    FineShape.J: FineShape.REVERSE_J,
    FineShape.REVERSE_J: FineShape.J,
    FineShape.INCREASING_LINEAR_LIKE: FineShape.DECREASING_LINEAR_LIKE,
    FineShape.DECREASING_LINEAR_LIKE: FineShape.INCREASING_LINEAR_LIKE,
    FineShape.LEFT_BOUNDARY: FineShape.RIGHT_BOUNDARY,
    FineShape.RIGHT_BOUNDARY: FineShape.LEFT_BOUNDARY,
}


@dataclass(frozen=True)
class ShapeClass:
    """Fine and coarse shape labels of a beta density.

    ``symmetric`` is informational: it is set when ``alpha == beta``
    within the tolerance, which does not change the U/bell label.
    """

    fine: FineShape
    coarse: CoarseShape
    symmetric: bool = False

    @property
    def singular(self):
        return self.coarse is CoarseShape.SINGULAR

    def mirrored(self):
        """Shape of the distribution of ``1 - X``."""
        return ShapeClass(_MIRROR.get(self.fine, self.fine), self.coarse, self.symmetric)


def classify_shape(p, tol=DEFAULT_SHAPE_TOL):
    """Classify the density shape of ``p``.

    Away from ``alpha = 1`` and ``beta = 1`` the density is bell-shaped
    (both > 1), U-shaped (both < 1), J-shaped (``alpha < 1 < beta``,
    mass piled at 0) or reverse-J (``beta < 1 < alpha``). Parameters within
    ``tol`` of 1 are singular cases:

    ============  ============  =====================
    alpha ~ 1     beta ~ 1      Uniform
    alpha ~ 1     beta > 1      DecreasingLinearLike
    alpha ~ 1     beta < 1      RightBoundary
    alpha > 1     beta ~ 1      IncreasingLinearLike
    alpha < 1     beta ~ 1      LeftBoundary
    ============  ============  =====================
    """
    if tol < 0:
        raise DomainError(f"tolerance must be non-negative, got {tol!r}")
    a, b = p.alpha, p.beta
    a_one = abs(a - 1.0) <= tol
    b_one = abs(b - 1.0) <= tol
    symmetric = abs(a - b) <= tol

    if a_one and b_one:
        fine = FineShape.UNIFORM
    elif a_one:
        fine = FineShape.DECREASING_LINEAR_LIKE if b > 1.0 else FineShape.RIGHT_BOUNDARY
    elif b_one:
        fine = FineShape.INCREASING_LINEAR_LIKE if a > 1.0 else FineShape.LEFT_BOUNDARY
    elif a > 1.0 and b > 1.0:
        fine = FineShape.BELL
    elif a < 1.0 and b < 1.0:
        fine = FineShape.U
    elif a < 1.0:
        fine = FineShape.J
    else:
        fine = FineShape.REVERSE_J
    return ShapeClass(fine, _COARSE.get(fine, CoarseShape.SINGULAR), symmetric)


def _check_unit(x, name="x"):
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")
    return x


def pdf(p, x):
    """Beta density at ``x``.

    At an endpoint where the density diverges (``alpha < 1`` at 0 or
    ``beta < 1`` at 1) the result is ``inf``; otherwise the finite limit.
    """
    x = _check_unit(x)
    a, b = p.alpha, p.beta
    if x == 0.0 or x == 1.0:
        expo = a - 1.0 if x == 0.0 else b - 1.0
        if expo < 0.0:
            return math.inf
        if expo > 0.0:
            return 0.0
        other = b if x == 0.0 else a
        return math.exp(-log_beta(1.0, other))
    return math.exp((a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x)
                    - log_beta(a, b))


def cdf(p, x):
    """Beta CDF ``I_x(alpha, beta)``."""
    return reg_inc_beta(x, p.alpha, p.beta)


def quantile(p, q, tol=1e-12):
    """Inverse CDF by safeguarded Newton iteration.

    Keeps a bracket ``[lo, hi]`` around the root and bisects whenever a
    Newton step leaves it. The result satisfies ``|cdf(x) - q| <= 1e-10``
    (usually far better) unless the CDF jumps over ``q`` between adjacent
    doubles.
    """
    q = _check_unit(q, "q")
    if q == 0.0:
        return 0.0
    if q == 1.0:
        return 1.0
    a, b = p.alpha, p.beta
    lo, hi = 0.0, 1.0
    # Start from the leading-order tail approximations, which are exact
    # in the J/U regimes that dominate practical fits.
    lb = log_beta(a, b)
    if q < 0.5:
        x = math.exp((math.log(q * a) + lb) / a)
    else:
        x = -math.expm1((math.log((1.0 - q) * b) + lb) / b)
    if not 0.0 < x < 1.0:
        x = 0.5
    for _ in range(500):
        f = reg_inc_beta(x, a, b) - q
        if abs(f) <= tol:
            return x
        if f < 0.0:
            lo = x
        else:
            hi = x
        dens = pdf(p, x)
        step_ok = False
        if dens > 0.0 and math.isfinite(dens):
            nx = x - f / dens
            if lo < nx < hi:
                x_new = nx
                step_ok = True
        if not step_ok:
            # Geometric bisection when the bracket spans orders of magnitude.
            if lo > 0.0 and hi / lo > 4.0:
                x_new = math.sqrt(lo * hi)
            elif hi < 1.0 and lo > 0.0 and (1.0 - lo) / (1.0 - hi) > 4.0:
                x_new = 1.0 - math.sqrt((1.0 - lo) * (1.0 - hi))
            else:
                x_new = 0.5 * (lo + hi)
        if x_new == x or not lo <= x_new <= hi:
            break
        x = x_new
        if hi - lo <= 4e-16 * max(hi, 1e-300):
            break
    return x


def moments(p):
    """Mean and variance ``(a/(a+b), ab/((a+b)^2 (a+b+1)))``."""
    a, b = p.alpha, p.beta
    s = a + b
    return a / s, a * b / (s * s * (s + 1.0))


def sample(p, n, seed):
    """``n`` i.i.d. variates of ``p`` from a PCG64 stream seeded with ``seed``.

    Output is bit-identical for identical ``(p, n, seed)``; see
    :mod:`betaroc.rng` for the algorithms.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"sample size must be non-negative, got {n}")
    if n == 0:
        return np.empty(0)
    gen = _rng.make_generator(seed)
    return _rng.beta_variates(gen, p.alpha, p.beta, n)


def pdf_array(p, x):
    """Vectorized :func:`pdf` for interior points (``0 < x < 1``)."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.exp((p.alpha - 1.0) * np.log(x) + (p.beta - 1.0) * np.log1p(-x)
                      - log_beta(p.alpha, p.beta))


def cdf_array(p, x):
    """Vectorized :func:`cdf`."""
    x = np.asarray(x, dtype=float)
    out = np.fromiter((reg_inc_beta(v, p.alpha, p.beta) for v in x.ravel()),
                      dtype=float, count=x.size)
    return out.reshape(x.shape)
