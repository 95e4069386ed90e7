"""Maximum-likelihood fitting of beta distributions to classifier scores.

The log-likelihood of a sample ``x_1..x_n`` is

    l(a, b) = (a - 1) Σ ln x_i + (b - 1) Σ ln(1 - x_i) - n ln B(a, b)

so the data enter only through the two sums. The maximizer is found by
Newton's method in ``(ln a, ln b)`` with step halving, started from the
method-of-moments estimate.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .beta import BetaPair, BetaParams
from .errors import (DegenerateSampleError, FitError, InputError,
                     OverdispersedSampleError)
from .special import digamma, log_beta, trigamma

__all__ = ["FitConfig", "FitResult", "FittedPair", "mom_init", "fit_mle",
           "fit_pair", "log_likelihood"]


@dataclass(frozen=True)
class FitConfig:
    """Numerical settings for :func:`fit_mle`.

    Attributes
    ----------
    clamp_epsilon : float
        Observations are clamped into ``[eps, 1 - eps]`` before fitting.
    grad_tol : float
        Convergence threshold on the infinity norm of the gradient of the
        *mean* log-likelihood with respect to ``(alpha, beta)``.
    max_iter : int
        Maximum number of Newton iterations.
    param_floor, param_ceiling : float
        Box in which both parameters are kept.
    """

    clamp_epsilon: float = 1e-6
    grad_tol: float = 1e-8
    max_iter: int = 500
    param_floor: float = 1e-6
    param_ceiling: float = 1e6

    def __post_init__(self):
        if not 0.0 < self.clamp_epsilon <= 0.01:
            raise ValueError(f"clamp_epsilon must lie in (0, 0.01], got {self.clamp_epsilon!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if not 0.0 < self.param_floor < self.param_ceiling:
            raise ValueError("need 0 < param_floor < param_ceiling")
        if not self.grad_tol > 0.0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol!r}")


@dataclass(frozen=True)
class FitResult:
    """Outcome of a maximum-likelihood fit."""

    params: BetaParams
    log_likelihood: float
    iterations: int
    converged: bool
    initializer: BetaParams
    n_clamped: int
    n: int = 0
    gradient_norm: float = 0.0

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def beta(self):
        return self.params.beta


@dataclass(frozen=True)
class FittedPair:
    """Client and imposter fits of one classifier/dataset combination."""

    client: FitResult
    imposter: FitResult
    config: FitConfig = field(default_factory=FitConfig)

    def as_pair(self):
        return BetaPair(self.client.params, self.imposter.params)

    @property
    def converged(self):
        return self.client.converged and self.imposter.converged


def _clamp_param(v, cfg):
    return min(cfg.param_ceiling, max(cfg.param_floor, v))


def mom_init(sample, cfg=None):
    """Method-of-moments estimate from mean and population variance.

    With ``m`` the mean, ``v`` the variance (divisor ``n``) and
    ``c = m (1 - m) / v - 1`` this returns ``(m c, (1 - m) c)``.

    Raises
    ------
    DegenerateSampleError
        Zero variance.
    OverdispersedSampleError
        ``c <= 0``; the variance is at or above the Bernoulli bound.
    """
    cfg = cfg or FitConfig()
    x = np.asarray(sample, dtype=float)
    if x.size < 2:
        raise FitError(f"need at least 2 observations, got {x.size}")
    m = math.fsum(x) / x.size
    if not 0.0 < m < 1.0:
        raise FitError(f"sample mean must lie strictly inside (0, 1), got {m!r}")
    v = math.fsum((x - m) ** 2) / x.size
    if v <= 0.0:
        raise DegenerateSampleError("sample has zero variance")
    c = m * (1.0 - m) / v - 1.0
    if c <= 0.0:
        raise OverdispersedSampleError(
            f"sample variance {v!r} is at or above the Bernoulli bound {m * (1 - m)!r}")
    return BetaParams(_clamp_param(m * c, cfg), _clamp_param((1.0 - m) * c, cfg))


def _mean_loglik(a, b, s1, s2):
    return (a - 1.0) * s1 + (b - 1.0) * s2 - log_beta(a, b)


def log_likelihood(params, sample):
    """Total log-likelihood of ``sample`` (values strictly inside (0, 1))."""
    x = np.asarray(sample, dtype=float)
    s1 = math.fsum(np.log(x)) / x.size
    s2 = math.fsum(np.log1p(-x)) / x.size
    return x.size * _mean_loglik(params.alpha, params.beta, s1, s2)


def _prepare(sample, cfg):
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 2:
        raise FitError(f"need at least 2 observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise InputError("sample contains non-finite values")
    if np.any((x < 0.0) | (x > 1.0)):
        raise InputError("sample values must lie in [0, 1]")
    eps = cfg.clamp_epsilon
    # For eps below half an ulp of 1, 1 - eps rounds to 1 itself.
    clamped = np.clip(x, eps, min(1.0 - eps, math.nextafter(1.0, 0.0)))
    n_clamped = int(np.count_nonzero(clamped != x))
    if np.all(clamped == clamped[0]):
        raise FitError("all observations are equal after clamping")
    return clamped, n_clamped


def fit_mle(sample, cfg=None):
    """Maximum-likelihood beta fit.

    Parameters
    ----------
    sample : array_like
        Scores in ``[0, 1]``.
    cfg : FitConfig, optional

    Returns
    -------
    FitResult
        ``converged`` is False when the gradient tolerance was not reached
        within ``max_iter`` iterations; ``params`` is then the best iterate.
    """
    cfg = cfg or FitConfig()
    x, n_clamped = _prepare(sample, cfg)
    n = x.size
    # fsum is exactly rounded, so the sufficient statistics (and with them
    # the whole fit) do not depend on the order of the observations.
    s1 = math.fsum(np.log(x)) / n
    s2 = math.fsum(np.log1p(-x)) / n

    try:
        init = mom_init(x, cfg)
    except OverdispersedSampleError:
        init = BetaParams(1.0, 1.0)

    lo, hi = math.log(cfg.param_floor), math.log(cfg.param_ceiling)
    u, v = math.log(init.alpha), math.log(init.beta)
    a, b = init.alpha, init.beta
    ll = _mean_loglik(a, b, s1, s2)
    converged = False
    gnorm = math.inf
    it = 0
    for it in range(cfg.max_iter + 1):
        psi_ab = digamma(a + b)
        ga = s1 - digamma(a) + psi_ab
        gb = s2 - digamma(b) + psi_ab
        gnorm = max(abs(ga), abs(gb))
        if gnorm <= cfg.grad_tol:
            converged = True
            break
        if it == cfg.max_iter:
            break

        tri_ab = trigamma(a + b)
        haa = tri_ab - trigamma(a)
        hbb = tri_ab - trigamma(b)
        hab = tri_ab
        # Chain rule to (ln a, ln b).
        gu, gv = a * ga, b * gb
        huu = a * a * haa + gu
        hvv = b * b * hbb + gv
        huv = a * b * hab
        det = huu * hvv - huv * huv
        if not (huu < 0.0 and det > 0.0):
            # Not concave here in log coordinates: drop the first-order
            # terms, leaving the (always negative definite) curvature in
            # (a, b) mapped to log space.
            huu = a * a * haa
            hvv = b * b * hbb
            det = huu * hvv - huv * huv
        du = -(hvv * gu - huv * gv) / det
        dv = -(huu * gv - huv * gu) / det

        step = 1.0
        accepted = False
        for _ in range(60):
            nu = min(hi, max(lo, u + step * du))
            nv = min(hi, max(lo, v + step * dv))
            na, nb = math.exp(nu), math.exp(nv)
            nll = _mean_loglik(na, nb, s1, s2)
            if nll >= ll:
                accepted = True
                break
            step *= 0.5
        if not accepted or (nu == u and nv == v):
            # No ascent possible in floating point; current point is the
            # best iterate available.
            break
        u, v, a, b, ll = nu, nv, na, nb, nll

    return FitResult(
        params=BetaParams(a, b),
        log_likelihood=n * ll,
        iterations=it,
        converged=converged,
        initializer=init,
        n_clamped=n_clamped,
        n=n,
        gradient_norm=gnorm,
    )


def fit_pair(clients, imposters, cfg=None):
    """Fit client and imposter distributions independently.

    Errors are re-raised as :class:`FitError` labelled with the class name.
    """
    cfg = cfg or FitConfig()
    fits = {}
    for label, data in (("client", clients), ("imposter", imposters)):
        try:
            fits[label] = fit_mle(data, cfg)
        except FitError as exc:
            raise type(exc)(str(exc), label=label) from exc
        except InputError as exc:
            raise InputError(f"{label}: {exc}") from exc
    return FittedPair(fits["client"], fits["imposter"], cfg)
