"""Deterministic random streams and gamma/beta variate generation.

Every stream is a NumPy ``Generator`` driven by the PCG64 bit generator
(the 128-bit-state permuted congruential generator with XSL-RR output),
seeded with a 64-bit integer. Sub-seeds are derived with the SplitMix64
finalizer so that independent streams (per sweep cell, per class) can be
produced in any order and still be reproducible.

Variates are produced by the algorithms implemented here rather than
``Generator.gamma``/``Generator.beta``, so their definition is pinned by
this module:

* gamma(k), k >= 1: Marsaglia and Tsang's squeeze/rejection method,
  drawn in fixed-size batches;
* gamma(k), k < 1: gamma(k + 1) * U**(1/k) (computed in log space);
* beta(a, b): G_a / (G_a + G_b) evaluated as a logistic of the log-gamma
  difference, which avoids underflow to exactly 0 for small shapes.
"""

import math

import numpy as np

__all__ = ["MASK64", "splitmix64", "derive_seed", "make_generator",
           "log_gamma_variates", "beta_variates"]

MASK64 = (1 << 64) - 1


def splitmix64(x):
    """SplitMix64 finalizer of a 64-bit integer."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(seed, *path):
    """Mix a root seed with a path of non-negative integers.

    ``derive_seed(s, cell, 0)`` and ``derive_seed(s, cell, 1)`` give the
    client and imposter sub-seeds of a sweep cell.
    """
    h = splitmix64(int(seed) & MASK64)
    for p in path:
        h = splitmix64(h ^ (int(p) & MASK64))
    return h


def make_generator(seed):
    """A PCG64-backed generator for a 64-bit seed."""
    if int(seed) < 0:
        raise ValueError(f"seed must be non-negative, got {seed!r}")
    return np.random.Generator(np.random.PCG64(int(seed) & MASK64))


def _log_gamma_ge1(rng, shape, n):
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n)
    filled = 0
    while filled < n:
        # Acceptance rate is above 0.95 for every shape >= 1.
        m = (n - filled) + (n - filled) // 16 + 16
        z = rng.standard_normal(m)
        u = rng.random(m)
        v = 1.0 + c * z
        ok = v > 0.0
        v = np.where(ok, v, 1.0) ** 3
        with np.errstate(divide="ignore"):
            log_u = np.log(u)
        ok &= log_u < 0.5 * z * z + d - d * v + d * np.log(v)
        accepted = np.log(d * v[ok])
        take = min(accepted.size, n - filled)
        out[filled:filled + take] = accepted[:take]
        filled += take
    return out


def log_gamma_variates(rng, shape, n):
    """Natural logs of ``n`` gamma(shape, 1) variates."""
    shape = float(shape)
    if not shape > 0.0 or not math.isfinite(shape):
        raise ValueError(f"gamma shape must be positive, got {shape!r}")
    if shape >= 1.0:
        return _log_gamma_ge1(rng, shape, n)
    boosted = _log_gamma_ge1(rng, shape + 1.0, n)
    u = 1.0 - rng.random(n)  # (0, 1]
    return boosted + np.log(u) / shape


def beta_variates(rng, a, b, n):
    """``n`` beta(a, b) variates from ``rng``."""
    if n <= 0:
        return np.empty(0)
    lg_a = log_gamma_variates(rng, a, n)
    lg_b = log_gamma_variates(rng, b, n)
    # G_a / (G_a + G_b) = 1 / (1 + exp(lg_b - lg_a))
    return np.exp(-np.logaddexp(0.0, lg_b - lg_a))
