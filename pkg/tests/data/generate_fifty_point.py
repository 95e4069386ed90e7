"""Regenerate fifty_point_samples.json.

Draws ten 50-point samples with betaroc's seeded sampler and records the
maximizer of a refined grid search of the log-likelihood. The grid search
uses scipy.special.betaln only, so it is independent of the package's
special functions and optimizer.

    python tests/data/generate_fifty_point.py
"""

import json
import pathlib

import numpy as np
from scipy.special import betaln

from betaroc.beta import BetaParams, sample

TRUTH = [
    (2.0, 5.0), (0.47, 0.36), (3.27, 0.67), (0.24, 17.5), (1.0, 1.0),
    (8.0, 8.0), (0.7, 1.9), (12.0, 3.0), (0.5, 0.5), (4.0, 1.2),
]
EPS = 1e-6
LO, HI = 0.05, 30.0


def loglik(a, b, s1, s2, n):
    return (a - 1.0) * s1 + (b - 1.0) * s2 - n * betaln(a, b)


def grid_argmax(x):
    x = np.clip(np.asarray(x, float), EPS, 1.0 - EPS)
    s1, s2, n = np.log(x).sum(), np.log1p(-x).sum(), x.size
    best = None
    # Coarse pass over the whole box, then two refinements; the last one
    # is on the 0.01 lattice {0.05, 0.06, ..., 30.00}.
    for step, half in ((0.25, None), (0.05, 0.5), (0.01, 0.1)):
        if best is None:
            axa = axb = np.round(np.arange(LO, HI + 1e-9, step), 2)
        else:
            ca, cb = best
            axa = np.round(np.arange(max(LO, ca - half), min(HI, ca + half) + 1e-9, step), 2)
            axb = np.round(np.arange(max(LO, cb - half), min(HI, cb + half) + 1e-9, step), 2)
        A, B = np.meshgrid(axa, axb, indexing="ij")
        L = loglik(A, B, s1, s2, n)
        k = np.unravel_index(np.argmax(L), L.shape)
        best = (float(A[k]), float(B[k]))
    return best, float(loglik(best[0], best[1], s1, s2, n))


def main():
    records = []
    for k, (a, b) in enumerate(TRUTH):
        x = sample(BetaParams(a, b), 50, seed=9000 + k)
        (ga, gb), gl = grid_argmax(x)
        records.append({"truth": [a, b], "seed": 9000 + k, "sample": [float(v) for v in x],
                        "grid_argmax": [ga, gb], "grid_loglik": gl})
    out = pathlib.Path(__file__).with_name("fifty_point_samples.json")
    out.write_text(json.dumps({"clamp_epsilon": EPS, "grid_step": 0.01,
                               "datasets": records}, indent=1) + "\n")


if __name__ == "__main__":
    main()
