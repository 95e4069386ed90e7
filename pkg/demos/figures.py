"""
Histogram, density overlay and ROC figures
==========================================

Write the three standard figures for one synthetic dataset as standalone
SVG files: twenty-bin histograms with the fitted density, and empirical
against theoretical ROC curves.
"""

import pathlib
import sys

from betaroc import (build_report, empirical_roc, fit_mle, generate_dataset, plot_density,
                     plot_roc, theoretical_roc, to_json)
from betaroc.reference_fits import reference_pair

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(exist_ok=True)

pair = reference_pair("slr-cross", "imp5")
data = generate_dataset(pair, 2000, 2000, seed=5)

for label, scores in (("client", data.clients), ("imposter", data.imposters)):
    fit = fit_mle(scores)
    (out / f"{label}_density.svg").write_bytes(
        plot_density(scores, fit, bins=20, title=f"{label} responses"))

report = build_report(data, thresholds=(0.25, 0.5, 0.75))
(out / "roc.svg").write_bytes(plot_roc(empirical_roc(data.clients, data.imposters),
                                       theoretical_roc(report.pair())))
(out / "report.json").write_bytes(to_json(report))
print("wrote", ", ".join(sorted(p.name for p in out.iterdir())), "to", out)
