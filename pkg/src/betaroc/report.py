"""JSON analysis reports and SVG figures.

The report body is plain JSON with sorted keys and no timestamps, so two
runs over the same input and configuration give byte-identical output.
Floats are written in their shortest round-trip form, which recovers the
exact double on parsing.
"""

import json
import math
from dataclasses import asdict, dataclass, field, fields
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from . import __version__
from .analysis import (empirical_auc, extremal_analysis,
                       ks_statistic, theoretical_auc, threshold_metrics)
from .beta import BetaPair, BetaParams, classify_shape, pdf_array
from .errors import FitError, InputError
from .fitting import FitConfig, fit_mle

__all__ = ["SCHEMA_VERSION", "AnalysisReport", "build_report", "to_json",
           "from_json", "density_overlay", "plot_density", "plot_roc"]

SCHEMA_VERSION = 1


@dataclass
class AnalysisReport:
    """Everything ``betaroc analyze`` computes for one score file.

    ``fits`` maps ``"client"``/``"imposter"`` to the fitted parameters and
    diagnostics, or to ``{"error": ...}`` when that class could not be
    fitted; pair-level fields are then ``None``.
    """

    source: str
    n_client: int
    n_imposter: int
    fits: dict
    shapes: dict
    extremal: dict = None
    empirical_auc: float = None
    theoretical_auc: float = None
    ks: float = None
    threshold_metrics: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    @property
    def converged(self):
        return all(f.get("converged", False) for f in self.fits.values())

    def pair(self):
        """The fitted :class:`BetaPair`, or None if a class failed."""
        try:
            c, i = self.fits["client"], self.fits["imposter"]
            return BetaPair.from_values(c["alpha"], c["beta"], i["alpha"], i["beta"])
        except KeyError:
            return None


def _finite(v):
    v = float(v)
    return v if math.isfinite(v) else None


def _fit_record(fit):
    return {
        "alpha": fit.alpha,
        "beta": fit.beta,
        "log_likelihood": _finite(fit.log_likelihood),
        "converged": fit.converged,
        "iterations": fit.iterations,
        "n_clamped": fit.n_clamped,
        "init_alpha": fit.initializer.alpha,
        "init_beta": fit.initializer.beta,
        "gradient_norm": _finite(fit.gradient_norm),
    }


def _shape_record(p, tol):
    s = classify_shape(p, tol)
    return {"fine": s.fine.value, "coarse": s.coarse.value, "symmetric": s.symmetric}


def build_report(scores, cfg=None, thresholds=(), shape_tol=1e-9):
    """Fit, classify and measure a :class:`~betaroc.ingest.LabeledScores`.

    Per-class fit failures are recorded in the report instead of raised;
    an empty class is an :class:`~betaroc.errors.InputError`.
    """
    cfg = cfg or FitConfig()
    if scores.clients.size == 0 or scores.imposters.size == 0:
        missing = "client" if scores.clients.size == 0 else "imposter"
        raise InputError(f"no {missing} scores in {scores.source or 'input'}")
    fits, shapes, params = {}, {}, {}
    for label, data in (("client", scores.clients), ("imposter", scores.imposters)):
        try:
            fit = fit_mle(data, cfg)
        except FitError as exc:
            fits[label] = {"error": str(exc), "converged": False}
            continue
        fits[label] = _fit_record(fit)
        shapes[label] = _shape_record(fit.params, shape_tol)
        params[label] = fit.params

    report = AnalysisReport(
        source=scores.source,
        n_client=int(scores.clients.size),
        n_imposter=int(scores.imposters.size),
        fits=fits,
        shapes=shapes,
        empirical_auc=empirical_auc(scores.clients, scores.imposters),
        ks=ks_statistic(scores.clients, scores.imposters),
        config={
            "clamp_epsilon": cfg.clamp_epsilon,
            "grad_tol": cfg.grad_tol,
            "max_iter": cfg.max_iter,
            "param_floor": cfg.param_floor,
            "param_ceiling": cfg.param_ceiling,
            "shape_tol": shape_tol,
            "thresholds": [float(t) for t in thresholds],
        },
    )
    if len(params) == 2:
        pair = BetaPair(params["client"], params["imposter"])
        ext = extremal_analysis(pair)
        report.extremal = {
            "slope_limit_at_0": ext.slope_limit_at_0.value,
            "slope_limit_at_1": ext.slope_limit_at_1.value,
            "above_diagonal_near_0": ext.above_diagonal_near_0,
            "above_diagonal_near_1": ext.above_diagonal_near_1,
            "exponent_at_0": ext.exponent_at_0,
            "exponent_at_1": ext.exponent_at_1,
        }
        report.theoretical_auc = theoretical_auc(pair)
    for t in thresholds:
        m = threshold_metrics(scores.clients, scores.imposters, t)
        report.threshold_metrics.append({
            "threshold": m.threshold, "tp": m.counts.tp, "fp": m.counts.fp,
            "tn": m.counts.tn, "fn": m.counts.fn,
            "tpr": m.tpr, "ppv": m.ppv, "f1": m.f1,
        })
    return report


def to_json(report):
    """Serialize to UTF-8 JSON bytes with sorted keys."""
    return (json.dumps(asdict(report), sort_keys=True, indent=2, allow_nan=False)
            + "\n").encode("utf-8")


def from_json(data):
    """Inverse of :func:`to_json`."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    obj = json.loads(data)
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InputError(f"unsupported report schema_version {version!r}")
    known = {f.name for f in fields(AnalysisReport)}
    return AnalysisReport(**{k: v for k, v in obj.items() if k in known})


# --------------------------------------------------------------------------
# SVG output

_W, _H = 480, 360
_MARGIN = dict(left=56, right=16, top=28, bottom=44)
_COLORS = {"hist": "#9ecae1", "overlay": "#d62728", "empirical": "#1f77b4",
           "theoretical": "#d62728", "diagonal": "#7f7f7f"}


class _Axes:
    def __init__(self, xmax, ymax):
        self.x0 = _MARGIN["left"]
        self.x1 = _W - _MARGIN["right"]
        self.y0 = _H - _MARGIN["bottom"]
        self.y1 = _MARGIN["top"]
        self.xmax = xmax
        self.ymax = ymax

    def px(self, x):
        return self.x0 + (self.x1 - self.x0) * x / self.xmax

    def py(self, y):
        return self.y0 - (self.y0 - self.y1) * y / self.ymax


def _num(v):
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _nice_ticks(vmax, n=5):
    raw = vmax / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    return [k * step for k in range(int(vmax / step + 1e-9) + 1)]


def _frame(ax, title, xlabel, ylabel, yticks):
    out = [
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<g stroke="black" stroke-width="1" fill="none">'
        f'<line x1="{ax.x0}" y1="{ax.y0}" x2="{ax.x1}" y2="{ax.y0}"/>'
        f'<line x1="{ax.x0}" y1="{ax.y0}" x2="{ax.x0}" y2="{ax.y1}"/></g>',
    ]
    ticks = ['<g font-size="10" fill="black">']
    for t in np.linspace(0.0, ax.xmax, 6):
        x = ax.px(t)
        ticks.append(f'<line x1="{_num(x)}" y1="{ax.y0}" x2="{_num(x)}" y2="{ax.y0 + 4}" stroke="black"/>'
                     f'<text x="{_num(x)}" y="{ax.y0 + 16}" text-anchor="middle">{t:.1f}</text>')
    for t in yticks:
        y = ax.py(t)
        ticks.append(f'<line x1="{ax.x0 - 4}" y1="{_num(y)}" x2="{ax.x0}" y2="{_num(y)}" stroke="black"/>'
                     f'<text x="{ax.x0 - 6}" y="{_num(y + 3)}" text-anchor="end">{t:g}</text>')
    ticks.append("</g>")
    out.extend(ticks)
    out.append(f'<text x="{(ax.x0 + ax.x1) / 2}" y="{_H - 8}" text-anchor="middle" '
               f'font-size="12">{escape(xlabel)}</text>')
    out.append(f'<text x="14" y="{(ax.y0 + ax.y1) / 2}" text-anchor="middle" font-size="12" '
               f'transform="rotate(-90 14 {(ax.y0 + ax.y1) / 2})">{escape(ylabel)}</text>')
    return out


def _polyline(ax, xs, ys, css, color, dash=None):
    pts = []
    last = None
    for x, y in zip(xs, ys):
        p = (_num(ax.px(x)), _num(ax.py(y)))
        if p != last:
            pts.append(f"{p[0]},{p[1]}")
            last = p
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline class={quoteattr(css)} fill="none" stroke="{color}" '
            f'stroke-width="1.5"{extra} points="{" ".join(pts)}"/>')


def _legend(ax, entries):
    out = ['<g font-size="11">']
    for k, (label, color, dash) in enumerate(entries):
        y = ax.y1 + 12 + 16 * k
        x = ax.x1 - 130
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{x}" y1="{y}" x2="{x + 22}" y2="{y}" stroke="{color}" '
                   f'stroke-width="2"{extra}/><text x="{x + 28}" y="{y + 4}">{escape(label)}</text>')
    out.append("</g>")
    return out


def _document(body, title):
    head = ('<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" '
            f'height="{_H}" viewBox="0 0 {_W} {_H}" font-family="sans-serif">\n'
            f"<title>{escape(title)}</title>\n")
    return (head + "\n".join(body) + "\n</svg>\n").encode("utf-8")


def density_overlay(fit, n=400, ceiling_percentile=99.5):
    """Grid and clipped pdf values used for the fitted-density overlay.

    The pdf is evaluated on ``n`` interior points; values above the
    ``ceiling_percentile`` percentile of those values are clipped to it,
    so endpoint divergences of U/J shapes do not flatten the plot.

    Returns
    -------
    x, y, ceiling : ndarray, ndarray, float
    """
    x = (np.arange(n) + 0.5) / n
    y = pdf_array(fit, x)
    finite = y[np.isfinite(y)]
    ceiling = float(np.percentile(finite, ceiling_percentile)) if finite.size else 1.0
    return x, np.minimum(y, ceiling), ceiling


def plot_density(scores, fit, bins=20, title="Fitted beta density"):
    """Density-scaled histogram of ``scores`` with the fitted pdf on top.

    Returns the SVG document as bytes.
    """
    from .ingest import histogram

    scores = np.asarray(scores, dtype=float).ravel()
    if scores.size == 0:
        raise InputError("cannot plot an empty sample")
    if not isinstance(fit, BetaParams):
        fit = fit.params
    counts = histogram(scores, bins)
    heights = counts / (scores.size / bins)
    ox, oy, _ = density_overlay(fit)
    ymax = max(float(heights.max()), float(oy.max()), 1e-9) * 1.05
    ax = _Axes(1.0, ymax)
    body = _frame(ax, title, "response", "density", _nice_ticks(ymax))
    body.append(f'<g class="histogram" fill="{_COLORS["hist"]}" stroke="white" stroke-width="0.5">')
    for k, h in enumerate(heights):
        xl, xr = ax.px(k / bins), ax.px((k + 1) / bins)
        yt = ax.py(h)
        body.append(f'<rect x="{_num(xl)}" y="{_num(yt)}" width="{_num(xr - xl)}" '
                    f'height="{_num(ax.y0 - yt)}"/>')
    body.append("</g>")
    body.append(_polyline(ax, ox, oy, "overlay", _COLORS["overlay"]))
    body += _legend(ax, [(f"{bins}-bin histogram", _COLORS["hist"], None),
                         (f"Beta({fit.alpha:.3g}, {fit.beta:.3g})", _COLORS["overlay"], None)])
    return _document(body, title)


def plot_roc(empirical=None, theoretical=None, title="ROC curves"):
    """Empirical and/or theoretical ROC curves with the chance diagonal."""
    ax = _Axes(1.0, 1.0)
    body = _frame(ax, title, "false positive rate", "true positive rate",
                  [0, 0.2, 0.4, 0.6, 0.8, 1.0])
    body.append(_polyline(ax, [0, 1], [0, 1], "diagonal", _COLORS["diagonal"], dash="4 3"))
    legend = [("no discrimination", _COLORS["diagonal"], "4 3")]
    if empirical is not None:
        body.append(_polyline(ax, empirical.fpr, empirical.tpr, "empirical", _COLORS["empirical"]))
        legend.append(("empirical", _COLORS["empirical"], None))
    if theoretical is not None:
        body.append(_polyline(ax, theoretical.fpr, theoretical.tpr, "theoretical",
                              _COLORS["theoretical"]))
        legend.append(("theoretical", _COLORS["theoretical"], None))
    body += _legend(ax, legend)
    return _document(body, title)
