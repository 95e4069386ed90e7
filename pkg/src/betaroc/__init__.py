"""Beta-distribution models of binary classifier responses and the
theoretical ROC curves they induce."""

__version__ = "0.1.0"

from .beta import (BetaPair, BetaParams, CoarseShape, FineShape, ShapeClass,
                   cdf, classify_shape, moments, pdf, quantile, sample)
from .errors import (BetaRocError, DegenerateSampleError, DomainError, FitError,
                     InputError, OverdispersedSampleError, ParseError)
from .fitting import FitConfig, FitResult, FittedPair, fit_mle, fit_pair, mom_init
from .analysis import (ExtremalReport, RocCurve, SlopeLimit, ThresholdMetrics,
                       empirical_auc, empirical_roc, extremal_analysis,
                       ks_statistic, roc_slope, theoretical_auc, theoretical_roc,
                       threshold_metrics)
from .ingest import LabeledScores, histogram, parse_scores, read_scores
from .sweep import SweepGrid, SweepRow, generate_dataset, run_sweep
from .report import AnalysisReport, build_report, plot_density, plot_roc, to_json, from_json
from .special import digamma, log_gamma, reg_inc_beta, trigamma
