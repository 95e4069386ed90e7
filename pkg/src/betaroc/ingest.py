"""Reading labeled classifier scores from CSV and JSON Lines.

CSV input needs a header containing ``label`` and ``score`` columns (any
order, extra columns ignored). JSONL input has one object per line with
``label`` and ``score`` fields. Labels are case-insensitive:
``client``/``0`` and ``imposter``/``1``.

Scores that overshoot [0, 1] by at most ``SNAP_TOL`` are snapped onto the
boundary; anything further out is rejected.
"""

import csv
import io
import json
import math
import os
from fractions import Fraction
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

__all__ = ["LabeledScores", "parse_scores", "read_scores", "to_csv", "to_jsonl",
           "histogram", "SNAP_TOL", "DEFAULT_BINS"]

SNAP_TOL = 1e-9
DEFAULT_BINS = 20

_LABELS = {"client": "client", "0": "client", "imposter": "imposter", "1": "imposter"}


@dataclass(frozen=True, eq=False)
class LabeledScores:
    """Per-class response samples in [0, 1].

    ``n_clamped`` counts boundary clamping applied to this data; parsing
    never clamps, it only snaps (counted separately in ``n_snapped``).
    """

    clients: np.ndarray
    imposters: np.ndarray
    source: str = ""
    n_clamped: int = 0
    n_snapped: int = 0

    def __post_init__(self):
        for name in ("clients", "imposters"):
            arr = np.asarray(getattr(self, name), dtype=float).ravel()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __eq__(self, other):
        if not isinstance(other, LabeledScores):
            return NotImplemented
        return (np.array_equal(self.clients, other.clients)
                and np.array_equal(self.imposters, other.imposters)
                and self.source == other.source
                and self.n_clamped == other.n_clamped
                and self.n_snapped == other.n_snapped)

    __hash__ = None

    def __len__(self):
        return self.clients.size + self.imposters.size


def _label(raw, line):
    key = str(raw).strip().lower()
    try:
        return _LABELS[key]
    except KeyError:
        raise ParseError(f"unknown label {raw!r}", line) from None


def _score(raw, line):
    if isinstance(raw, bool):
        raise ParseError(f"non-numeric score {raw!r}", line)
    try:
        v = float(raw.strip() if isinstance(raw, str) else raw)
    except (TypeError, ValueError):
        raise ParseError(f"non-numeric score {raw!r}", line) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite score {raw!r}", line)
    if 0.0 <= v <= 1.0:
        return v, False
    if -SNAP_TOL <= v < 0.0:
        return 0.0, True
    if 1.0 < v <= 1.0 + SNAP_TOL:
        return 1.0, True
    raise ParseError(f"score {raw!r} outside [0, 1]", line)


def _records_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = None
    for row in reader:
        line = reader.line_num
        if header is None:
            if not row or all(not c.strip() for c in row):
                continue
            header = [c.strip().lower() for c in row]
            try:
                li, si = header.index("label"), header.index("score")
            except ValueError:
                raise ParseError("header must contain 'label' and 'score' columns", line) from None
            continue
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) <= max(li, si):
            raise ParseError("missing label or score field", line)
        yield line, row[li], row[si]
    if header is None:
        raise ParseError("empty file")


def _records_jsonl(text):
    for line, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line) from None
        if not isinstance(obj, dict) or "label" not in obj or "score" not in obj:
            raise ParseError("expected an object with 'label' and 'score'", line)
        if isinstance(obj["score"], str):
            raise ParseError(f"non-numeric score {obj['score']!r}", line)
        yield line, obj["label"], obj["score"]


def parse_scores(data, fmt="csv", source=""):
    """Parse labeled scores.

    Parameters
    ----------
    data : bytes or str
        UTF-8 encoded file content.
    fmt : {"csv", "jsonl"}
    source : str
        Provenance string stored on the result.

    Raises
    ------
    ParseError
        Unknown label, non-numeric or out-of-range score, or empty input.
        The message names the offending line.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    fmt = fmt.lower()
    if fmt == "csv":
        records = _records_csv(data)
    elif fmt in ("jsonl", "ndjson"):
        records = _records_jsonl(data)
    else:
        raise ValueError(f"unknown format {fmt!r}")

    buckets = {"client": [], "imposter": []}
    n_snapped = 0
    for line, raw_label, raw_score in records:
        label = _label(raw_label, line)
        value, snapped = _score(raw_score, line)
        n_snapped += snapped
        buckets[label].append(value)
    if not buckets["client"] and not buckets["imposter"]:
        raise ParseError("no records")
    return LabeledScores(np.array(buckets["client"], dtype=float),
                         np.array(buckets["imposter"], dtype=float),
                         source=source, n_snapped=n_snapped)


def guess_format(path):
    ext = os.path.splitext(str(path))[1].lower()
    return "jsonl" if ext in (".jsonl", ".ndjson", ".json") else "csv"


def read_scores(path, fmt=None):
    """Read a score file; the format defaults to one guessed from the extension."""
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_scores(data, fmt or guess_format(path), source=str(path))


def _rows(scores):
    for v in scores.clients:
        yield "client", v
    for v in scores.imposters:
        yield "imposter", v


def to_csv(scores):
    """Serialize to CSV text; ``repr`` keeps every float exact."""
    out = ["label,score"]
    out.extend(f"{label},{float(v)!r}" for label, v in _rows(scores))
    return "\n".join(out) + "\n"


def to_jsonl(scores):
    return "".join(json.dumps({"label": label, "score": float(v)}) + "\n"
                   for label, v in _rows(scores))


def histogram(scores, bins=DEFAULT_BINS):
    """Counts in ``bins`` equal-width bins over [0, 1].

    Bin ``k`` is ``[k/bins, (k+1)/bins)`` with the last bin closed on the
    right. Membership is decided in exact rational arithmetic, so a
    double such as ``0.15`` (slightly below 3/20) lands in bin 2 of 20.
    """
    bins = int(bins)
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    x = np.asarray(scores, dtype=float).ravel()
    if np.any((x < 0.0) | (x > 1.0)) or not np.all(np.isfinite(x)):
        raise ValueError("histogram scores must lie in [0, 1]")
    scaled = x * bins
    idx = np.floor(scaled).astype(np.int64)
    # Rounding in x * bins only matters next to an edge; settle those exactly.
    near = np.flatnonzero(np.abs(scaled - np.rint(scaled)) < 1e-6)
    for j in near:
        idx[j] = math.floor(Fraction(float(x[j])) * bins)
    idx = np.minimum(idx, bins - 1)
    return np.bincount(idx, minlength=bins)
