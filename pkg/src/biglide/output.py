"""CSV emission and parsing of sweep records."""

import csv
import io
from pathlib import Path

from .sweeps import SweepRecord

HEADER = ("model", "alpha", "x_m", "metric", "value_si")


def fmt(v):
    return "%.17g" % v


def format_csv(records):
    """CSV text in deterministic (model, alpha, x, metric) order."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in sorted(records, key=SweepRecord.sort_key):
        w.writerow((r.model, fmt(r.alpha), fmt(r.x), r.metric, fmt(r.value)))
    return buf.getvalue()


def emit_csv(records, path):
    """Write `records` to `path` ('-' for a string return instead)."""
    text = format_csv(records)
    if str(path) == "-":
        return text
    Path(path).write_text(text)
    return text


def read_csv(path_or_text):
    """Parse a file written by `emit_csv` back into records (without classification)."""
    text = str(path_or_text)
    if not text.startswith(",".join(HEADER)):
        text = Path(path_or_text).read_text()
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != HEADER:
        raise ValueError("missing CSV header")
    return [SweepRecord(m, float(a), float(x), k, float(v)) for m, a, x, k, v in rows[1:]]
