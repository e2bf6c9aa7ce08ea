"""Workspace maps and leg-length (alpha) sweeps of the four models."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import robot
from .beams import scale_geometry
from .mechanism import workspace_bounds

SIMPLIFIED_STIFFNESS = "SimplifiedStiffness"
REFINED_STIFFNESS = "RefinedStiffness"
SIMPLIFIED_MODAL = "SimplifiedModal"
REFINED_MODAL = "RefinedModal"
MODELS = (SIMPLIFIED_STIFFNESS, REFINED_STIFFNESS, SIMPLIFIED_MODAL, REFINED_MODAL)

DEFAULT_ALPHAS = tuple(np.round(np.arange(0.7, 1.3 + 1e-9, 0.1), 10))
DELTA_FRACTION = 1e-3
TREND_RTOL = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    model: str
    alpha: float
    x: float
    metric: str
    value: float
    classification: str = None
    station: str = None

    def sort_key(self):
        return (self.model, self.alpha, self.x, self.metric)


def interior_grid(g, n=41, delta_fraction=DELTA_FRACTION):
    """`n` points over the workspace shrunk by ``delta_fraction * d`` at both ends."""
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    x_min, x_max, d = workspace_bounds(g)
    delta = delta_fraction * d
    return np.linspace(x_min + delta, x_max - delta, n)


def stations(g, delta_fraction=DELTA_FRACTION):
    """Center and the two (shrunk) extremities of the workspace."""
    x_min, x_max, d = workspace_bounds(g)
    delta = delta_fraction * d
    return {"center": x_min + d / 2, "left": x_min + delta, "right": x_max - delta}


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(i) for i in items]


def _model_name(model, kind):
    m = {"simplified": "Simplified", "refined": "Refined"}.get(model)
    if m is None:
        raise ValueError(f"model must be 'simplified' or 'refined', got {model!r}")
    return m + kind


def _stiffness_values(ds, model, x, alpha, links, options):
    if model == SIMPLIFIED_STIFFNESS:
        return robot.deflection_metrics(robot.simplified_compliance(ds, x, alpha),
                                        planar_only=True)
    C = robot.refined_compliance(ds, x, alpha, links=links, options=options)
    return robot.deflection_metrics(C)


def _modal_values(ds, model, x, alpha, options):
    if model == SIMPLIFIED_MODAL:
        f = robot.simplified_frequencies(ds, x, alpha)
        return [("f1_hz", f[0], None), ("f2_hz", f[1], None)]
    modes = robot.refined_modes(ds, x, alpha, 2, options)
    out = [(f"f{i + 1}_hz", m.frequency, str(m.classification)) for i, m in enumerate(modes)]
    out.append(("mode1_out_of_plane_fraction", modes[0].out_of_plane_fraction, None))
    return out


def stiffness_map(ds, model="simplified", grid_n=41, *, xs=None, endpoints=True,
                  links="dataset", options=robot.DEFAULT_OPTIONS, workers=None):
    """Deflections under 1000 N loads across the workspace at the nominal geometry.

    The grid is `grid_n` points over the shrunk workspace; with `endpoints`
    the two exact stroke limits are added (the simplified model is finite
    there, the refined one is evaluated as well when possible).
    """
    name = _model_name(model, "Stiffness")
    g = ds.geometry()
    if xs is None:
        xs = list(interior_grid(g, grid_n))
        if endpoints:
            x_min, x_max, _ = workspace_bounds(g)
            xs = [x_min] + xs + [x_max]
    xs = [float(x) for x in xs]
    vals = _map(lambda x: _stiffness_values(ds, name, x, 1.0, links, options), xs, workers)
    return [SweepRecord(name, 1.0, x, k, v) for x, d in zip(xs, vals) for k, v in d.items()]


def frequency_map(ds, model="simplified", grid_n=41, *, xs=None,
                  options=robot.DEFAULT_OPTIONS, workers=None):
    """First two natural frequencies over the shrunk workspace."""
    name = _model_name(model, "Modal")
    xs = [float(x) for x in (interior_grid(ds.geometry(), grid_n) if xs is None else xs)]
    vals = _map(lambda x: _modal_values(ds, name, x, 1.0, options), xs, workers)
    return [SweepRecord(name, 1.0, x, k, float(v), c)
            for x, d in zip(xs, vals) for k, v, c in d]


def alpha_sweep(ds, alphas=DEFAULT_ALPHAS, stations_=("center", "left", "right"),
                models=MODELS, *, options=robot.DEFAULT_OPTIONS, workers=None):
    """Metrics of every model at workspace stations for each leg-length factor.

    Refined models always use equivalent-beam legs so they can be scaled.
    """
    for m in models:
        if m not in MODELS:
            raise ValueError(f"unknown model {m!r}")
    items = []
    for a in alphas:
        g, _ = scale_geometry(ds.geometry(), ds.leg_masses, float(a))
        st = stations(g)
        for s in stations_:
            for m in models:
                items.append((float(a), s, st[s], m))

    def run(item):
        a, s, x, m = item
        if m in (SIMPLIFIED_STIFFNESS, REFINED_STIFFNESS):
            d = _stiffness_values(ds, m, x, a, "beam", options)
            return [SweepRecord(m, a, x, k, v, None, s) for k, v in d.items()]
        return [SweepRecord(m, a, x, k, float(v), c, s) for k, v, c in _modal_values(ds, m, x, a, options)]

    return [r for rs in _map(run, items, workers) for r in rs]


def trend(values, rtol=TREND_RTOL):
    """'Increasing', 'Decreasing' or 'NonMonotone' for a sequence of >= 3 values."""
    v = np.asarray(values, dtype=float)
    if len(v) < 3:
        raise ValueError("a trend needs at least 3 points")
    slack = rtol * np.maximum(np.abs(v[1:]), np.abs(v[:-1]))
    dv = np.diff(v)
    if np.all(dv > slack):
        return "Increasing"
    if np.all(dv < -slack):
        return "Decreasing"
    return "NonMonotone"


def trend_report(records):
    """Monotonicity verdict over alpha for every (model, metric, station) series."""
    series = {}
    for r in records:
        series.setdefault((r.model, r.metric, r.station), []).append((r.alpha, r.value))
    out = {}
    for key, pts in series.items():
        pts.sort()
        if len(pts) >= 3:
            out[key] = trend([v for _, v in pts])
    return out
