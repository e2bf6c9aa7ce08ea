"""Leg-length scaling at constant stroke.

Shows that the drive-only model favors long legs while the lumped-spring
models penalize them.
"""

from biglide import sweeps
from biglide.dataset import load_dataset


def main():
    ds = load_dataset()
    recs = sweeps.alpha_sweep(ds, sweeps.DEFAULT_ALPHAS, ("center",))
    cols = [(sweeps.SIMPLIFIED_MODAL, "f1_hz", 1.0, "simp f1 [Hz]"),
            (sweeps.REFINED_MODAL, "f1_hz", 1.0, "ref f1 [Hz]"),
            (sweeps.REFINED_STIFFNESS, "planar_fx_m", 1e6, "ref fx [um]"),
            (sweeps.REFINED_STIFFNESS, "z_fz_m", 1e6, "ref fz [um]")]
    print("alpha " + "".join(f"{c[3]:>14}" for c in cols))
    for a in sweeps.DEFAULT_ALPHAS:
        vals = []
        for model, metric, scale, _ in cols:
            v = [r.value for r in recs if r.alpha == a and r.model == model and r.metric == metric]
            vals.append(v[0] * scale)
        print(f"{a:5.2f} " + "".join(f"{v:14.3f}" for v in vals))
    print()
    for (model, metric, station), verdict in sorted(sweeps.trend_report(recs).items()):
        print(f"{model:20s} {metric:30s} {station:7s} {verdict}")


if __name__ == "__main__":
    main()
