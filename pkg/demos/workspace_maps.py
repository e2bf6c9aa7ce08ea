"""Deflection and frequency maps across the stroke for the built-in dataset.

Prints a coarse table comparing the drive-only and lumped-spring models.
"""

import numpy as np

from biglide import sweeps
from biglide.dataset import load_dataset


def table(records, metric):
    rows = sorted((r.x, r.value) for r in records if r.metric == metric)
    return np.array(rows)


def main():
    ds = load_dataset()
    n = 11
    simp = sweeps.stiffness_map(ds, "simplified", n)
    ref = sweeps.stiffness_map(ds, "refined", n)
    fs = sweeps.frequency_map(ds, "simplified", n)
    fr = sweeps.frequency_map(ds, "refined", n)

    s_fx, r_fx, r_fz = table(simp, "planar_fx_m"), table(ref, "planar_fx_m"), table(ref, "z_fz_m")
    print("x [m]    simp fx [um]  refined fx [um]  refined fz [um]")
    for (x, a), (_, b), (_, c) in zip(s_fx, r_fx, r_fz):
        print(f"{x:7.4f}  {a * 1e6:12.4f}  {b * 1e6:15.3f}  {c * 1e6:15.2f}")

    print("\nx [m]    simp f1 [Hz]  refined f1 [Hz]  out-of-plane fraction")
    frac = table(fr, "mode1_out_of_plane_fraction")
    for (x, a), (_, b), (_, c) in zip(table(fs, "f1_hz"), table(fr, "f1_hz"), frac):
        print(f"{x:7.4f}  {a:12.1f}  {b:15.1f}  {c:21.3f}")


if __name__ == "__main__":
    main()
