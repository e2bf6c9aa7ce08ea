"""Cantilever built from the leg-1 equivalent beam, refined element by element."""

import numpy as np

from biglide.beams import fit_equivalent_beam
from biglide.dataset import load_dataset
from biglide.modal import Clamp, assemble_system, discretize_link, natural_frequencies

BETA1 = 1.8751040687119611


def main():
    ds = load_dataset()
    b = fit_equivalent_beam(ds.compliance("leg1"), ds.L1, ds.m_leg1)
    exact = BETA1**2 * np.sqrt(min(b.EIy, b.EIz) / b.mass_per_length) / (2 * np.pi * b.L**2)
    print(f"EA {b.EA:.4g} N, EIy {b.EIy:.4g}, EIz {b.EIz:.4g}, GJ {b.GJ:.4g} N m^2")
    print(f"analytic f1 {exact:.3f} Hz")
    for m in (2, 3, 5, 10, 20, 40, 80):
        sys = assemble_system([discretize_link(b, m)], [Clamp(0, 0)])
        f1 = natural_frequencies(sys, 1)[0].frequency
        print(f"{m:3d} elements  f1 {f1:9.3f} Hz  error {100 * (f1 / exact - 1):+.4f} %")


if __name__ == "__main__":
    main()
