"""Coherent-state photon-sector potential versus the classical phase average.

For nbar photons and quiver amplitude alpha0 the displacement scale is
s = alpha0 / (2 sqrt(nbar)).  The quantum Fourier components differ from
the classical ones by a Gaussian smearing exp(-s^2 q^2 / 2), so the gap
closes as nbar grows at fixed alpha0.

    python3 demos/semiclassical_limit.py
"""

import numpy as np

from qohhg.potential import (build_model_atom, coherent_sector_potential,
                             scale_from_amplitude, semiclassical_phase_coefficient)

atom = build_model_atom(60.0, 1200)

for alpha0 in (4.0, 9.0):
    print(f"alpha0 = {alpha0}")
    for nbar in (100, 400, 1600):
        s = scale_from_amplitude(alpha0, nbar)
        devs = []
        for m in range(6):
            qv = coherent_sector_potential(atom, nbar, m, s)
            cv = semiclassical_phase_coefficient(atom, alpha0, m)
            devs.append(np.max(np.abs(qv - cv)) / np.max(np.abs(cv)))
        print(f"  nbar {nbar:5d}  s {s:.4f}  rel dev m=0..5: "
              + " ".join(f"{100 * d:5.2f}%" for d in devs))
