"""Harmonic spectrum of the soft-core atom in a quantized laser mode.

Prints odd-order intensities with the resonant (A) and non-resonant (B)
parts, marks the ionization threshold, and reports the decay rates the
plateau check uses.  Even orders vanish by parity and are skipped.

    python3 demos/harmonic_spectrum.py [max_order]
"""

import sys

from qohhg.kh import KHQuery, hhg_spectrum, plateau_diagnostic, threshold_order
from qohhg.potential import build_model_atom

max_order = int(sys.argv[1]) if len(sys.argv) > 1 else 35

atom = build_model_atom(60.0, 1200)
q = KHQuery(atom)
thr = threshold_order(atom, q.laser_omega_tilde)
rows = hhg_spectrum(q, max_order)

print(f"E0 = {atom.energies[0]:.6f} a.u., omega~ = {q.laser_omega_tilde:.6f} a.u., "
      f"scale = {q.scale:.4f}, n0 = {q.n0}")
print(f"first order above threshold: {thr}\n")
print(f"{'order':>5} {'intensity':>11} {'|A|':>10} {'|B|':>10}")
for r in rows:
    if r.order % 2:
        mark = "  <- threshold" if r.order == thr else ""
        print(f"{r.order:5d} {r.intensity:11.3e} {abs(r.a_term):10.3e} {abs(r.b_term):10.3e}{mark}")

d = plateau_diagnostic(rows, thr)
print("\ndecades per order below threshold:", ", ".join(f"{k}:{v:.2f}" for k, v in d["below"]))
print("decades per order above threshold:", ", ".join(f"{k}:{v:.2f}" for k, v in d["above"]))
