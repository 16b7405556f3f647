"""Evaluate one coherent-state superposition amplitude three ways.

The direct number-state sum, the Bessel closed form and the trajectory
Fourier integral should agree to round-off.  Then sweep |beta| below
|alpha| and watch the real part of the trajectory exponent grow.

    python3 demos/three_routes.py
"""

import numpy as np

from qohhg.displacement import (SuperpositionQuery, fourier_trajectory_element,
                                overlap_prefactor, satellite_exponent,
                                superposition_bruteforce, superposition_closed)

queries = [
    SuperpositionQuery(1.2, 1.2, 0.4, 2),
    SuperpositionQuery(2.0 + 0.5j, 1.1 - 0.3j, 0.6j, -3),
    SuperpositionQuery(-1.5, 2.4j, 0.9, 5),
]

print(f"{'alpha':>12} {'beta':>12} {'gamma':>8} {'m':>3}  {'|value|':>11}  max diff")
for q in queries:
    b = superposition_bruteforce(q)
    c = superposition_closed(q)
    f = overlap_prefactor(q.alpha, q.beta, q.gamma) * fourier_trajectory_element(q, q.m)
    diff = max(abs(b - c), abs(b - f), abs(c - f))
    print(f"{q.alpha!s:>12} {q.beta!s:>12} {q.gamma!s:>8} {q.m:>3}  {abs(c):11.4e}  {diff:.1e}")

# depletion: |beta| < |alpha| gives a real, cosine-shaped part of amplitude |gamma|(|alpha|-|beta|)
phi = np.linspace(0, 2 * np.pi, 721)
print("\n|beta|   max Re(exponent)   |gamma|(|alpha|-|beta|)")
for b in (1.0, 0.95, 0.9, 0.7):
    e = satellite_exponent(SuperpositionQuery(1.0, b, 0.2), phi)
    print(f"{b:6.2f}   {np.max(np.abs(e.real)):16.6f}   {0.2 * (1.0 - b):.6f}")
