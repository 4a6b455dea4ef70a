"""Rotating traveling wave in CP^1 with light-cone coordinates."""

import numpy as np

from cpnsurf import minkowski as mk

m = mk.rotating_wave_profile(1.3, kappa=0.7, lam=0.5, c1=1.2, c2=0.3, c3=-0.4)
xp, xm = 0.3, -0.6

print("theta identities:")
for k, v in mk.theta_identities(m.theta(xp, xm)).items():
    print(f"  {k:26s} {v:.2e}")
print("  with the sign flipped:", mk.commutator_k_residual(m.theta(xp, xm), sign=-1))

print("linear problem, exp(-2 chi M):", mk.traveling_lax_residuals(m, xp, xm))
print("linear problem, exp(+2 chi M):", mk.traveling_lax_residuals(m, xp, xm, printed=True))

lhs, rhs = mk.conjugated_generator(m, xp, xm)
M = m.theta(xp, xm, 1).generator()
print("phi^+ M phi + M:", np.linalg.norm(lhs + M), "  vs M exp(4 chi M):", np.linalg.norm(lhs - rhs))

grid = np.round(np.arange(-3, 3.005, 0.01), 10)
rows = mk.kappa_coincidence_scan(m, grid)
best = min(rows, key=lambda r: r["ratio_residual"])
print(f"tangent ratios agree at kappa={best['kappa']} (kappa* = {mk.kappa_star(m.lam)}),"
      f" fitted c1 = {best['fitted_c1']:.4f}")
