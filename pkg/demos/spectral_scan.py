"""Where does the Sym-Tafel surface meet the Weierstrass surface?

Scan lambda = i s for fixed tau and look for the zero of ||X^ST - X_k||.
"""

import numpy as np

from cpnsurf import build_chain, veronese_curve
from cpnsurf import spectral as sp

chain = build_chain(veronese_curve(3), 0.2 - 0.1j)

for tau in (0.5, 1.0, 2.0):
    rows = [r for r in sp.st_lambda_scan(chain, 1, tau) if not r["pole"]]
    best = min(rows, key=lambda r: r["distance"])
    lam = complex(best["lambda_re"], best["lambda_im"])
    print(f"tau={tau}: closest at lambda={lam:.2f}  distance {best['distance']:.2e}"
          f"  predicted +-{sp.coincidence_lambdas(tau)[0]:.4f}")

# the two constructions of X^ST agree away from the coincidence too
p = sp.SpectralParams(0.7j, 1.0)
a = sp.sym_tafel_surface(chain, 1, p)
b = sp.sym_tafel_from_wavefunction(chain, 1, p)
print("closed form vs wave function:", np.linalg.norm(a - b))

for kind in ("holomorphic", "antiholomorphic"):
    roots = sp.st_constraint_roots(kind, 3, 1.0)
    print(kind, [f"{r:.4f}" for r in roots])
    print("  condition residuals", [f"{sp.st_scalar_condition(kind, 3, 1.0, r):.1e}" for r in roots])
