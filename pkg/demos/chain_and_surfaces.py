"""Projector chain of the CP^2 Veronese curve and its three surfaces."""

import numpy as np

from cpnsurf import build_chain, veronese_curve
from cpnsurf.chain import el_residual
from cpnsurf.export import su_coordinates
from cpnsurf.linalg import hermitian_eigenvalues
from cpnsurf.surfaces import killing_closed_form, minimal_poly_roots, weierstrass_surface

np.set_printoptions(precision=4, suppress=True)

n = 3
xi = 0.4 + 0.3j
chain = build_chain(veronese_curve(n), xi)
print("c_k:", chain.c)
print("axiom residuals:", chain.axiom_residuals())

for k in range(n):
    P = chain.P(k)
    print(f"\nP_{k} =\n{P}")
    print("  EL residual", el_residual(chain, k))

    s = weierstrass_surface(chain, k)
    # X_k is anti-Hermitian, so iX_k has real spectrum
    ev = hermitian_eigenvalues(1j * s.x)
    print("  spectrum of X_k:", [complex(0, -e) for e in ev])
    print("  minimal polynomial roots:", minimal_poly_roots(k, n))
    print("  (X_k, X_k) =", -0.5 * np.trace(s.x @ s.x).real, " closed form", killing_closed_form(k, k, n))
    print("  su(3) coordinates:", su_coordinates(s.x))
