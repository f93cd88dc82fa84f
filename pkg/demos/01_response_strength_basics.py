#!/usr/bin/env python3
"""Compute the spectral response strength of an EP three different ways.

The 3x3 triangular toy model carries a second-order EP at e_a next to an
isolated state at e_b. Its response strength has a closed form, and the
library computes it numerically by contour integration of the resolvent;
at zero detuning the EP becomes third order and the nilpotent-power shortcut
applies as well.
"""

import numpy as np

from epsrs import (
    Contour,
    ToyModelParams,
    cluster_spectrum,
    toy_h0,
    toy_xi2,
    toy_xi3,
    xi_residue,
    xi_special,
)

# --- an EP2 embedded in a 3-dimensional space -----------------------------
params = ToyModelParams(e_a=0.0, e_b=2e-3, a=-1.0, b=-1.0)
h0 = toy_h0(params)
print("H0 =")
print(np.array2string(h0, precision=4))

clusters = cluster_spectrum(h0)
for c in clusters:
    print(f"cluster at {c.eigenvalue:.6g}: multiplicity "
          f"{c.algebraic_multiplicity}, order {c.order}")

ep2 = next(c for c in clusters if c.order == 2)
report = xi_residue(h0, ep2)
print(f"\nresidue route:       xi = {report.strength:.15g} "
      f"({report.quadrature_nodes_used} nodes, converged={report.converged})")
print(f"closed form (EP2):   xi = {toy_xi2(params):.15g}")
print(f"rank-1 residual of W: {report.rank1_residual:.2e}")

# a much tighter contour gives the same answer (exponentially convergent
# trapezoid rule; the paper's production radius is 1e-11)
tight = xi_residue(h0, ep2, Contour(ep2.eigenvalue, 1e-11))
print(f"tight contour 1e-11: xi = {tight.strength:.15g}")

# --- at zero detuning the EP2 and the isolated state merge into an EP3 ----
params3 = ToyModelParams(e_a=0.0, e_b=0.0, a=-1.0, b=-1.0)
h3 = toy_h0(params3)
special = xi_special(h3, 0.0, 3)          # m = n: plain nilpotent power
general = xi_residue(h3, cluster_spectrum(h3)[0])
print(f"\nEP3 nilpotent power: xi = {special.strength:.15g}")
print(f"EP3 residue route:   xi = {general.strength:.15g}")
print(f"EP3 closed form:     xi = {toy_xi3(params3):.15g}")
