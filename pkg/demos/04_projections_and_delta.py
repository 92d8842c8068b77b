"""
Projections on the eigenstates of H(+V) and H(-V)
=================================================

On a four-site ring, project number states on the paired eigenstates of the
two Hamiltonians.  The boost maps one eigenbasis onto the other, so each
coefficient either keeps or flips its sign depending on the site parity of the
number state.  Summing squared projections over degenerate levels gives the
profiles P+(omega), P-(omega), and their squared difference Delta(V).
"""
import numpy as np

from bhwalk import StateSpec
from bhwalk.projections import coefficient_table, delta_of_v

table = coefficient_table([(1, 1), (1, 2), (1, 3), (1, 4)], 4, 1.0, 8.0)
print(f"boost alignment residual: {table.alignment_residual:.1e}\n")
print("omega+     " + "".join(f"   |{i},{j}>: C+     C-  " for i, j in [(1, 1), (1, 2), (1, 3), (1, 4)]))
cols = [table.for_state(p) for p in [(1, 1), (1, 2), (1, 3), (1, 4)]]
omegas = [r.omega_plus for r in table.rows if r.state == (1, 1)]
for n, w in enumerate(omegas):
    print(f"{w:8.4f}  " + "".join(f"   {cp[n]:+.4f} {cm[n]:+.4f}" for cp, cm in cols))

# Delta(V) on the 30-site ring: zero for number states, decaying for psi6, flat for psi5
grid = [2, 4, 8, 12, 16, 20]
print("\n   V    " + "  ".join(f"{name:>9s}" for name in ("|15,17>", "psi5", "psi6")))
curves = [delta_of_v(StateSpec(((15, 17, 1.0),), 30), 30, 1.0, grid),
          delta_of_v(StateSpec.preset("psi5"), 30, 1.0, grid),
          delta_of_v(StateSpec.preset("psi6"), 30, 1.0, grid)]
for k, V in enumerate(grid):
    print(f"{V:4d}    " + "  ".join(f"{c[k][1]:9.2e}" for c in curves))
