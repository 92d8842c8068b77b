"""
Two-boson band structure on a ring
==================================

Diagonalize the two-particle Bose-Hubbard Hamiltonian on a 30-site ring for
repulsive and attractive interaction, label every eigenstate by its
quasimomentum, and compare the two spectra.
"""
import numpy as np

from bhwalk import LatticeConfig, assign_quasimomenta, solve, spectrum_deviation
from bhwalk.spectrum import MAIN, MINIBAND, radial_wavefunction

N, V = 30, 8.0

# 465 states per sign: 30 bound pairs near +-V and 435 scattering states in [-4J, 4J]
for v in (V, -V):
    bands = assign_quasimomenta(solve(LatticeConfig(N, 1.0, v)))
    mini = [p.omega for p in bands.points if p.band == MINIBAND]
    main = [p.omega for p in bands.points if p.band == MAIN]
    print(f"V = {v:+.0f}: miniband {len(mini)} states in [{min(mini):.3f}, {max(mini):.3f}], "
          f"main subband {len(main)} states in [{min(main):.3f}, {max(main):.3f}]")

# the bound-pair dispersion, one state per quasimomentum
bands = assign_quasimomenta(solve(LatticeConfig(N, 1.0, V)))
print("\n  nu      K     omega(K)")
for p in sorted((p for p in bands.points if p.band == MINIBAND), key=lambda p: p.nu)[::5]:
    print(f"{p.nu:4d} {p.K:8.4f} {p.omega:10.5f}")

# relative-coordinate wavefunction of the K = 0 bound pair: localized at r = 0
k0 = next(k for k, p in enumerate(bands.points) if p.band == MINIBAND and p.nu == N)
phi = radial_wavefunction(bands, k0).phi
print("\n|phi(r)| for r = 0..5:", np.round(np.abs(phi[:6]), 4))

# on even rings the spectra of H(+V) and H(-V) mirror each other; odd rings break this
print("\n  N    D_V")
for n in (4, 5, 6, 7, 9, 11, 30, 31):
    print(f"{n:3d} {spectrum_deviation(n, 1.0, V):.3e}")
