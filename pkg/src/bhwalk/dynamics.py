"""
Initial states, exact propagation and one/two-site observables.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatchError, DegenerateStateError
from .lattice import TwoParticleState, build_basis
from .spectrum import SpectralDecomposition

# Initial states studied on the 30-site ring (one-based sites, unnormalized).
PRESETS = {
    "psi1": ((15, 17, 1.0),),
    "psi2": ((14, 16, 1.0),),
    "psi3": ((14, 17, 1.0),),
    "psi4": ((14, 16, 1.0), (15, 17, 1.0)),
    "psi5": ((14, 16, 1.0), (14, 17, 1.0)),
    "psi6": ((14, 14, 1.0), (14, 17, 1.0)),
}
PRESET_N = 30

DEFAULT_TAU_MAX = 4.0
DEFAULT_TAU_STEPS = 201


@dataclass(frozen=True)
class StateSpec:
    """A superposition ``sum amp * |i,j>_s`` on an N-site ring."""

    terms: tuple
    N: int

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a state needs at least one term")
        terms = []
        for i, j, amp in self.terms:
            lo, hi = sorted((int(i), int(j)))
            if lo < 1 or hi > self.N:
                raise ValueError(f"pair ({i}, {j}) outside sites 1..{self.N}")
            terms.append((lo, hi, complex(amp)))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def preset(cls, name: str, N: int = PRESET_N) -> "StateSpec":
        key = name.lower().replace("ψ", "psi")
        if key.isdigit():
            key = "psi" + key
        if key not in PRESETS:
            raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        return cls(PRESETS[key], N)

    @classmethod
    def parse(cls, text: str, N: int) -> "StateSpec":
        """Preset name, or ``"i,j[:amp]; i,j[:amp]; ..."`` with Python complex amplitudes."""
        text = text.strip()
        try:
            return cls.preset(text, N)
        except KeyError:
            pass
        terms = []
        for chunk in filter(None, (c.strip() for c in text.split(";"))):
            sites, _, amp = chunk.partition(":")
            i, j = (int(s) for s in sites.split(","))
            terms.append((i, j, complex(amp.replace(" ", "")) if amp else 1.0))
        return cls(tuple(terms), N)


def prepare_state(spec: StateSpec) -> TwoParticleState:
    basis = build_basis(spec.N)
    a = np.zeros(basis.dim, dtype=complex)
    for i, j, amp in spec.terms:
        a[basis.index(i, j)] += amp
    norm = np.linalg.norm(a)
    if norm == 0:
        raise DegenerateStateError("terms cancel to the zero vector")
    return TwoParticleState(basis, a / norm)


def _check_basis(state, decomp):
    if state.basis != decomp.basis:
        raise BasisMismatchError(
            f"state on N={state.N} cannot be evolved with a decomposition for N={decomp.basis.N}"
        )


def evolve(state: TwoParticleState, decomp: SpectralDecomposition, tau: float) -> TwoParticleState:
    """Exact propagation to dimensionless time ``tau = J t``."""
    _check_basis(state, decomp)
    Q = decomp.eigenvectors
    phases = np.exp(-1j * decomp.eigenvalues / decomp.config.J * tau)
    a = Q @ (phases * (Q.T @ state.amplitudes))
    return TwoParticleState(state.basis, a)


def evolve_series(state: TwoParticleState, decomp: SpectralDecomposition, taus) -> np.ndarray:
    """Amplitudes at every time of ``taus``, shape ``(len(taus), dim)``."""
    _check_basis(state, decomp)
    Q = decomp.eigenvectors
    coeffs = Q.T @ state.amplitudes
    phases = np.exp(-1j * np.outer(np.asarray(taus, dtype=float), decomp.eigenvalues / decomp.config.J))
    return (phases * coeffs) @ Q.T


@dataclass(frozen=True, eq=False)
class DensityProfile:
    n: np.ndarray
    tau: float = 0.0


@dataclass(frozen=True, eq=False)
class CorrelationMap:
    """Two-site correlation matrix (0-based array indices for 1-based sites)."""

    gamma: np.ndarray
    tau: float = 0.0


def site_density(state: TwoParticleState, tau: float = 0.0) -> DensityProfile:
    basis = state.basis
    p = np.abs(state.amplitudes) ** 2
    n = np.bincount(basis.first, p, minlength=basis.N) + np.bincount(basis.second, p, minlength=basis.N)
    return DensityProfile(n, tau)


def correlation_map(state: TwoParticleState, tau: float = 0.0) -> CorrelationMap:
    basis = state.basis
    p = np.abs(state.amplitudes) ** 2
    g = np.zeros((basis.N, basis.N))
    g[basis.first, basis.second] = p
    g[basis.second, basis.first] = p
    g[np.diag_indices(basis.N)] *= 2.0
    return CorrelationMap(g, tau)


def normalize_correlations(cmap: CorrelationMap) -> CorrelationMap:
    peak = cmap.gamma.max()
    if not peak > 0:
        raise DegenerateStateError("cannot normalize an all-zero correlation map")
    return CorrelationMap(cmap.gamma / peak, cmap.tau)


def seam_density(profile: DensityProfile, width: int = 2) -> float:
    """Largest density within ``width`` sites either side of the 1|N seam."""
    n = profile.n
    return float(max(n[:width].max(), n[-width:].max()))


def time_grid(tau_max: float = DEFAULT_TAU_MAX, steps: int = DEFAULT_TAU_STEPS) -> np.ndarray:
    return np.linspace(0.0, tau_max, steps)
