"""
Projections of number states and superpositions onto the eigenstates of H(+V)
and H(-V), and the sign-discrimination figure of merit Delta(V).

On even rings the two spectra are mirror images, so eigenstate ``i`` of H(+V)
(ascending) is paired with eigenstate ``dim-1-i`` of H(-V).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailureError, UnsupportedError
from .lattice import LatticeConfig, TwoParticleState, boost_diagonal
from .spectrum import CLUSTER_RTOL, SpectralDecomposition, cluster_labels, solve
from .dynamics import StateSpec, prepare_state

MIRROR_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Projections:
    """Coefficients ``<Phi_i|psi>`` in eigenvalue order; ``is_real`` is False for complex input."""

    coefficients: np.ndarray
    is_real: bool


def eigenprojections(state: TwoParticleState, decomp: SpectralDecomposition) -> Projections:
    c = decomp.eigenvectors.T @ state.amplitudes
    is_real = bool(np.abs(c.imag).max() <= 1e-14 * max(np.abs(c).max(), 1.0))
    return Projections(c.real.copy() if is_real else c, is_real)


@dataclass(frozen=True, eq=False)
class ProjectionProfile:
    """Summed squared projection per degenerate energy level."""

    energies: np.ndarray
    weights: np.ndarray
    sign: str = "+"
    state: str = ""


def projection_profile(coeffs: Projections, decomp: SpectralDecomposition, rtol: float = CLUSTER_RTOL,
                       sign: str = "+", state: str = "") -> ProjectionProfile:
    labels = cluster_labels(decomp.eigenvalues, rtol)
    weights = np.bincount(labels, np.abs(coeffs.coefficients) ** 2)
    counts = np.bincount(labels)
    energies = np.bincount(labels, decomp.eigenvalues) / counts
    return ProjectionProfile(energies, weights, sign, state)


def _require_even(N):
    if N % 2:
        raise UnsupportedError(f"mirror pairing of H(+V) and H(-V) needs an even ring, got N={N}")


def _check_mirror(plus, minus):
    mismatch = np.abs(plus.eigenvalues + minus.eigenvalues[::-1]).max()
    if mismatch > MIRROR_TOL * max(np.abs(plus.eigenvalues).max(), 1.0):
        raise NumericalFailureError("spectra of H(+V) and H(-V) are not mirror images",
                                    {"max_mismatch": float(mismatch)})


def mirror_aligned_basis(plus: SpectralDecomposition, minus: SpectralDecomposition, rtol=CLUSTER_RTOL):
    """H(-V) eigenvectors reordered to pair with H(+V) and rotated into the boost gauge.

    Column ``i`` of the result spans the same H(-V) eigenspace as the paired
    eigenvalue ``-omega_i``; inside each degenerate level the basis is rotated
    (orthogonal Procrustes) onto the boost image of the H(+V) eigenvectors, and
    isolated levels get the matching sign.  Returns ``(Q_minus, residual)``
    where ``residual`` is the largest elementwise distance to the boost image;
    it is round-off small exactly when the boost maps eigenspaces onto each
    other.
    """
    _require_even(plus.basis.N)
    _check_mirror(plus, minus)
    B = boost_diagonal(plus.basis)
    target = B[:, None] * plus.eigenvectors
    Qm = minus.eigenvectors[:, ::-1]
    labels = cluster_labels(plus.eigenvalues, rtol)
    aligned = np.empty_like(Qm)
    for lab in np.unique(labels):
        cols = np.flatnonzero(labels == lab)
        Y, X = Qm[:, cols], target[:, cols]
        U, _, Wt = np.linalg.svd(Y.T @ X)
        aligned[:, cols] = Y @ (U @ Wt)
    return aligned, float(np.abs(aligned - target).max())


@dataclass(frozen=True)
class CoefficientRow:
    state: tuple
    index: int
    omega_plus: float
    c_plus: float
    c_minus: float


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    rows: tuple
    alignment_residual: float
    config: LatticeConfig

    def for_state(self, pair):
        rows = [r for r in self.rows if r.state == tuple(pair)]
        return np.array([r.c_plus for r in rows]), np.array([r.c_minus for r in rows])


def coefficient_table(pairs, N: int, J: float = 1.0, V: float = 8.0) -> CoefficientTable:
    """Projections of number states ``|i,j>_s`` onto paired eigenstates of H(+|V|) and H(-|V|)."""
    _require_even(N)
    cfg = LatticeConfig(N, J, abs(V))
    plus, minus = solve(cfg), solve(cfg.flipped())
    Qm, residual = mirror_aligned_basis(plus, minus)
    rows = []
    for i, j in pairs:
        k = plus.basis.sorted_index(i, j)
        pair = (min(i, j), max(i, j))
        for n in range(plus.dim):
            rows.append(CoefficientRow(pair, n, float(plus.eigenvalues[n]),
                                       float(plus.eigenvectors[k, n]), float(Qm[k, n])))
    return CoefficientTable(tuple(rows), residual, cfg)


def delta_components(state: TwoParticleState, plus: SpectralDecomposition, minus: SpectralDecomposition,
                     rtol=CLUSTER_RTOL):
    """Per-level ``(omega, P+, P-)`` with H(-V) levels mirrored onto H(+V) levels."""
    _require_even(plus.basis.N)
    _check_mirror(plus, minus)
    labels = cluster_labels(plus.eigenvalues, rtol)
    wp = np.abs(plus.eigenvectors.T @ state.amplitudes) ** 2
    wm = (np.abs(minus.eigenvectors.T @ state.amplitudes) ** 2)[::-1]
    omega = np.bincount(labels, plus.eigenvalues) / np.bincount(labels)
    return omega, np.bincount(labels, wp), np.bincount(labels, wm)


def delta_of_v(spec: StateSpec, N: int, J: float = 1.0, V_grid=(2, 4, 8, 12, 16, 20), rtol=CLUSTER_RTOL):
    """Delta(V) = sum over levels of |P+(omega) - P-(omega)|**2 for each V in the grid."""
    _require_even(N)
    state = prepare_state(spec)
    out = []
    for V in V_grid:
        cfg = LatticeConfig(N, J, abs(float(V)))
        plus, minus = solve(cfg), solve(cfg.flipped())
        _, pp, pm = delta_components(state, plus, minus, rtol)
        out.append((float(V), float(np.sum((pp - pm) ** 2))))
    return out
