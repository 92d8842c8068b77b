"""
Exact diagonalization, quasimomentum labelling and band classification.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegeneracyWarning, NumericalFailureError
from .lattice import (
    HamiltonianMatrix,
    LatticeConfig,
    SymmetrizedBasis,
    build_hamiltonian,
    translation_matrix,
)

CLUSTER_RTOL = 1e-8
RESIDUAL_TOL = 1e-9
ORTHO_TOL = 1e-10
MINIBAND_THRESHOLD = 4.0

MINIBAND = "miniband"
MAIN = "main-subband"


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues and real orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    config: LatticeConfig
    basis: SymmetrizedBasis

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def fix_sign_gauge(Q: np.ndarray) -> np.ndarray:
    """Flip each column so that its largest-magnitude component is positive."""
    Q = np.array(Q, copy=True)
    idx = np.argmax(np.abs(Q), axis=0)
    signs = np.sign(Q[idx, np.arange(Q.shape[1])])
    signs[signs == 0] = 1.0
    return Q * signs


def diagonalize(H: HamiltonianMatrix) -> SpectralDecomposition:
    M = H.elements
    try:
        w, Q = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            "symmetric eigensolver did not converge", {"dim": M.shape[0], "cause": str(exc)}
        ) from exc
    Q = fix_sign_gauge(Q)

    residual = np.linalg.norm(M @ Q - Q * w, axis=0).max()
    ortho = np.abs(Q.T @ Q - np.eye(len(w))).max()
    if residual > RESIDUAL_TOL or ortho > ORTHO_TOL:
        raise NumericalFailureError(
            "eigendecomposition failed its accuracy checks",
            {"max_residual": float(residual), "max_orthogonality_error": float(ortho)},
        )
    w.setflags(write=False)
    Q.setflags(write=False)
    return SpectralDecomposition(w, Q, H.config, H.basis)


def solve(config: LatticeConfig) -> SpectralDecomposition:
    """Build and diagonalize in one call."""
    return diagonalize(build_hamiltonian(config))


def cluster_labels(energies, rtol=CLUSTER_RTOL, scale=None) -> np.ndarray:
    """Integer cluster label per (ascending) energy; a new cluster starts at each gap above tolerance."""
    energies = np.asarray(energies)
    if scale is None:
        scale = max(np.abs(energies).max(initial=0.0), 1.0)
    gaps = np.diff(energies) > rtol * scale
    return np.concatenate([[0], np.cumsum(gaps)]).astype(int)


@dataclass(frozen=True)
class BandPoint:
    nu: int
    K: float
    omega: float
    band: str
    doublon_weight: float


@dataclass(frozen=True, eq=False)
class BandStructure:
    """Eigenstates resolved by quasimomentum.

    ``states`` holds the complex, translation-diagonal eigenvectors (columns in
    the same order as ``points``).  ``warnings`` collects degeneracy problems met
    during the simultaneous diagonalization.
    """

    points: tuple
    states: np.ndarray
    config: LatticeConfig
    basis: SymmetrizedBasis
    warnings: tuple = field(default=())

    @property
    def N(self) -> int:
        return self.config.N

    def count(self, band: str) -> int:
        return sum(p.band == band for p in self.points)


def _sector_rotation(M: np.ndarray):
    """Unitary Z and eigenphases diagonalizing the (normal) restricted translation M."""
    if M.shape == (1, 1):
        return np.ones((1, 1), dtype=complex), M.astype(complex).ravel()
    D, Z = scipy.linalg.schur(M.astype(complex), output="complex")
    return Z, np.diag(D)


def assign_quasimomenta(decomp: SpectralDecomposition, threshold: float = MINIBAND_THRESHOLD,
                        rtol: float = CLUSTER_RTOL) -> BandStructure:
    basis = decomp.basis
    N = basis.N
    w, Q = decomp.eigenvalues, decomp.eigenvectors
    T = translation_matrix(basis, 1)
    labels = cluster_labels(w, rtol)
    issues = []

    nus = np.empty(len(w), dtype=int)
    states = np.empty(Q.shape, dtype=complex)
    for lab in np.unique(labels):
        cols = np.flatnonzero(labels == lab)
        Qc = Q[:, cols]
        M = Qc.T @ T @ Qc
        leak = np.linalg.norm(T @ Qc - Qc @ M)
        Z, lam = _sector_rotation(M)
        Vc = Qc @ Z
        K = np.mod(-np.angle(lam), 2 * np.pi)
        nu = np.rint(K * N / (2 * np.pi)).astype(int) % N
        nu[nu == 0] = N
        sharp = np.abs(lam - np.exp(-2j * np.pi * nu / N)).max()
        if leak > 1e-8 or sharp > 1e-8:
            issues.append(
                f"cluster at omega={w[cols[0]]:.12g} (size {len(cols)}): "
                f"translation leakage {leak:.2e}, eigenphase mismatch {sharp:.2e}"
            )
        order = np.argsort(nu, kind="stable")
        nus[cols] = nu[order]
        states[:, cols] = Vc[:, order]

    doublon = (np.abs(states[basis.is_double]) ** 2).sum(axis=0)
    V = decomp.config.V
    if abs(decomp.config.v) >= threshold:
        nearest = np.argsort(np.abs(w - V), kind="stable")[:N]
        is_mini = np.zeros(len(w), dtype=bool)
        is_mini[nearest] = True
    else:
        is_mini = doublon > 0.5

    for msg in issues:
        warnings.warn(msg, DegeneracyWarning, stacklevel=2)

    points = tuple(
        BandPoint(int(nus[k]), 2 * np.pi * nus[k] / N, float(w[k]),
                  MINIBAND if is_mini[k] else MAIN, float(doublon[k]))
        for k in range(len(w))
    )
    states.setflags(write=False)
    return BandStructure(points, states, decomp.config, basis, tuple(issues))


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """phi(r) for r = 0..N//2; ``weights`` counts how often each r occurs on the ring (1 or 2)."""

    K: float
    r: np.ndarray
    phi: np.ndarray
    weights: np.ndarray


def radial_wavefunction(bands: BandStructure, state_index: int) -> RadialProfile:
    """Relative-coordinate amplitude phi(r), r = 0..N//2, of a K-resolved eigenstate.

    Pairs further apart than N/2 are read the short way round the ring, which
    shifts their centre of mass by N/2.
    """
    basis = bands.basis
    N = basis.N
    point = bands.points[state_index]
    psi = bands.states[:, state_index]

    i = basis.first + 1.0
    j = basis.second + 1.0
    d = j - i
    wrap = d > N / 2
    r = np.where(wrap, N - d, d).astype(int)
    R = np.where(wrap, (i + j + N) / 2, (i + j) / 2)
    values = psi * np.exp(-1j * point.K * R)

    rmax = N // 2
    phi = np.zeros(rmax + 1, dtype=complex)
    for rr in range(rmax + 1):
        sel = r == rr
        spread = np.abs(values[sel] - values[sel].mean()).max()
        if spread > 1e-6 * max(np.abs(values).max(), 1e-300):
            raise ValueError(
                f"state {state_index} does not factorize as exp(iKR) phi(r) (spread {spread:.2e} at r={rr})"
            )
        phi[rr] = values[sel].mean()

    w = np.full(rmax + 1, 2.0)
    w[0] = 1.0
    if N % 2 == 0:
        w[-1] = 1.0
    phi /= np.sqrt(np.sum(w * np.abs(phi) ** 2))
    k = np.argmax(np.abs(phi))
    phi *= np.exp(-1j * np.angle(phi[k]))
    return RadialProfile(point.K, np.arange(rmax + 1), phi, w)


def spectrum_deviation(N: int, J: float = 1.0, V: float = 8.0) -> float:
    """Norm of Spec[H(V)] + Spec[H(-V)] with opposite orderings."""
    plus = np.linalg.eigvalsh(build_hamiltonian(LatticeConfig(N, J, V)).elements)
    minus = np.linalg.eigvalsh(build_hamiltonian(LatticeConfig(N, J, -V)).elements)
    return float(np.sqrt(np.sum((np.sort(plus) + np.sort(minus)[::-1]) ** 2)))
