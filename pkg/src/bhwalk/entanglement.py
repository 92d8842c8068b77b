"""
Entanglement of particles across a bipartition of the lattice sites.

The state is split into sectors with k = 0, 1, 2 particles in region A.  Only
the k = 1 sector can carry entanglement; its weight times the normalized
linear entropy of the reduced one-particle state on A gives E_P.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySectorError, InvalidLatticeError, NumericalFailureError
from .lattice import TwoParticleState

PSD_FLOOR = -1e-10


@dataclass(frozen=True)
class Bipartition:
    A: frozenset
    B: frozenset
    N: int

    def __post_init__(self):
        full = set(range(1, self.N + 1))
        A, B = frozenset(self.A), frozenset(self.B)
        if A & B:
            raise InvalidLatticeError(f"regions overlap on sites {sorted(A & B)}")
        if A | B != full:
            raise InvalidLatticeError("regions must cover every site 1..N")
        if not A or not B:
            raise InvalidLatticeError("both regions must be non-empty")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @classmethod
    def from_sites(cls, A, N):
        A = frozenset(int(s) for s in A)
        return cls(A, frozenset(range(1, N + 1)) - A, N)

    @classmethod
    def halves(cls, N):
        return cls.from_sites(range(1, N // 2 + 1), N)

    @classmethod
    def parse(cls, text, N):
        """Sites of A as ``"1..15"`` or ``"1,3,5..8"``."""
        sites = set()
        for chunk in filter(None, (c.strip() for c in text.split(","))):
            if ".." in chunk:
                lo, hi = chunk.split("..")
                sites.update(range(int(lo), int(hi) + 1))
            else:
                sites.add(int(chunk))
        bad = [s for s in sites if not 1 <= s <= N]
        if bad:
            raise InvalidLatticeError(f"sites {bad} outside 1..{N}")
        return cls.from_sites(sites, N)

    @property
    def label(self) -> str:
        return _compress(sorted(self.A))

    def shifted(self, shift):
        return Bipartition.from_sites(((a - 1 + shift) % self.N + 1 for a in self.A), self.N)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.N, dtype=bool)
        m[[a - 1 for a in self.A]] = True
        return m


def _compress(sites):
    runs, start = [], None
    for k, s in enumerate(sites):
        if start is None:
            start = s
        if k + 1 == len(sites) or sites[k + 1] != s + 1:
            runs.append(f"{start}..{s}" if s != start else f"{s}")
            start = None
    return ",".join(runs)


@dataclass(frozen=True, eq=False)
class SectorProjection:
    k: int
    probability: float
    amplitudes: np.ndarray


@dataclass(frozen=True)
class EntanglementRecord:
    tau: float
    E_P: float
    P11: float
    partition: str


def sector_of_pairs(basis, part: Bipartition) -> np.ndarray:
    """Number of particles in A for each basis pair."""
    inA = part.mask()
    return inA[basis.first].astype(int) + inA[basis.second].astype(int)


def project_sectors(state: TwoParticleState, part: Bipartition) -> list:
    k_of = sector_of_pairs(state.basis, part)
    out = []
    for k in (0, 1, 2):
        amp = np.where(k_of == k, state.amplitudes, 0.0)
        out.append(SectorProjection(k, float(np.vdot(amp, amp).real), amp))
    return out


def _split_wavefunction(amplitudes, basis, part):
    """psi(a, b) for a in A, b in B (sites sorted) from the k = 1 amplitudes."""
    inA = part.mask()
    a_sites = np.flatnonzero(inA)
    b_sites = np.flatnonzero(~inA)
    pos = np.empty(part.N, dtype=int)
    pos[a_sites] = np.arange(len(a_sites))
    pos[b_sites] = np.arange(len(b_sites))

    cross = inA[basis.first] != inA[basis.second]
    fa = np.where(inA[basis.first], basis.first, basis.second)[cross]
    fb = np.where(inA[basis.first], basis.second, basis.first)[cross]
    psi = np.zeros((len(a_sites), len(b_sites)), dtype=complex)
    psi[pos[fa], pos[fb]] = amplitudes[cross]
    return psi


def reduced_density(sector: SectorProjection, part: Bipartition, basis) -> np.ndarray:
    """One-particle density matrix on A (rows/cols = sorted sites of A) of the renormalized k=1 sector."""
    if sector.k != 1:
        raise ValueError("the reduced state is only defined for the one-particle-per-side sector")
    if sector.probability <= 0:
        raise EmptySectorError("no weight in the k=1 sector")
    psi = _split_wavefunction(sector.amplitudes, basis, part) / np.sqrt(sector.probability)
    return psi @ psi.conj().T


def linear_entropy(rho: np.ndarray) -> float:
    """Linear entropy scaled to reach 1 on the maximally mixed state of rho's dimension."""
    d = rho.shape[0]
    if d < 2:
        return 0.0
    lam = np.linalg.eigvalsh(rho)
    if lam.min() < PSD_FLOOR:
        raise NumericalFailureError(
            "reduced density matrix is not positive semidefinite", {"min_eigenvalue": float(lam.min())}
        )
    lam = np.clip(lam, 0.0, None)
    return float(d / (d - 1) * (1.0 - np.sum(lam ** 2)))


def entanglement_of_particles(state: TwoParticleState, part: Bipartition, tau: float = 0.0) -> EntanglementRecord:
    sector = project_sectors(state, part)[1]
    if sector.probability <= 0:
        return EntanglementRecord(tau, 0.0, 0.0, part.label)
    rho = reduced_density(sector, part, state.basis)
    return EntanglementRecord(tau, sector.probability * linear_entropy(rho), sector.probability, part.label)
