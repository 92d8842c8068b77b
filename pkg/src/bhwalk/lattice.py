"""
Two-boson Hilbert space on a periodic ring.

States live in the symmetrized basis ``|i,j>_s`` with ``1 <= i <= j <= N``
(one-based site labels, lexicographic order).  The Bose-Hubbard Hamiltonian

    H = -J * sum_i (c_{i+1}^dag c_i + h.c.) + (V/2) * sum_i n_i (n_i - 1)

is real and symmetric in this basis, so doublons ``|i,i>_s`` sit at energy
``+V`` for repulsive interaction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import BasisMismatchError, InvalidLatticeError, SymmetryUndefinedError

SQRT2 = np.sqrt(2.0)
NORM_TOL = 1e-12


@dataclass(frozen=True)
class LatticeConfig:
    """Ring size ``N``, hopping ``J`` (> 0) and signed on-site interaction ``V``."""

    N: int
    J: float = 1.0
    V: float = 0.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 3:
            raise InvalidLatticeError(f"N must be an integer >= 3, got {self.N!r}")
        if not self.J > 0:
            raise InvalidLatticeError(f"J must be positive, got {self.J!r}")
        if not np.isfinite(self.V):
            raise InvalidLatticeError(f"V must be finite, got {self.V!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "J", float(self.J))
        object.__setattr__(self, "V", float(self.V))

    @property
    def v(self) -> float:
        return self.V / self.J

    def flipped(self) -> "LatticeConfig":
        """Same lattice with the interaction sign reversed."""
        return LatticeConfig(self.N, self.J, -self.V)


@dataclass(frozen=True, eq=False)
class SymmetrizedBasis:
    """Ordered pairs ``(i, j)``, ``i <= j``, with one-based site labels.

    The zero-based site arrays ``first``/``second`` are exposed for vectorised
    work; ``index``/``pair`` translate between labels and positions.
    """

    N: int
    entries: tuple
    first: np.ndarray = field(repr=False)
    second: np.ndarray = field(repr=False)
    _lookup: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def index(self, i: int, j: int) -> int:
        if j < i:
            raise KeyError(f"pair ({i}, {j}) is not ordered; use ({j}, {i})")
        try:
            return self._lookup[(i, j)]
        except KeyError:
            raise KeyError(f"pair ({i}, {j}) outside sites 1..{self.N}") from None

    def sorted_index(self, i: int, j: int) -> int:
        return self.index(min(i, j), max(i, j))

    def pair(self, k: int) -> tuple:
        return self.entries[k]

    @property
    def is_double(self) -> np.ndarray:
        return self.first == self.second

    @property
    def parity(self) -> np.ndarray:
        """``(-1)**(i+j)`` per basis entry, i.e. the boost eigenvalue."""
        return np.where((self.first + self.second) % 2 == 0, 1.0, -1.0)

    def __eq__(self, other):
        return isinstance(other, SymmetrizedBasis) and other.N == self.N

    def __hash__(self):
        return hash(("SymmetrizedBasis", self.N))


@lru_cache(maxsize=None)
def build_basis(N: int) -> SymmetrizedBasis:
    """Lexicographically ordered symmetrized basis of dimension N(N+1)/2."""
    if int(N) != N or N < 3:
        raise InvalidLatticeError(f"N must be an integer >= 3, got {N!r}")
    N = int(N)
    entries = tuple((i, j) for i in range(1, N + 1) for j in range(i, N + 1))
    first = np.array([p[0] - 1 for p in entries], dtype=np.intp)
    second = np.array([p[1] - 1 for p in entries], dtype=np.intp)
    first.setflags(write=False)
    second.setflags(write=False)
    lookup = {p: k for k, p in enumerate(entries)}
    return SymmetrizedBasis(N, entries, first, second, lookup)


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    basis: SymmetrizedBasis
    elements: np.ndarray
    config: LatticeConfig


def build_hamiltonian(config: LatticeConfig) -> HamiltonianMatrix:
    """Dense Hamiltonian matrix in the symmetrized basis."""
    N, J, V = config.N, config.J, config.V
    basis = build_basis(N)
    H = np.zeros((basis.dim, basis.dim))
    for k, (i, j) in enumerate(basis.entries):
        if i == j:
            H[k, k] = V
        movers = (i,) if i == j else (i, j)
        for a in movers:
            other = j if a == i else i
            for b in (a % N + 1, (a - 2) % N + 1):
                target = basis.sorted_index(b, other)
                # bosonic enhancement on transitions into or out of a doublon
                amp = SQRT2 if (i == j or b == other) else 1.0
                H[target, k] += -J * amp
    H.setflags(write=False)
    return HamiltonianMatrix(basis, H, config)


@dataclass(frozen=True, eq=False)
class TwoParticleState:
    basis: SymmetrizedBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (self.basis.dim,):
            raise BasisMismatchError(
                f"amplitude vector of shape {a.shape} does not match basis dim {self.basis.dim}"
            )
        norm2 = np.vdot(a, a).real
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |a|^2 = {norm2!r}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def N(self) -> int:
        return self.basis.N

    def amplitude(self, i: int, j: int) -> complex:
        return self.amplitudes[self.basis.sorted_index(i, j)]


def number_state(N: int, i: int, j: int) -> TwoParticleState:
    """The localized pair ``|i,j>_s`` (order of ``i``, ``j`` irrelevant)."""
    basis = build_basis(N)
    a = np.zeros(basis.dim, dtype=complex)
    a[basis.sorted_index(i, j)] = 1.0
    return TwoParticleState(basis, a)


@dataclass(frozen=True)
class SymmetryOperator:
    """Lattice symmetry acting on two-particle states.

    ``kind`` is one of ``"translation"``, ``"boost"``, ``"time-reversal"``;
    ``shift`` is only used by translations.
    """

    kind: str
    N: int
    shift: int = 0

    def __post_init__(self):
        if self.kind not in ("translation", "boost", "time-reversal"):
            raise ValueError(f"unknown symmetry kind {self.kind!r}")

    @classmethod
    def translation(cls, N, shift=1):
        return cls("translation", N, shift)

    @classmethod
    def boost(cls, N):
        return cls("boost", N)

    @classmethod
    def time_reversal(cls, N):
        return cls("time-reversal", N)


def translation_permutation(basis: SymmetrizedBasis, shift: int = 1) -> np.ndarray:
    """Index map ``perm`` with ``(T_shift a)[perm[k]] = a[k]``."""
    N = basis.N
    fi = (basis.first + shift) % N
    se = (basis.second + shift) % N
    lo, hi = np.minimum(fi, se), np.maximum(fi, se)
    # lexicographic position of (lo, hi), zero-based: rows before lo plus offset
    return lo * N - lo * (lo - 1) // 2 + (hi - lo)


def translation_matrix(basis: SymmetrizedBasis, shift: int = 1) -> np.ndarray:
    perm = translation_permutation(basis, shift)
    T = np.zeros((basis.dim, basis.dim))
    T[perm, np.arange(basis.dim)] = 1.0
    return T


def boost_diagonal(basis: SymmetrizedBasis) -> np.ndarray:
    """Diagonal of the boost operator, ``exp(-i pi (i+j)) = (-1)**(i+j)``."""
    if basis.N % 2:
        raise SymmetryUndefinedError(
            f"boost is not single-valued on an odd ring (N={basis.N})"
        )
    return basis.parity


def apply_symmetry(op: SymmetryOperator, state: TwoParticleState) -> TwoParticleState:
    if op.N != state.N:
        raise BasisMismatchError(f"operator acts on N={op.N}, state has N={state.N}")
    a = state.amplitudes
    if op.kind == "translation":
        out = np.empty_like(a)
        out[translation_permutation(state.basis, op.shift)] = a
    elif op.kind == "boost":
        out = boost_diagonal(state.basis) * a
    else:
        out = a.conj()
    return TwoParticleState(state.basis, out)
