"""
Independent reference computations used only by the tests.

None of these touch the package's Hamiltonian builder or propagator: the
Fock-space Hamiltonian is assembled from explicit truncated boson ladder
operators, the propagator is a scaled-and-squared Taylor series, and reduced
states come from an explicit density matrix.
"""
from functools import reduce
from itertools import product

import mpmath
import numpy as np


def ladder(nmax=2):
    return np.diag(np.sqrt(np.arange(1, nmax + 1, dtype=float)), k=1)


def fock_hamiltonian(N, J, V, nmax=2):
    """Two-boson block of the ring Bose-Hubbard Hamiltonian, in the lexicographic pair basis.

    The block is extracted from the full tensor-product Fock space with
    ``nmax`` bosons allowed per site.
    """
    d = nmax + 1
    a = ladder(nmax)
    eye = np.eye(d)

    def site_op(op, s):
        return reduce(np.kron, [op if k == s else eye for k in range(N)])

    c = [site_op(a, s) for s in range(N)]
    H = np.zeros((d ** N, d ** N))
    for s in range(N):
        t = (s + 1) % N
        H -= J * (c[t].T @ c[s] + c[s].T @ c[t])
        n = c[s].T @ c[s]
        H += V / 2 * n @ (n - np.eye(d ** N))

    occs = list(product(range(d), repeat=N))
    keep, pairs = [], []
    for k, occ in enumerate(occs):
        if sum(occ) == 2:
            sites = [s + 1 for s in range(N) for _ in range(occ[s])]
            keep.append(k)
            pairs.append(tuple(sites))
    order = np.argsort([p[0] * (N + 1) + p[1] for p in pairs], kind="stable")
    keep = np.array(keep)[order]
    pairs = [pairs[k] for k in order]
    return H[np.ix_(keep, keep)], pairs


def taylor_propagator(H, tau, terms=40):
    """exp(-i H tau) by scaling and squaring of a truncated power series."""
    A = -1j * np.asarray(H, dtype=complex) * tau
    norm = np.abs(A).sum(axis=1).max()
    s = max(0, int(np.ceil(np.log2(norm / 0.25))) if norm > 0 else 0)
    A = A / 2 ** s
    U = np.eye(len(A), dtype=complex)
    term = np.eye(len(A), dtype=complex)
    for k in range(1, terms + 1):
        term = term @ A / k
        U = U + term
    for _ in range(s):
        U = U @ U
    return U


def high_precision_eigenvalues(H, dps=40):
    mpmath.mp.dps = dps
    M = mpmath.matrix(np.asarray(H).tolist())
    ev = mpmath.eigsy(M, eigvals_only=True)
    return sorted(float(x) for x in ev)


def pair_list(N):
    return [(i, j) for i in range(1, N + 1) for j in range(i, N + 1)]


def reduced_state_oracle(amplitudes, N, A):
    """(P11, rho_A) from the explicit density matrix projected on the one-particle-per-side sector."""
    A = set(A)
    pairs = pair_list(N)
    rho = np.outer(amplitudes, np.conj(amplitudes))
    straddle = [k for k, (i, j) in enumerate(pairs) if (i in A) != (j in A)]
    P11 = sum(rho[k, k].real for k in straddle)
    a_sites = sorted(A)
    pos = {s: n for n, s in enumerate(a_sites)}
    rhoA = np.zeros((len(a_sites), len(a_sites)), dtype=complex)
    for k in straddle:
        for kk in straddle:
            i, j = pairs[k]
            ii, jj = pairs[kk]
            x, b = (i, j) if i in A else (j, i)
            xx, bb = (ii, jj) if ii in A else (jj, ii)
            if b == bb:
                rhoA[pos[x], pos[xx]] += rho[k, kk]
    return P11, (rhoA / P11 if P11 > 0 else rhoA)


def ep_oracle(amplitudes, N, A):
    P11, rhoA = reduced_state_oracle(amplitudes, N, A)
    if P11 <= 0:
        return 0.0
    d = len(A)
    return P11 * d / (d - 1) * (1 - np.trace(rhoA @ rhoA).real)


def gamma_oracle(amplitudes, N):
    """Normalized correlation map read off the pair probabilities."""
    G = np.zeros((N, N))
    for (i, j), a in zip(pair_list(N), amplitudes):
        p = abs(a) ** 2
        if i == j:
            G[i - 1, i - 1] = 2 * p
        else:
            G[i - 1, j - 1] = G[j - 1, i - 1] = p
    return G / G.max()


def occupation_hamiltonian(N, J, V):
    """Same two-boson block built by applying c_t^dag c_s to occupation dictionaries.

    Scales to large rings, unlike :func:`fock_hamiltonian`.
    """
    pairs = pair_list(N)
    idx = {q: k for k, q in enumerate(pairs)}
    H = np.zeros((len(pairs), len(pairs)))
    for k, (i, j) in enumerate(pairs):
        occ = {}
        for s in (i, j):
            occ[s] = occ.get(s, 0) + 1
        H[k, k] = V / 2 * sum(n * (n - 1) for n in occ.values())
        for s, n in occ.items():
            for t in (s % N + 1, (s - 2) % N + 1):
                o = dict(occ)
                o[s] -= 1
                amp = np.sqrt(n) * np.sqrt(o.get(t, 0) + 1)
                o[t] = o.get(t, 0) + 1
                sites = tuple(sorted(x for x, m in o.items() for _ in range(m)))
                H[idx[sites], k] -= J * amp
    return H
