"""Shared independent oracles for the test suite.

Everything here is deliberately implemented *differently* from the library:
partial transposes by bit arithmetic instead of axis permutation,
eigenvalues via numpy's LAPACK bindings instead of the Jacobi solver, and
states assembled index by index.  Agreement between the two routes is the
point of most tests.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np


def pt_by_bits(rho: np.ndarray, n_qubits: int, subset) -> np.ndarray:
    """Partial transpose by explicitly swapping subset bits of (row, col)."""
    dim = 2**n_qubits
    mask = 0
    for q in subset:
        mask |= 1 << (n_qubits - 1 - q)
    out = np.zeros_like(np.asarray(rho, dtype=complex))
    for i in range(dim):
        for j in range(dim):
            ii = (i & ~mask) | (j & mask)
            jj = (j & ~mask) | (i & mask)
            out[ii, jj] = rho[i, j]
    return out


def negativity_brute(rho: np.ndarray, n_qubits: int, subset) -> float:
    """Unnormalized negativity: |sum of negative eigenvalues| of the PT."""
    eigenvalues = np.linalg.eigvalsh(pt_by_bits(rho, n_qubits, subset))
    return float(-eigenvalues[eigenvalues < 0.0].sum())


def global_entanglement_brute(rho: np.ndarray, n_qubits: int) -> float:
    """Bipartition-averaged normalized negativity, all by numpy/itertools."""
    per_size = []
    for m in range(1, n_qubits // 2 + 1):
        subsets = list(combinations(range(n_qubits), m))
        if 2 * m == n_qubits:
            subsets = [s for s in subsets if 0 in s]
        scale = 2.0 / (2.0**m - 1.0)
        values = [scale * negativity_brute(rho, n_qubits, s) for s in subsets]
        per_size.append(sum(values) / len(values))
    return sum(per_size) / len(per_size)


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random full-rank density matrix from a Ginibre draw."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unit_disc(rng: np.random.Generator) -> complex:
    """Uniform complex point with modulus <= 1."""
    radius = math.sqrt(rng.uniform(0.0, 1.0))
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return radius * complex(math.cos(phi), math.sin(phi))


def decayed_w_register(n_qubits: int, u: complex, phases=None) -> np.ndarray:
    """Evolved 2n-qubit register: n excitons (first) plus n reservoirs.

    Each single-excitation term keeps amplitude ``u`` on its exciton qubit
    and sheds ``v`` onto the matching reservoir qubit.  ``phases`` optionally
    attaches a phase to each emitted amplitude (the library fixes them to
    zero; observables must not care).
    """
    v_mag = math.sqrt(max(0.0, 1.0 - abs(u) ** 2))
    if phases is None:
        phases = [0.0] * n_qubits
    psi = np.zeros(2 ** (2 * n_qubits), dtype=complex)
    for q in range(n_qubits):
        exciton_idx = 1 << (2 * n_qubits - 1 - q)
        reservoir_idx = 1 << (n_qubits - 1 - q)
        psi[exciton_idx] += u / math.sqrt(n_qubits)
        psi[reservoir_idx] += v_mag * np.exp(1j * phases[q]) / math.sqrt(n_qubits)
    return psi


def decayed_pair_register(a, b, u1, u2, phase1=0.0, phase2=0.0) -> np.ndarray:
    """Evolved 4-qubit register (e1, e2, r1, r2) of the a|00> + b|11> pair."""
    v1 = math.sqrt(max(0.0, 1.0 - abs(u1) ** 2)) * np.exp(1j * phase1)
    v2 = math.sqrt(max(0.0, 1.0 - abs(u2) ** 2)) * np.exp(1j * phase2)
    psi = np.zeros(16, dtype=complex)
    psi[0b0000] = a
    psi[0b1100] = b * u1 * u2
    psi[0b1001] = b * u1 * v2
    psi[0b0110] = b * v1 * u2
    psi[0b0011] = b * v1 * v2
    return psi
