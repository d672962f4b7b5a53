"""Dense complex linear algebra for n-qubit registers.

Conventions shared across the package:

* States and operators are plain numpy arrays (``complex128``); a register
  of ``n`` qubits lives in dimension ``2**n``.
* Qubit 0 is the *most significant* bit of a computational-basis index, so
  basis index ``i`` assigns qubit ``k`` the bit ``(i >> (n - 1 - k)) & 1``.

Everything here is a pure function over value-semantic inputs and is safe to
call from any number of concurrent workers.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "kron",
    "partial_trace",
    "partial_transpose",
    "hermitian_eigen",
]


def _as_register_operator(mat, n_qubits: int) -> np.ndarray:
    """Validate that ``mat`` is a square operator on ``n_qubits`` qubits."""
    a = np.asarray(mat)
    dim = 2**n_qubits
    if a.ndim != 2 or a.shape != (dim, dim):
        raise ValueError(
            f"expected a {dim}x{dim} matrix for {n_qubits} qubits, got shape {a.shape}"
        )
    return a


def _check_qubit_subset(subset, n_qubits: int) -> list[int]:
    qubits = sorted(set(int(q) for q in subset))
    if any(q < 0 or q >= n_qubits for q in qubits):
        raise ValueError(f"qubit indices {qubits} out of range for {n_qubits} qubits")
    return qubits


def kron(a, b) -> np.ndarray:
    """Kronecker (tensor) product of two matrices; dimensions multiply."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(rho, n_qubits: int, keep) -> np.ndarray:
    """Trace out every qubit not listed in ``keep``.

    Returns the reduced operator on the kept qubits, ordered by ascending
    original index.  The total trace is preserved.
    """
    rho = _as_register_operator(rho, n_qubits)
    kept = _check_qubit_subset(keep, n_qubits)
    tensor = rho.reshape([2] * (2 * n_qubits))
    row = list(range(n_qubits))
    col = list(range(n_qubits, 2 * n_qubits))
    for q in range(n_qubits):
        if q not in kept:
            col[q] = row[q]  # contract bra against ket index
    out = [row[q] for q in kept] + [col[q] for q in kept]
    reduced = np.einsum(tensor, row + col, out)
    dim = 2 ** len(kept)
    return np.asarray(reduced, dtype=complex).reshape(dim, dim)


def partial_transpose(rho, n_qubits: int, subset) -> np.ndarray:
    """Transpose the bra/ket indices of the qubits in ``subset``.

    An involution: applying it twice on the same subset returns the input.
    The trace is unchanged, and Hermitian inputs give Hermitian outputs.
    """
    rho = _as_register_operator(rho, n_qubits)
    qubits = _check_qubit_subset(subset, n_qubits)
    tensor = rho.reshape([2] * (2 * n_qubits))
    axes = list(range(2 * n_qubits))
    for q in qubits:
        axes[q], axes[n_qubits + q] = axes[n_qubits + q], axes[q]
    dim = 2**n_qubits
    return np.ascontiguousarray(tensor.transpose(axes)).reshape(dim, dim)


def _phase_fix(column: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude component is real > 0."""
    k = int(np.argmax(np.abs(column)))
    pivot = column[k]
    mag = abs(pivot)
    if mag == 0.0:
        return column
    fixed = column * (pivot.conjugate() / mag)
    fixed[k] = abs(fixed[k])  # clear the rounding residue on the pivot itself
    return fixed


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigen(m, *, tol: float = 1e-13, max_sweeps: int = 100):
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Deterministic by construction: sweeps visit index pairs in a fixed order,
    eigenvalues are returned ascending, and every eigenvector is phased so
    that its largest-magnitude component is real and positive.  Exact
    eigenvalue ties are broken by component-wise comparison of the phased
    eigenvectors (larger leading components first).

    Parameters
    ----------
    m : array_like
        Hermitian matrix (violations beyond ``1e-10`` relative to the largest
        entry are rejected).
    tol : float
        Convergence threshold on the off-diagonal Frobenius norm, relative to
        the Frobenius norm of the input (floored at 1).
    max_sweeps : int
        Safety bound on the number of full sweeps.

    Returns
    -------
    (eigenvalues, eigenvectors)
        ``eigenvalues`` is a real array in ascending order; column ``k`` of
        ``eigenvectors`` is the unit eigenvector for ``eigenvalues[k]``.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    entry_scale = max(1.0, float(np.abs(a).max()) if n else 1.0)
    if float(np.abs(a - a.conj().T).max()) > 1e-10 * entry_scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = (a + a.conj().T) / 2.0

    vec = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    skip = threshold / max(1, 2 * n)

    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                phase = apq / r
                alpha = a[p, p].real
                beta = a[q, q].real
                tau = (beta - alpha) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()

                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = spc * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - spc * col_q
                a[:, q] = sp * col_p + c * col_q
                # exact 2x2 result of the rotation, clearing rounding residue
                a[p, p] = alpha - t * r
                a[q, q] = beta + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0

                vcol_p = vec[:, p].copy()
                vcol_q = vec[:, q].copy()
                vec[:, p] = c * vcol_p - spc * vcol_q
                vec[:, q] = sp * vcol_p + c * vcol_q
    else:
        raise RuntimeError(f"Jacobi sweep limit ({max_sweeps}) reached without converging")

    evals = np.diag(a).real.copy()
    for k in range(n):
        vec[:, k] = _phase_fix(vec[:, k])

    def _tie_key(k: int):
        col = vec[:, k]
        return (evals[k],) + tuple((-c.real, -c.imag) for c in col)

    order = sorted(range(n), key=_tie_key)
    return evals[order], vec[:, order]
