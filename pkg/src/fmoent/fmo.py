"""Site-basis Hamiltonian of the seven-BChl FMO monomer and its exciton states.

The diagonal holds site energies of the seven bacteriochlorophylls relative
to BChl 3 (the lowest site), the off-diagonal holds the published intersite
couplings, everything in cm^-1.  Diagonalizing gives the seven delocalized
exciton qubit states.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import qlin

__all__ = [
    "SiteDataset",
    "ExcitonTable",
    "COUPLINGS_CM1",
    "builtin_datasets",
    "dataset",
    "load_site_energies",
    "build_hamiltonian",
    "exciton_table",
]

N_SITES = 7

# Intersite couplings (cm^-1) between BChls 1..7; zero diagonal.  The same
# coupling matrix is used with every site-energy dataset (couplings are only
# published for the "reng" parameterization).
COUPLINGS_CM1 = np.array(
    [
        [0.0, -104.1, 5.1, -4.3, 4.7, -15.1, -7.8],
        [-104.1, 0.0, 32.6, 7.1, 5.4, 8.3, 0.8],
        [5.1, 32.6, 0.0, -46.8, 1.0, -8.1, 5.1],
        [-4.3, 7.1, -46.8, 0.0, -70.7, -14.7, -61.5],
        [4.7, 5.4, 1.0, -70.7, 0.0, 89.7, -2.5],
        [-15.1, 8.3, -8.1, -14.7, 89.7, 0.0, 32.7],
        [-7.8, 0.8, 5.1, -61.5, -2.5, 32.7, 0.0],
    ]
)
COUPLINGS_CM1.setflags(write=False)


@dataclass(frozen=True)
class SiteDataset:
    """Absolute BChl site energies (cm^-1) and their differences to BChl 3.

    ``site_energies[k]`` belongs to BChl ``k + 1``; ``energy_diffs`` is the
    same array shifted so BChl 3 sits at zero.
    """

    name: str
    site_energies: np.ndarray
    energy_diffs: np.ndarray

    @classmethod
    def from_energies(cls, name: str, site_energies) -> "SiteDataset":
        energies = np.asarray(site_energies, dtype=float)
        if energies.shape != (N_SITES,):
            raise ValueError(f"{name}: expected {N_SITES} site energies, got {energies.shape}")
        diffs = energies - energies[2]
        return cls(name=name, site_energies=energies, energy_diffs=diffs)

    def __post_init__(self):
        object.__setattr__(self, "site_energies", np.asarray(self.site_energies, dtype=float))
        object.__setattr__(self, "energy_diffs", np.asarray(self.energy_diffs, dtype=float))
        if self.energy_diffs[2] != 0.0:
            raise ValueError("BChl 3 is the energy reference; diffs[2] must be 0")
        if not np.array_equal(self.energy_diffs, self.site_energies - self.site_energies[2]):
            raise ValueError("energy_diffs inconsistent with site_energies")


_BUILTIN = {
    "reng": SiteDataset.from_energies(
        "reng", [12450.0, 12520.0, 12210.0, 12320.0, 12550.0, 12540.0, 12470.0]
    ),
    "lorenExpt": SiteDataset.from_energies(
        "lorenExpt", [12266.0, 12496.0, 12112.0, 12293.0, 12634.0, 12396.0, 12457.0]
    ),
    "wend": SiteDataset.from_energies(
        "wend", [12315.0, 12500.0, 12175.0, 12405.0, 12625.0, 12430.0, 12450.0]
    ),
}


def builtin_datasets() -> list[SiteDataset]:
    """The three published site-energy sets, keyed by their source label."""
    return list(_BUILTIN.values())


def dataset(name: str) -> SiteDataset:
    """Look up a builtin dataset by name ('reng', 'lorenExpt' or 'wend')."""
    try:
        return _BUILTIN[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTIN))
        raise ValueError(f"unknown dataset {name!r}; known datasets: {known}") from None


def load_site_energies(path, name: str | None = None) -> SiteDataset:
    """Read a site-energy table: one ``bchl_index energy_cm1`` pair per line.

    Blank lines are skipped and ``#`` starts a comment.  Every BChl index
    1..7 must appear exactly once.
    """
    path = Path(path)
    energies: dict[int, float] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'bchl_index energy_cm1', got {raw!r}")
        try:
            index = int(fields[0])
            energy = float(fields[1])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: could not parse {raw!r}") from None
        if not 1 <= index <= N_SITES:
            raise ValueError(f"{path}:{lineno}: BChl index must be 1..{N_SITES}, got {index}")
        if index in energies:
            raise ValueError(f"{path}:{lineno}: duplicate BChl index {index}")
        energies[index] = energy
    missing = sorted(set(range(1, N_SITES + 1)) - set(energies))
    if missing:
        raise ValueError(f"{path}: missing BChl indices {missing}")
    ordered = [energies[i] for i in range(1, N_SITES + 1)]
    return SiteDataset.from_energies(name or path.stem, ordered)


def build_hamiltonian(site_data: SiteDataset, couplings=None) -> np.ndarray:
    """Assemble the 7x7 site-basis Hamiltonian (cm^-1, real symmetric).

    Diagonal entries are the dataset's energy differences, off-diagonal
    entries the intersite couplings (``COUPLINGS_CM1`` unless overridden).
    """
    coup = COUPLINGS_CM1 if couplings is None else np.asarray(couplings, dtype=float)
    if coup.shape != (N_SITES, N_SITES):
        raise ValueError(f"coupling matrix must be {N_SITES}x{N_SITES}, got {coup.shape}")
    return np.diag(site_data.energy_diffs) + coup


@dataclass(frozen=True)
class ExcitonTable:
    """Exciton energies (ascending, cm^-1) and site occupation amplitudes.

    Column ``k`` of ``amplitudes`` holds the amplitudes of exciton qubit
    ``k`` over BChl sites 1..7.  Columns are orthonormal.
    """

    energies: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        norms = np.linalg.norm(self.amplitudes, axis=0)
        if np.abs(norms - 1.0).max() > 1e-10:
            raise ValueError("exciton amplitude columns must have unit norm")
        gram = self.amplitudes.T @ self.amplitudes
        if np.abs(gram - np.eye(len(self.energies))).max() > 1e-10:
            raise ValueError("exciton amplitude columns must be orthogonal")


def exciton_table(hamiltonian) -> ExcitonTable:
    """Diagonalize a site-basis Hamiltonian into its exciton table.

    Energies come out ascending; each amplitude column is phased so its
    largest-magnitude component is positive (the eigensolver's convention).
    """
    h = np.asarray(hamiltonian)
    if np.iscomplexobj(h):
        if h.size and float(np.abs(h.imag).max()) > 0.0:
            raise ValueError("site-basis Hamiltonian must be real")
        h = h.real
    h = h.astype(float)
    if h.shape != (N_SITES, N_SITES):
        raise ValueError(f"expected a {N_SITES}x{N_SITES} Hamiltonian, got shape {h.shape}")
    scale = max(1.0, float(np.abs(h).max()))
    if float(np.abs(h - h.T).max()) > 1e-10 * scale:
        raise ValueError("site-basis Hamiltonian must be symmetric")
    energies, vectors = qlin.hermitian_eigen(h)
    if float(np.abs(vectors.imag).max()) > 1e-12:
        raise RuntimeError("real symmetric input produced complex eigenvectors")
    return ExcitonTable(energies=energies, amplitudes=vectors.real.copy())
