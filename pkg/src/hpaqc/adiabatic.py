"""Instantaneous spectra of a linear interpolation between a transverse
field and a diagonal problem Hamiltonian.

The computational basis orders states by the integer whose bit i-1 is the
value of q_i, so q_1 is the least significant bit.  The problem Hamiltonian
is diagonal with entries equal to the energy polynomial; the driver
sum_i (I - sigma_x_i) / 2 couples states at Hamming distance one and has
the uniform superposition as its unique ground state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pbf import PseudoBooleanFunction

MAX_QUBITS = 16
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class SpinHamiltonian:
    n_qubits: int
    diagonal: np.ndarray  # 2**n problem energies

    def __post_init__(self):
        if self.diagonal.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"diagonal has {self.diagonal.shape[0]} entries, expected {1 << self.n_qubits}"
            )


def to_spin_hamiltonian(f: PseudoBooleanFunction, n_qubits: int) -> SpinHamiltonian:
    """Diagonal Hamiltonian whose basis energies are f's truth table."""
    if n_qubits < 1 or n_qubits > MAX_QUBITS:
        raise ValueError(f"qubit count must be 1..{MAX_QUBITS}, got {n_qubits}")
    if f.max_var() > n_qubits:
        raise ValueError(
            f"function mentions variable {f.max_var()} but only {n_qubits} qubits requested"
        )
    return SpinHamiltonian(
        n_qubits=n_qubits, diagonal=f.truth_vector(n_qubits).astype(np.float64)
    )


def transverse_field(n_qubits: int) -> np.ndarray:
    """Dense matrix of sum_i (I - sigma_x_i) / 2 in the computational basis."""
    dim = 1 << n_qubits
    h0 = np.zeros((dim, dim))
    np.fill_diagonal(h0, n_qubits / 2.0)
    idx = np.arange(dim)
    for i in range(n_qubits):
        h0[idx, idx ^ (1 << i)] = -0.5
    return h0


def interpolate(hamiltonian: SpinHamiltonian, s: float) -> np.ndarray:
    """(1-s) * driver + s * problem, as a dense symmetric matrix."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"sweep parameter must lie in [0, 1], got {s}")
    matrix = (1.0 - s) * transverse_field(hamiltonian.n_qubits)
    matrix[np.diag_indices_from(matrix)] += s * hamiltonian.diagonal
    return matrix


@dataclass
class SpectrumTrace:
    s_grid: np.ndarray
    eigenvalues: np.ndarray          # (points, levels), ascending per row
    gaps: np.ndarray                 # per-point gap above the ground level
    gap_degenerate: np.ndarray       # bool: ground level degenerate here
    eps_elements: np.ndarray         # |<1|dH/ds|0>| per point, NaN when degenerate
    g_min: float
    epsilon: float                   # max of eps_elements over non-degenerate points
    snapshots: np.ndarray            # (points, 2**n) ground-state probabilities

    @property
    def levels(self) -> int:
        return self.eigenvalues.shape[1]


def _diagonalize(matrix: np.ndarray, s: float) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigendecomposition failed at s={s:.6f}: {exc}") from exc


def spectrum_trace(
    hamiltonian: SpinHamiltonian, s_points: int = 101, levels: int | None = None
) -> SpectrumTrace:
    """Dense eigendecomposition along a uniform sweep grid.

    The per-point gap is measured to the first eigenvalue strictly above
    the ground level (plus the degeneracy tolerance); points with a
    degenerate ground level are flagged and excluded from the matrix
    element used for epsilon.  Ground snapshots average the probability
    over the degenerate eigenspace, which is basis independent.
    """
    dim = 1 << hamiltonian.n_qubits
    if s_points < 2:
        raise ValueError(f"need at least 2 sweep points, got {s_points}")
    if levels is None:
        levels = dim
    if not 1 <= levels <= dim:
        raise ValueError(f"levels must be 1..{dim}, got {levels}")

    s_grid = np.linspace(0.0, 1.0, s_points)
    driver = transverse_field(hamiltonian.n_qubits)
    slope = np.diag(hamiltonian.diagonal) - driver  # d/ds of the interpolation

    eigenvalues = np.empty((s_points, levels))
    gaps = np.empty(s_points)
    flags = np.zeros(s_points, dtype=bool)
    eps_elements = np.full(s_points, np.nan)
    snapshots = np.empty((s_points, dim))

    for p, s in enumerate(s_grid):
        matrix = (1.0 - s) * driver
        matrix[np.diag_indices_from(matrix)] += s * hamiltonian.diagonal
        values, vectors = _diagonalize(matrix, s)
        eigenvalues[p] = values[:levels]

        cluster = int(np.searchsorted(values, values[0] + DEGENERACY_TOL, side="right"))
        flags[p] = cluster > 1
        gaps[p] = values[cluster] - values[0] if cluster < dim else 0.0
        if not flags[p]:
            eps_elements[p] = abs(vectors[:, 1] @ (slope @ vectors[:, 0]))
        probs = np.abs(vectors[:, :cluster]) ** 2
        snapshots[p] = probs.mean(axis=1)

    finite = eps_elements[~np.isnan(eps_elements)]
    return SpectrumTrace(
        s_grid=s_grid,
        eigenvalues=eigenvalues,
        gaps=gaps,
        gap_degenerate=flags,
        eps_elements=eps_elements,
        g_min=float(gaps.min()),
        epsilon=float(finite.max()) if finite.size else float("nan"),
        snapshots=snapshots,
    )


def ground_snapshots(
    hamiltonian: SpinHamiltonian, s_points: int = 101
) -> tuple[np.ndarray, np.ndarray]:
    """Ground-state probability vectors along the sweep.

    Returns (snapshots, degenerate_flags); at flagged points the snapshot is
    the uniform average over the degenerate eigenspace.
    """
    trace = spectrum_trace(hamiltonian, s_points=s_points, levels=1)
    return trace.snapshots, trace.gap_degenerate
