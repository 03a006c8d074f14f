"""Closed-form and empirical accounting of term and qubit counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .hamiltonian import ProteinHamiltonian, build_protein
from .lattice import LatticeInstance
from .quadratize import protein_ancilla_count, protein_total_qubits


def locality_term_bounds(n: int, d: int) -> dict[int, int]:
    """Predicted number of k-local terms in the compiled energy.

    k=0 and k=1 are exact small counts; for k >= 2 the count combines
    two-residue splittings (i variables from one residue, k-i from another)
    with single-residue contributions, all over the N-2 movable residues.
    """
    if n < 4 or n & (n - 1) != 0:
        raise ValueError(f"chain length must be a power of two >= 4, got {n}")
    if d not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {d}")
    m = d * (n.bit_length() - 1)  # variables per residue
    movable = n - 2
    counts = {0: 1, 1: movable * m}
    for k in range(2, m + 1):
        cross = sum(math.comb(m, i) * math.comb(m, k - i) for i in range(1, k))
        counts[k] = math.comb(movable, 2) * cross + movable * math.comb(m, k)
    for k in range(m + 1, 2 * m + 1):
        cross = sum(math.comb(m, i) * math.comb(m, k - i) for i in range(k - m, m + 1))
        counts[k] = math.comb(movable, 2) * cross
    return counts


@dataclass
class ResourceReport:
    per_locality_bound: dict[int, int]
    per_locality_actual: dict[int, int]
    free_qubits: int
    ancilla_qubits: int
    total_qubits: int
    deviations: list[dict]  # one entry per locality where actual != bound

    @property
    def within_bounds(self) -> bool:
        return all(
            self.per_locality_actual.get(k, 0) <= bound
            for k, bound in self.per_locality_bound.items()
        ) and all(k in self.per_locality_bound for k in self.per_locality_actual)


def _expected_monomials(protein: ProteinHamiltonian, k: int) -> set[tuple[int, ...]]:
    """All k-subsets of free variables spanning at most two residues."""
    instance = protein.instance
    per_residue = instance.dimension * instance.bits_per_axis
    blocks = [
        tuple(range(b * per_residue + 1, (b + 1) * per_residue + 1))
        for b in range(instance.n_residues - 2)
    ]
    expected: set[tuple[int, ...]] = set()
    for bi in range(len(blocks)):
        for key in combinations(blocks[bi], min(k, per_residue)):
            if len(key) == k:
                expected.add(key)
        for bj in range(bi + 1, len(blocks)):
            for take in range(max(1, k - per_residue), min(k, per_residue)):
                for left in combinations(blocks[bi], take):
                    for right in combinations(blocks[bj], k - take):
                        expected.add(tuple(sorted(left + right)))
    return expected


def resource_report(
    instance: LatticeInstance,
    protein: ProteinHamiltonian | None = None,
    list_offenders: bool = True,
) -> ResourceReport:
    """Compare the compiled energy's term census against the closed forms."""
    if protein is None:
        protein = build_protein(instance)
    bounds = locality_term_bounds(instance.n_residues, instance.dimension)
    actual = protein.function.term_census()

    deviations = []
    small_enough = protein.n_free <= 16
    present = set(protein.function.terms)
    for k in sorted(set(bounds) | set(actual)):
        got = actual.get(k, 0)
        bound = bounds.get(k, 0)
        if got == bound:
            continue
        entry: dict = {"locality": k, "bound": bound, "actual": got}
        if list_offenders and small_enough and k >= 1:
            expected = _expected_monomials(protein, k)
            entry["missing"] = sorted(expected - present)
            entry["unexpected"] = sorted(
                key for key in present if len(key) == k and key not in expected
            )
        deviations.append(entry)

    return ResourceReport(
        per_locality_bound=bounds,
        per_locality_actual=actual,
        free_qubits=instance.free_vars,
        ancilla_qubits=protein_ancilla_count(instance.n_residues, instance.dimension),
        total_qubits=protein_total_qubits(instance.n_residues, instance.dimension),
        deviations=deviations,
    )
