"""Binary coordinate layout for HP chains on a square or cubic grid.

An instance of N residues in D dimensions uses N*D*log2(N) binary
variables.  Residue i's coordinate on axis k occupies the log2(N)
variables after offset ``coord_offset(i, k)``, least significant bit
first, so the coordinate value is sum_r 2**(r-1) * q_(offset+r).

Displayed bit strings (q_n ... q_1) therefore read most significant
first; serialization always uses explicit index->bit maps to avoid
that ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .pbf import Assignment, _lookup_bit

RESIDUE_TYPES = ("H", "P")


@dataclass(frozen=True)
class LatticeInstance:
    """An HP sequence placed on an N**D grid, N = chain length."""

    sequence: str
    dimension: int

    def __post_init__(self):
        n = len(self.sequence)
        if any(c not in RESIDUE_TYPES for c in self.sequence):
            raise ValueError(f"sequence must contain only H/P, got {self.sequence!r}")
        if n < 4 or n & (n - 1) != 0:
            raise ValueError(f"chain length must be a power of two >= 4, got {n}")
        if self.dimension not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.dimension}")

    @property
    def n_residues(self) -> int:
        return len(self.sequence)

    @property
    def bits_per_axis(self) -> int:
        return self.n_residues.bit_length() - 1

    @property
    def total_vars(self) -> int:
        return self.n_residues * self.dimension * self.bits_per_axis

    @property
    def free_vars(self) -> int:
        """Variable count once the two middle residues are pinned."""
        return (self.n_residues - 2) * self.dimension * self.bits_per_axis

    def coord_offset(self, residue: int, axis: int) -> int:
        """Offset such that variables offset+1 .. offset+log2(N) hold the
        coordinate of `residue` on `axis` (x=1, y=2, z=3), LSB first."""
        if not 1 <= residue <= self.n_residues:
            raise ValueError(f"residue index {residue} out of range 1..{self.n_residues}")
        if not 1 <= axis <= self.dimension:
            raise ValueError(f"axis index {axis} out of range 1..{self.dimension}")
        m = self.bits_per_axis
        return self.dimension * (residue - 1) * m + (axis - 1) * m

    def coord_vars(self, residue: int, axis: int) -> tuple[int, ...]:
        base = self.coord_offset(residue, axis)
        return tuple(base + r for r in range(1, self.bits_per_axis + 1))


def decode_coordinates(instance: LatticeInstance, assignment: Assignment) -> list[tuple[int, ...]]:
    """Grid coordinates of every residue under a full variable assignment."""
    if not isinstance(assignment, Mapping) and len(assignment) != instance.total_vars:
        raise ValueError(
            f"assignment has {len(assignment)} bits, expected {instance.total_vars}"
        )
    coords = []
    for i in range(1, instance.n_residues + 1):
        point = []
        for k in range(1, instance.dimension + 1):
            value = 0
            for r, var in enumerate(instance.coord_vars(i, k), start=1):
                value += (1 << (r - 1)) * _lookup_bit(assignment, var)
            point.append(value)
        coords.append(tuple(point))
    return coords


def encode_coordinates(
    instance: LatticeInstance, coords: Sequence[Sequence[int]]
) -> dict[int, int]:
    """Inverse of decode_coordinates: coordinates -> index->bit map."""
    if len(coords) != instance.n_residues:
        raise ValueError(
            f"need {instance.n_residues} coordinate tuples, got {len(coords)}"
        )
    bits: dict[int, int] = {}
    for i, point in enumerate(coords, start=1):
        if len(point) != instance.dimension:
            raise ValueError(f"residue {i}: expected {instance.dimension}-dim point")
        for k, value in enumerate(point, start=1):
            if not 0 <= value < instance.n_residues:
                raise ValueError(
                    f"residue {i} axis {k}: coordinate {value} outside grid "
                    f"0..{instance.n_residues - 1}"
                )
            _encode_axis(instance, i, k, value, bits)
    return bits


def _encode_axis(
    instance: LatticeInstance, residue: int, axis: int, value: int, out: dict[int, int]
) -> None:
    for r, var in enumerate(instance.coord_vars(residue, axis), start=1):
        out[var] = (value >> (r - 1)) & 1


def fixed_positions(instance: LatticeInstance) -> dict[int, tuple[int, ...]]:
    """Grid coordinates pinned for the two middle residues.

    Residue N/2 sits on the (N/2)th grid point of every axis and residue
    N/2+1 on the next grid point along x; grid points count from 1, so the
    coordinates are N/2-1 and N/2.  This removes translational degeneracy
    while keeping the pinned bond centred on the grid.
    """
    half = instance.n_residues // 2
    first = (half - 1,) * instance.dimension
    second = (half,) + (half - 1,) * (instance.dimension - 1)
    return {half: first, half + 1: second}


def fixed_bindings(instance: LatticeInstance) -> dict[int, int]:
    """Variable bindings that pin the two middle residues."""
    bits: dict[int, int] = {}
    for residue, point in fixed_positions(instance).items():
        for k, value in enumerate(point, start=1):
            _encode_axis(instance, residue, k, value, bits)
    return bits


def layout(instance: LatticeInstance) -> list[dict]:
    """Human-readable variable ranges per residue/axis (for the CLI echo)."""
    rows = []
    for i in range(1, instance.n_residues + 1):
        for k in range(1, instance.dimension + 1):
            rows.append(
                {
                    "residue": i,
                    "axis": "xyz"[k - 1],
                    "variables": list(instance.coord_vars(i, k)),
                }
            )
    return rows
