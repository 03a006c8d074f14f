"""Energy terms that encode HP folding as an integer polynomial.

The total energy is the sum of three families:

* an onsite repulsion charging lambda0 per pair of residues on the same
  grid point,
* a chain constraint charging lambda1 per unit of excess squared distance
  between sequence-consecutive residues,
* a contact reward of -1 per pair of non-consecutive hydrophobic residues
  sitting on adjacent grid points.

With lambda1 = N and lambda0 = N + 1, every self-avoiding chain scores
<= 0 (equal to minus its contact count) and everything else scores > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .lattice import LatticeInstance, decode_coordinates, fixed_bindings
from .pbf import PseudoBooleanFunction, product, variable, xnor

ContactMatrix = Sequence[Sequence[int]]


@dataclass(frozen=True)
class PenaltyWeights:
    """Penalty weights; the defaults lambda1 = N, lambda0 = N + 1 make the
    valid/invalid energy separation exact."""

    lambda0: int
    lambda1: int

    def __post_init__(self):
        if not (self.lambda0 > self.lambda1 > 0):
            raise ValueError(
                f"need lambda0 > lambda1 > 0, got lambda0={self.lambda0}, "
                f"lambda1={self.lambda1}"
            )

    @classmethod
    def default_for(cls, instance: LatticeInstance) -> "PenaltyWeights":
        n = instance.n_residues
        return cls(lambda0=n + 1, lambda1=n)


def contact_matrix(sequence: str) -> list[list[int]]:
    """0/1 matrix marking hydrophobic residue pairs at sequence distance >= 2."""
    n = len(sequence)
    return [
        [
            1 if sequence[i] == "H" and sequence[j] == "H" and abs(i - j) >= 2 else 0
            for j in range(n)
        ]
        for i in range(n)
    ]


def validate_contact_matrix(entries: ContactMatrix, n_residues: int) -> None:
    if len(entries) != n_residues or any(len(row) != n_residues for row in entries):
        raise ValueError(f"contact matrix must be {n_residues}x{n_residues}")
    for i in range(n_residues):
        for j in range(n_residues):
            if entries[i][j] not in (0, 1):
                raise ValueError(f"contact matrix entries must be 0/1, got {entries[i][j]!r}")
            if entries[i][j] != entries[j][i]:
                raise ValueError(f"contact matrix not symmetric at ({i + 1},{j + 1})")
            if abs(i - j) <= 1 and entries[i][j]:
                raise ValueError(
                    f"contact matrix must be zero on the diagonal band, "
                    f"({i + 1},{j + 1}) is set"
                )


# -- onsite repulsion ---------------------------------------------------------

def _same_site_indicator(instance: LatticeInstance, i: int, j: int) -> PseudoBooleanFunction:
    """1 exactly when residues i and j decode to the same grid point."""
    return product(
        xnor(instance.coord_offset(i, k) + r, instance.coord_offset(j, k) + r)
        for k in range(1, instance.dimension + 1)
        for r in range(1, instance.bits_per_axis + 1)
    )


def onsite_pairs(instance: LatticeInstance, omit_fixed_pair: bool = False) -> list[tuple[int, int]]:
    half = instance.n_residues // 2
    return [
        (i, j)
        for i in range(1, instance.n_residues + 1)
        for j in range(i + 1, instance.n_residues + 1)
        if not (omit_fixed_pair and (i, j) == (half, half + 1))
    ]


def onsite_penalty(
    instance: LatticeInstance, weights: PenaltyWeights | None = None
) -> PseudoBooleanFunction:
    """lambda0 per pair of residues occupying the same grid point."""
    weights = weights or PenaltyWeights.default_for(instance)
    total = PseudoBooleanFunction.zero()
    for i, j in onsite_pairs(instance):
        total = total + _same_site_indicator(instance, i, j)
    return weights.lambda0 * total


def onsite_penalty_fixed(
    instance: LatticeInstance, weights: PenaltyWeights | None = None
) -> PseudoBooleanFunction:
    """Onsite penalty with the pinned middle pair dropped (they can never
    collide) and the pinned coordinates substituted in."""
    weights = weights or PenaltyWeights.default_for(instance)
    total = PseudoBooleanFunction.zero()
    for i, j in onsite_pairs(instance, omit_fixed_pair=True):
        total = total + _same_site_indicator(instance, i, j)
    return (weights.lambda0 * total).substitute_constants(fixed_bindings(instance))


# -- chain constraint ---------------------------------------------------------

def distance_squared(instance: LatticeInstance, p: int, q: int) -> PseudoBooleanFunction:
    """Squared Euclidean distance between residues p and q; always 2-local."""
    if p == q:
        raise ValueError(f"distance requires two distinct residues, got {p} twice")
    total = PseudoBooleanFunction.zero()
    for k in range(1, instance.dimension + 1):
        diff = PseudoBooleanFunction.zero()
        for r in range(1, instance.bits_per_axis + 1):
            weight = 1 << (r - 1)
            diff = diff + weight * (
                variable(instance.coord_offset(p, k) + r)
                - variable(instance.coord_offset(q, k) + r)
            )
        total = total + diff * diff
    return total


def chain_penalty(
    instance: LatticeInstance, weights: PenaltyWeights | None = None
) -> PseudoBooleanFunction:
    """lambda1 * (sum of consecutive squared distances minus N-1).

    Zero on every valid chain, positive when a consecutive pair is not
    adjacent, and negative only on overlaps, which the onsite term dominates.
    """
    weights = weights or PenaltyWeights.default_for(instance)
    n = instance.n_residues
    total = PseudoBooleanFunction.constant(-(n - 1))
    for m in range(1, n):
        total = total + distance_squared(instance, m, m + 1)
    return weights.lambda1 * total


# -- increment circuit --------------------------------------------------------

def increment_polynomials(bits: Sequence[int]) -> list[PseudoBooleanFunction]:
    """Outputs z_1 .. z_{n+1} of adding 00...01 to an n-bit number.

    `bits` are the variable indices of the input, least significant first.
    For every odd input (bit 1 set) the outputs decode to input + 1; even
    inputs produce don't-care outputs, so callers gate on the low bit.
    The all-ones input overflows: z_{n+1} = 1 and z_1..z_n = 0.
    """
    if not bits:
        raise ValueError("increment needs at least one input bit")
    n = len(bits)
    zs = [PseudoBooleanFunction.zero()]
    if n >= 2:
        zs.append(1 - variable(bits[1]))
    for k in range(3, n + 1):
        prefix = product(variable(bits[u - 1]) for u in range(2, k))
        full = prefix * variable(bits[k - 1])
        zs.append(variable(bits[k - 1]) + prefix - 2 * full)
    zs.append(product(variable(bits[u - 1]) for u in range(2, n + 1)))
    return zs


# -- pairwise hydrophobic contacts ---------------------------------------------

def _axes_match(
    instance: LatticeInstance, i: int, j: int, skip_axis: int
) -> PseudoBooleanFunction:
    """Require equality of every coordinate except along `skip_axis`."""
    return product(
        xnor(instance.coord_offset(i, k) + r, instance.coord_offset(j, k) + r)
        for k in range(1, instance.dimension + 1)
        if k != skip_axis
        for r in range(1, instance.bits_per_axis + 1)
    )


def direction_term(
    instance: LatticeInstance, i: int, j: int, axis: int, positive: bool
) -> PseudoBooleanFunction:
    """1 exactly when residue j sits one step from residue i along `axis`.

    `positive` queries the +axis neighbour, otherwise the -axis neighbour.
    Both variants require the coordinate of residue i along the axis to be
    even, so of the (i, j) and (j, i) orderings exactly one can fire for a
    given adjacent pair; summing over ordered pairs counts each contact once.
    """
    m = instance.bits_per_axis
    base_i = instance.coord_offset(i, axis)
    base_j = instance.coord_offset(j, axis)
    i_even = 1 - variable(base_i + 1)
    j_odd = variable(base_j + 1)

    if positive:
        # j = i + 1: identical high bits, low bits 0 vs 1.
        high_bits_equal = product(xnor(base_j + s, base_i + s) for s in range(2, m + 1))
        along_axis = i_even * j_odd * high_bits_equal
    else:
        # j = i - 1: increment j's coordinate through the carry chain and
        # compare with i's; the guard kills the event that i sits at 0 so the
        # all-ones overflow of j cannot fake a match.
        guard = 1 - product(1 - variable(base_i + k) for k in range(1, m + 1))
        xor2 = (
            variable(base_j + 2)
            + variable(base_i + 2)
            - 2 * variable(base_j + 2) * variable(base_i + 2)
        )
        carry_checks = PseudoBooleanFunction.constant(1)
        for r in range(3, m + 1):
            prefix = product(variable(base_j + u) for u in range(2, r))
            z_r = variable(base_j + r) + prefix - 2 * prefix * variable(base_j + r)
            # xnor of the carried bit with residue i's bit r
            carry_checks = carry_checks * (
                1 - z_r - variable(base_i + r) + 2 * variable(base_i + r) * z_r
            )
        along_axis = i_even * j_odd * guard * xor2 * carry_checks

    return along_axis * _axes_match(instance, i, j, skip_axis=axis)


def direction_term_n4(
    instance: LatticeInstance, i: int, j: int, axis: int, positive: bool
) -> PseudoBooleanFunction:
    """Four-residue special case of direction_term (two bits per axis).

    With two bits the carry chain is empty and the nonzero guard collapses to
    the high bit of residue i, giving a much shorter closed form.  Agrees
    with direction_term monomial for monomial.
    """
    if instance.bits_per_axis != 2:
        raise ValueError("special-case direction term requires a 4-residue chain")
    base_i = instance.coord_offset(i, axis)
    base_j = instance.coord_offset(j, axis)
    i_even = 1 - variable(base_i + 1)
    j_odd = variable(base_j + 1)
    if positive:
        high_equal = xnor(base_j + 2, base_i + 2)
        along_axis = i_even * j_odd * high_equal
    else:
        high_differ = (
            variable(base_j + 2)
            + variable(base_i + 2)
            - 2 * variable(base_j + 2) * variable(base_i + 2)
        )
        along_axis = i_even * j_odd * variable(base_i + 2) * high_differ
    return along_axis * _axes_match(instance, i, j, skip_axis=axis)


def adjacency_indicator(instance: LatticeInstance, i: int, j: int) -> PseudoBooleanFunction:
    """Sum of all 2D direction queries for the ordered pair (i, j)."""
    builder = direction_term_n4 if instance.n_residues == 4 else direction_term
    total = PseudoBooleanFunction.zero()
    for axis in range(1, instance.dimension + 1):
        for positive in (True, False):
            total = total + builder(instance, i, j, axis, positive)
    return total


def pairwise_contact(
    instance: LatticeInstance, contacts: ContactMatrix | None = None
) -> PseudoBooleanFunction:
    """-1 per marked residue pair on adjacent grid points.

    Exact on self-avoiding configurations; overlapping configurations are
    already dominated by the onsite penalty.
    """
    if contacts is None:
        contacts = contact_matrix(instance.sequence)
    validate_contact_matrix(contacts, instance.n_residues)
    total = PseudoBooleanFunction.zero()
    for i in range(1, instance.n_residues + 1):
        for j in range(1, instance.n_residues + 1):
            if contacts[i - 1][j - 1]:
                total = total + adjacency_indicator(instance, i, j)
    return -total


# -- full protein energy --------------------------------------------------------

@dataclass
class ProteinHamiltonian:
    """Compiled energy over the free variables, renumbered 1..n_free."""

    function: PseudoBooleanFunction
    instance: LatticeInstance
    weights: PenaltyWeights
    contacts: list[list[int]]
    free_variables: tuple[int, ...]  # original indices, ascending
    renumbering: dict[int, int] = field(repr=False)  # original -> compact

    @property
    def n_free(self) -> int:
        return len(self.free_variables)

    def full_assignment(self, free_assignment) -> dict[int, int]:
        """Lift an assignment of the compact variables to all lattice variables."""
        from .pbf import _lookup_bit

        full = dict(fixed_bindings(self.instance))
        for original, compact in self.renumbering.items():
            full[original] = _lookup_bit(free_assignment, compact)
        return full

    def decode_free(self, free_assignment) -> list[tuple[int, ...]]:
        """Residue coordinates for an assignment of the compact variables."""
        return decode_coordinates(self.instance, self.full_assignment(free_assignment))


def build_protein(
    instance: LatticeInstance,
    weights: PenaltyWeights | None = None,
    contacts: ContactMatrix | None = None,
    allow_large: bool = False,
) -> ProteinHamiltonian:
    """Compile the full energy, pin the middle residues, and renumber.

    Expansion cost grows roughly like N**(2D+2); chains longer than 8 are
    rejected unless allow_large is set.
    """
    if instance.n_residues > 8 and not allow_large:
        raise ValueError(
            f"chain length {instance.n_residues} exceeds the default limit of 8; "
            "pass allow_large=True to force the expansion"
        )
    weights = weights or PenaltyWeights.default_for(instance)
    if contacts is None:
        contacts = contact_matrix(instance.sequence)

    bindings = fixed_bindings(instance)
    total = (
        onsite_penalty_fixed(instance, weights)
        + chain_penalty(instance, weights).substitute_constants(bindings)
        + pairwise_contact(instance, contacts).substitute_constants(bindings)
    )

    free = tuple(i for i in range(1, instance.total_vars + 1) if i not in bindings)
    renumbering = {original: compact for compact, original in enumerate(free, start=1)}
    return ProteinHamiltonian(
        function=total.relabel(renumbering),
        instance=instance,
        weights=weights,
        contacts=[list(row) for row in contacts],
        free_variables=free,
        renumbering=renumbering,
    )
