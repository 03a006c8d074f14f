"""HP lattice-protein folding compiled to spin Hamiltonians.

The pipeline: encode a chain on a grid with binary coordinates, compile
its energy as an exact integer polynomial, reduce the polynomial to
2-local form with AND-enforcing penalties, map it to a diagonal spin
Hamiltonian and sweep the transverse-field interpolation -- with
exhaustive classical oracles cross-checking every stage.
"""

__version__ = "0.1.0"

from .adiabatic import (
    SpectrumTrace,
    SpinHamiltonian,
    ground_snapshots,
    interpolate,
    spectrum_trace,
    to_spin_hamiltonian,
    transverse_field,
)
from .hamiltonian import (
    PenaltyWeights,
    ProteinHamiltonian,
    build_protein,
    chain_penalty,
    contact_matrix,
    distance_squared,
    increment_polynomials,
    onsite_penalty,
    onsite_penalty_fixed,
    pairwise_contact,
)
from .lattice import (
    LatticeInstance,
    decode_coordinates,
    encode_coordinates,
    fixed_bindings,
    fixed_positions,
)
from .oracle import (
    NativeFoldResult,
    brute_force_minimum,
    enumerate_native,
    hp_energy,
)
from .pbf import (
    PseudoBooleanFunction,
    assignment_from_string,
    assignment_to_string,
    boolean_not,
    boolean_or,
    constant,
    from_terms_list,
    to_terms_list,
    variable,
    xnor,
)
from .presets import toy_hamiltonian
from .quadratize import (
    QuadratizationResult,
    ReductionReport,
    and_penalty,
    protein_ancilla_count,
    protein_total_qubits,
    quadratize,
    verify_reduction,
)
from .resources import ResourceReport, locality_term_bounds, resource_report
