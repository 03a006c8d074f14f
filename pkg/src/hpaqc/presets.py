"""Built-in example inputs."""

from __future__ import annotations

from .pbf import PseudoBooleanFunction


def toy_hamiltonian() -> PseudoBooleanFunction:
    """The 4-variable demonstration energy used throughout the test suite:

        1 + q1 - q2 + q3 + q4 - q1*q2*q3 + q1*q2*q3*q4

    Its unique minimum is 0 at q4 q3 q2 q1 = 0010 and its 16 values span
    0..4, which makes it a convenient end-to-end check for the reduction
    and spectrum machinery.
    """
    return PseudoBooleanFunction(
        {
            (): 1,
            (1,): 1,
            (2,): -1,
            (3,): 1,
            (4,): 1,
            (1, 2, 3): -1,
            (1, 2, 3, 4): 1,
        }
    )


PRESETS = {"toy": toy_hamiltonian}
