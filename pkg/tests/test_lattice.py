import random

import pytest

from hpaqc.lattice import (
    LatticeInstance,
    decode_coordinates,
    encode_coordinates,
    fixed_bindings,
    fixed_positions,
    layout,
)
from hpaqc.pbf import assignment_from_string

HPPH = LatticeInstance("HPPH", 2)


class TestInstance:
    def test_variable_counts(self):
        assert HPPH.total_vars == 16
        assert HPPH.bits_per_axis == 2
        assert LatticeInstance("HPHPHPHP", 3).total_vars == 8 * 3 * 3

    def test_free_vars(self):
        assert HPPH.free_vars == 8
        assert LatticeInstance("HPHPHPHP", 2).free_vars == 6 * 2 * 3

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            LatticeInstance("HPHPH", 2)
        with pytest.raises(ValueError):
            LatticeInstance("HP", 2)

    def test_rejects_bad_residue(self):
        with pytest.raises(ValueError):
            LatticeInstance("HPXQ", 2)

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            LatticeInstance("HPPH", 4)


class TestPointer:
    def test_golden_n4(self):
        assert HPPH.coord_offset(3, 2) == 10
        assert HPPH.coord_offset(1, 1) == 0

    def test_golden_n8_d3(self):
        inst = LatticeInstance("HPHPHPHP", 3)
        assert inst.coord_offset(2, 3) == 15

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            HPPH.coord_offset(5, 1)
        with pytest.raises(ValueError):
            HPPH.coord_offset(1, 3)


class TestDecode:
    def test_figure_configuration(self):
        a = assignment_from_string("1100 0110 0101 1011")
        assert decode_coordinates(HPPH, a) == [(3, 2), (1, 1), (2, 1), (0, 3)]

    def test_all_zero_is_origin(self):
        coords = decode_coordinates(HPPH, {i: 0 for i in range(1, 17)})
        assert coords == [(0, 0)] * 4

    def test_round_trip_random(self):
        rng = random.Random(20260809)
        for inst in (HPPH, LatticeInstance("HPHPHPHP", 2), LatticeInstance("HPPH", 3)):
            for _ in range(25):
                coords = [
                    tuple(rng.randrange(inst.n_residues) for _ in range(inst.dimension))
                    for _ in range(inst.n_residues)
                ]
                assert decode_coordinates(inst, encode_coordinates(inst, coords)) == coords

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            decode_coordinates(HPPH, [0] * 15)


class TestFixedResidues:
    def test_n4_golden_bits(self):
        b = fixed_bindings(HPPH)
        assert len(b) == 8
        displayed = "".join(str(b[i]) for i in range(12, 4, -1))
        assert displayed == "01100101"

    def test_n4_positions(self):
        assert fixed_positions(HPPH) == {2: (1, 1), 3: (2, 1)}

    def test_n8_positions(self):
        # middle bond centred on the 8x8 grid: the 4th grid point is
        # coordinate 3, the 5th is coordinate 4
        inst = LatticeInstance("HPHPHPHP", 2)
        assert fixed_positions(inst) == {4: (3, 3), 5: (4, 3)}

    def test_bound_count_rule(self):
        for inst in (HPPH, LatticeInstance("HPHPHPHP", 3)):
            assert len(fixed_bindings(inst)) == 2 * inst.dimension * inst.bits_per_axis

    def test_decode_of_bound_vars(self):
        full = dict.fromkeys(range(1, 17), 0)
        full.update(fixed_bindings(HPPH))
        coords = decode_coordinates(HPPH, full)
        assert coords[1] == (1, 1) and coords[2] == (2, 1)


def test_layout_rows():
    rows = layout(HPPH)
    assert rows[0] == {"residue": 1, "axis": "x", "variables": [1, 2]}
    assert rows[-1] == {"residue": 4, "axis": "y", "variables": [15, 16]}
    assert len(rows) == 8
