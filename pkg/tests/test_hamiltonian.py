import itertools
import random

import pytest

from hpaqc.hamiltonian import (
    PenaltyWeights,
    adjacency_indicator,
    build_protein,
    chain_penalty,
    contact_matrix,
    direction_term,
    direction_term_n4,
    distance_squared,
    increment_polynomials,
    onsite_pairs,
    onsite_penalty,
    onsite_penalty_fixed,
    pairwise_contact,
    validate_contact_matrix,
)
from hpaqc.lattice import LatticeInstance, encode_coordinates, fixed_positions
from hpaqc.oracle import brute_force_minimum, hp_energy
from hpaqc.pbf import assignment_from_string

HPPH = LatticeInstance("HPPH", 2)
GROUND_DOWN = [(1, 0), (1, 1), (2, 1), (2, 0)]  # square fold under the pinned bond
GROUND_UP = [(1, 2), (1, 1), (2, 1), (2, 2)]


def bits_for(instance, coords):
    return encode_coordinates(instance, coords)


class TestPenaltyWeights:
    def test_defaults(self):
        w = PenaltyWeights.default_for(HPPH)
        assert (w.lambda0, w.lambda1) == (5, 4)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            PenaltyWeights(lambda0=3, lambda1=3)
        with pytest.raises(ValueError):
            PenaltyWeights(lambda0=5, lambda1=0)


class TestContactMatrix:
    def test_hpph(self):
        g = contact_matrix("HPPH")
        assert g == [
            [0, 0, 0, 1],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [1, 0, 0, 0],
        ]

    def test_excludes_sequence_neighbours(self):
        g = contact_matrix("HHHH")
        assert g[0][1] == 0 and g[0][2] == 1 and g[0][3] == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            validate_contact_matrix([[0, 1], [1, 0]], 4)
        bad = contact_matrix("HPPH")
        bad[0][3] = 0  # now asymmetric
        with pytest.raises(ValueError):
            validate_contact_matrix(bad, 4)


class TestOnsite:
    def test_two_residues_coinciding(self):
        f = onsite_penalty(HPPH)
        coords = [(0, 0), (0, 0), (1, 0), (2, 0)]
        assert f.evaluate(bits_for(HPPH, coords)) == 5

    def test_valid_configuration_scores_zero(self):
        f = onsite_penalty(HPPH)
        coords = [(0, 0), (0, 1), (1, 1), (1, 0)]
        assert f.evaluate(bits_for(HPPH, coords)) == 0

    def test_all_at_origin(self):
        f = onsite_penalty(HPPH)
        coords = [(0, 0)] * 4
        assert f.evaluate(bits_for(HPPH, coords)) == 5 * 6  # lambda0 * C(4,2)

    def test_fixed_variant_omits_middle_pair(self):
        assert (2, 3) not in onsite_pairs(HPPH, omit_fixed_pair=True)
        assert len(onsite_pairs(HPPH, omit_fixed_pair=True)) == 5
        assert len(onsite_pairs(HPPH)) == 6

    def test_fixed_variant_on_ground_state(self):
        f = onsite_penalty_fixed(HPPH)
        bits = bits_for(HPPH, GROUND_DOWN[:1] + GROUND_DOWN[3:])  # residues 1 and 4
        free = {}
        free.update(encode_coordinates(HPPH, [GROUND_DOWN[0]] * 4))  # residue 1 bits
        # simpler: evaluate on the full encoding restricted to free vars
        full = bits_for(HPPH, GROUND_DOWN)
        assert f.evaluate(full) == 0

    def test_fixed_variant_collision_with_pinned_site(self):
        f = onsite_penalty_fixed(HPPH)
        coords = [(1, 1), (1, 1), (2, 1), (2, 0)]  # residue 1 on residue 2's site
        assert f.evaluate(bits_for(HPPH, coords)) == 5


class TestDistance:
    def test_unit_step(self):
        d = distance_squared(HPPH, 1, 2)
        assert d.evaluate(bits_for(HPPH, [(0, 0), (1, 0), (0, 0), (0, 0)])) == 1

    def test_diagonal(self):
        d = distance_squared(HPPH, 1, 2)
        assert d.evaluate(bits_for(HPPH, [(0, 0), (3, 3), (0, 0), (0, 0)])) == 18

    def test_always_two_local(self):
        assert distance_squared(HPPH, 1, 4).degree() == 2
        inst = LatticeInstance("HPHPHPHP", 3)
        assert distance_squared(inst, 2, 7).degree() == 2

    def test_matches_decoded_distance_randomly(self):
        rng = random.Random(4)
        inst = LatticeInstance("HPHPHPHP", 2)
        d = distance_squared(inst, 3, 6)
        for _ in range(30):
            coords = [
                (rng.randrange(8), rng.randrange(8)) for _ in range(8)
            ]
            expected = sum((a - b) ** 2 for a, b in zip(coords[2], coords[5]))
            assert d.evaluate(bits_for(inst, coords)) == expected

    def test_rejects_same_residue(self):
        with pytest.raises(ValueError):
            distance_squared(HPPH, 2, 2)


class TestChainPenalty:
    def test_ground_state_zero(self):
        f = chain_penalty(HPPH)
        assert f.evaluate(bits_for(HPPH, GROUND_DOWN)) == 0

    def test_detached_first_residue(self):
        # residue 1 far away (d=8 squared), the rest chained
        f = chain_penalty(HPPH)
        coords = [(3, 3), (1, 1), (2, 1), (2, 0)]
        assert f.evaluate(bits_for(HPPH, coords)) == 4 * 7

    def test_two_local(self):
        assert chain_penalty(HPPH).degree() == 2


class TestIncrement:
    def test_seven_plus_one(self):
        zs = increment_polynomials([1, 2, 3, 4])
        assign = {1: 1, 2: 1, 3: 1, 4: 0}
        value = sum((1 << r) * zs[r].evaluate(assign) for r in range(5))
        assert value == 8

    def test_one_plus_one(self):
        zs = increment_polynomials([1, 2, 3, 4])
        assign = {1: 1, 2: 0, 3: 0, 4: 0}
        value = sum((1 << r) * zs[r].evaluate(assign) for r in range(5))
        assert value == 2

    def test_overflow_all_ones(self):
        zs = increment_polynomials([1, 2, 3, 4])
        assign = {1: 1, 2: 1, 3: 1, 4: 1}
        assert [z.evaluate(assign) for z in zs] == [0, 0, 0, 0, 1]

    @pytest.mark.parametrize("n_bits", [4, 5])
    def test_all_odd_inputs(self, n_bits):
        bits = list(range(1, n_bits + 1))
        zs = increment_polynomials(bits)
        for x in range(1, 1 << n_bits, 2):
            assign = {i + 1: (x >> i) & 1 for i in range(n_bits)}
            value = sum((1 << r) * zs[r].evaluate(assign) for r in range(n_bits + 1))
            assert value == x + 1

    def test_inline_carry_chain_matches_component(self):
        # the subtraction-direction terms rebuild the carry chain inline;
        # they must agree with the standalone increment circuit
        inst = LatticeInstance("HPHPHPHP", 2)
        base_j = inst.coord_offset(5, 1)
        bits = [base_j + r for r in range(1, 4)]
        zs = increment_polynomials(bits)
        minus = direction_term(inst, 2, 5, axis=1, positive=False)
        rng = random.Random(9)
        for _ in range(40):
            coords = [(rng.randrange(8), rng.randrange(8)) for _ in range(8)]
            a = bits_for(inst, coords)
            x_i, x_j = coords[1][0], coords[4][0]
            want = int(
                x_i % 2 == 0
                and x_i != 0
                and x_j == x_i - 1
                and coords[1][1] == coords[4][1]
            )
            assert minus.evaluate(a) == want
            if x_j % 2 == 1:  # odd inputs: inline chain decodes x_j + 1
                value = sum((1 << r) * zs[r].evaluate(a) for r in range(4))
                assert value == x_j + 1


class TestPairwise:
    def test_ground_state_contact(self):
        f = pairwise_contact(HPPH)
        assert f.evaluate(bits_for(HPPH, GROUND_DOWN)) == -1
        assert f.evaluate(bits_for(HPPH, GROUND_UP)) == -1

    def test_extended_chain_no_contact(self):
        f = pairwise_contact(HPPH)
        coords = [(0, 1), (1, 1), (2, 1), (3, 1)]
        assert f.evaluate(bits_for(HPPH, coords)) == 0

    def test_special_case_equals_general_form(self):
        for i, j in [(1, 4), (4, 1), (2, 3), (1, 2)]:
            for axis in (1, 2):
                for positive in (True, False):
                    assert direction_term(HPPH, i, j, axis, positive) == direction_term_n4(
                        HPPH, i, j, axis, positive
                    )

    def test_counts_each_contact_once_n8(self):
        rng = random.Random(20260809)
        sequence = "HHPHPHHH"
        inst = LatticeInstance(sequence, 2)
        f = pairwise_contact(inst)
        for conf in _random_walks(rng, 8, 2, 40):
            assert f.evaluate(bits_for(inst, conf)) == hp_energy(conf, sequence)

    def test_counts_each_contact_once_3d(self):
        rng = random.Random(77)
        sequence = "HHHH"
        inst = LatticeInstance(sequence, 3)
        f = pairwise_contact(inst)
        for conf in _random_walks(rng, 4, 3, 40):
            assert f.evaluate(bits_for(inst, conf)) == hp_energy(conf, sequence)


def _random_walks(rng, n, dimension, count):
    """Self-avoiding walks inside the grid, as an independent configuration source."""
    walks = []
    attempts = 0
    while len(walks) < count and attempts < 20000:
        attempts += 1
        pts = [tuple(rng.randrange(1, n - 1) for _ in range(dimension))]
        while len(pts) < n:
            options = []
            for axis in range(dimension):
                for sign in (1, -1):
                    cand = list(pts[-1])
                    cand[axis] += sign
                    cand = tuple(cand)
                    if cand not in pts and all(0 <= c < n for c in cand):
                        options.append(cand)
            if not options:
                break
            pts.append(rng.choice(options))
        if len(pts) == n:
            walks.append(pts)
    return walks


class TestBuildProtein:
    def test_free_variable_count(self):
        protein = build_protein(HPPH)
        assert protein.n_free == 8
        assert protein.function.support() == tuple(range(1, 9))

    def test_brute_force_minimum(self):
        protein = build_protein(HPPH)
        value, minimizers = brute_force_minimum(protein.function, n_vars=8)
        assert value == -1
        assert len(minimizers) == 2
        decoded = sorted(protein.decode_free(assignment_from_string(s)) for s in minimizers)
        assert decoded == sorted([GROUND_DOWN, GROUND_UP])

    def test_degree_bound(self):
        protein = build_protein(HPPH)
        assert protein.function.degree() == 8  # 2 * D * log2(N)

    def test_every_low_order_monomial_present(self):
        census = build_protein(HPPH).function.term_census()
        assert census[1] == 8
        assert census[2] == 28

    def test_no_monomial_spans_three_residues(self):
        # built pre-substitution for a longer chain, every term involves
        # variables of at most two residues
        inst = LatticeInstance("HPPPPPPH", 2)
        total = (
            onsite_penalty(inst) + chain_penalty(inst) + pairwise_contact(inst)
        )
        per_residue = inst.dimension * inst.bits_per_axis
        for key in total.terms:
            residues = {(v - 1) // per_residue for v in key}
            assert len(residues) <= 2

    def test_weight_override_validated(self):
        with pytest.raises(ValueError):
            build_protein(HPPH, weights=PenaltyWeights(lambda0=2, lambda1=3))

    def test_large_chain_guard(self):
        inst = LatticeInstance("HP" * 8, 2)
        with pytest.raises(ValueError, match="allow_large"):
            build_protein(inst)

    def test_fixed_positions_consistent_with_decode(self):
        protein = build_protein(HPPH)
        coords = protein.decode_free({i: 0 for i in range(1, 9)})
        pinned = fixed_positions(HPPH)
        assert coords[1] == pinned[2] and coords[2] == pinned[3]


class TestSeparation:
    def test_valid_iff_nonpositive_and_oracle_equality(self):
        protein = build_protein(HPPH)
        f = protein.function
        n_valid = 0
        for b in range(256):
            bits = {i: (b >> (i - 1)) & 1 for i in range(1, 9)}
            value = f.evaluate(bits)
            coords = protein.decode_free(bits)
            if _is_valid_chain(coords):
                n_valid += 1
                assert value <= 0
                assert value == hp_energy(coords, "HPPH")
            else:
                assert value > 0
        # residue 1 has 3 free neighbours of the pinned site, residue 4 too
        assert n_valid == 9


def _is_valid_chain(coords):
    if len(set(coords)) != len(coords):
        return False
    return all(
        sum(abs(a - b) for a, b in zip(p, q)) == 1 for p, q in zip(coords, coords[1:])
    )
