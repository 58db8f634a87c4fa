from collections import Counter

import pytest

from conftest import sweep_cases, fields_for
from isoflag.fields import RATIONALS, get_finite_field
from isoflag.linalg import Matrix, nilpotent_jordan_multiset
from isoflag.model import (INCOMPATIBLE, IsoFlag, IsometryModel,
                           IsotropyViolation, VerificationFailed, build_T,
                           build_model, check_adapted, collection_pairings,
                           component_check, flags_from, normalize_signs,
                           position_check, round_trip_mismatches, split_check)
from isoflag.shapes import ORTHOGONAL, SYMPLECTIC, ShapeSeq


@pytest.fixture(scope="module")
def sp1():
    return build_model(ShapeSeq((1,)), SYMPLECTIC)


class TestBuildModel:
    def test_smallest_symplectic_matrix(self, sp1):
        assert sp1.g.to_json() == [[["0"], ["-1"]], [["1"], ["2"]]]

    def test_extended_collection_vector(self, sp1):
        f = sp1.field
        assert sp1.extend_index(1, 2) == (f.from_int(-1), f.from_int(2))
        # backwards extension is consistent with g inverse
        assert sp1.g.apply(sp1.extend_index(1, -1)) == sp1.extend_index(1, 0)

    def test_char2_kappa_jordan(self):
        m = build_model(ShapeSeq((1,), kappa=1), SYMPLECTIC,
                        get_finite_field(2))
        n = m.g - Matrix.identity(m.field, 3)
        assert nilpotent_jordan_multiset(n) == Counter({2: 1, 1: 1})

    def test_orthogonal_single_block_jordan(self):
        m = build_model(ShapeSeq((2,), kappa=1), ORTHOGONAL)
        n = m.g - Matrix.identity(m.field, 5)
        assert nilpotent_jordan_multiset(n) == Counter({5: 1})

    def test_verified_clauses_and_round_trip(self, sp1):
        assert check_adapted(sp1) == []
        assert round_trip_mismatches(sp1) == []

    def test_perturbed_isometry_fails_round_trip(self, sp1):
        # [[0,-1],[1,3]] is still symplectic, so the windowed clauses
        # cannot see the difference at p = 1; the table round trip can
        f = sp1.field
        bad_g = Matrix.from_scalars(f, [[0, -1], [1, 3]])
        bad = IsometryModel(sp1.shape, sp1.mode, sp1.space, bad_g,
                            Matrix.identity(f, 2), sp1.table)
        assert round_trip_mismatches(bad) != []

    def test_perturbed_collection_fails_clauses(self):
        # at p = 2 clause (b) has real content: scaling one collection
        # vector breaks the (w_i, w_{i+p}) = 1 normalization
        m = build_model(ShapeSeq((2,)), SYMPLECTIC)
        f = m.field
        cols = [m.w_cols.col(j) for j in range(4)]
        cols[1] = tuple(x * f.from_int(2) for x in cols[1])
        bad = IsometryModel(m.shape, m.mode, m.space, m.g,
                            Matrix(f, cols).transpose())
        assert check_adapted(bad) != []

    def test_sign_flip_stays_adapted(self, sp1):
        flipped = sp1.with_signs({1: -1})
        assert check_adapted(flipped) == []


class TestSweep:
    def test_all_acceptance_models_build(self, model_sweep):
        # build_model verifies every invariant internally; reaching here
        # means the whole sweep passed
        assert len(model_sweep) > 0
        for (parts, kappa, mode, _name), m in model_sweep.items():
            assert m.shape.parts == parts and m.mode == mode


class TestFlags:
    def test_flag_pair_and_position(self, sp1):
        flag, flag_prime = flags_from(sp1)
        assert position_check(flag, flag_prime, sp1.shape)
        # a flag is never in the required position with itself
        assert not position_check(flag, flag, sp1.shape)

    def test_position_over_finite_field(self):
        m = build_model(ShapeSeq((2, 1)), SYMPLECTIC, get_finite_field(3))
        flag, flag_prime = flags_from(m)
        assert position_check(flag, flag_prime, m.shape)

    def test_position_orthogonal(self):
        m = build_model(ShapeSeq((2, 1), kappa=1), ORTHOGONAL)
        flag, flag_prime = flags_from(m)
        assert position_check(flag, flag_prime, m.shape)

    def test_broken_flag_rejected(self, sp1):
        flag, _ = flags_from(sp1)
        broken = list(flag.subspaces)
        broken[1] = []
        with pytest.raises(IsotropyViolation):
            IsoFlag(sp1.space, broken).verify()


class TestNormalizeSigns:
    def one(self):
        return RATIONALS.one

    def test_identity_signs(self):
        a = {(1, 2, 0): self.one()}
        assert normalize_signs(a, dict(a), 2) == {1: 1, 2: 1}

    def test_flipped_cross_pairing(self):
        a = {(1, 2, 0): self.one()}
        b = {(1, 2, 0): -self.one()}
        assert normalize_signs(a, b, 2) == {1: 1, 2: -1}

    def test_non_sign_ratio_incompatible(self):
        a = {(1, 2, 0): self.one()}
        b = {(1, 2, 0): RATIONALS.from_int(2)}
        assert normalize_signs(a, b, 2) == INCOMPATIBLE

    def test_diagonal_flip_incompatible(self):
        a = {(1, 1, 1): self.one()}
        b = {(1, 1, 1): -self.one()}
        assert normalize_signs(a, b, 1) == INCOMPATIBLE

    def test_zero_pattern_mismatch_incompatible(self):
        a = {(1, 2, 0): self.one()}
        b = {(1, 2, 0): RATIONALS.zero}
        assert normalize_signs(a, b, 2) == INCOMPATIBLE

    def test_inconsistent_component_incompatible(self):
        one = self.one()
        a = {(1, 2, 0): one, (2, 3, 0): one, (1, 3, 0): one}
        b = {(1, 2, 0): -one, (2, 3, 0): -one, (1, 3, 0): -one}
        assert normalize_signs(a, b, 3) == INCOMPATIBLE


class TestIntertwiner:
    def test_same_model_gives_identity(self, sp1):
        t = build_T(sp1, sp1)
        assert t == Matrix.identity(sp1.field, 2)

    def test_sign_flip_gives_valid_T(self):
        m = build_model(ShapeSeq((2, 1)), SYMPLECTIC)
        flipped = m.with_signs({1: 1, 2: -1})
        t = build_T(m, flipped)  # all four conclusions verified inside
        assert t * m.g == flipped.g * t

    def test_central_conjugate_gives_minus_identity(self, sp1):
        f = sp1.field
        minus = Matrix.from_scalars(f, [[-1, 0], [0, -1]])
        conj = sp1.conjugated(minus)
        assert build_T(sp1, conj) == minus

    def test_altered_pairings_rejected(self, sp1):
        m2 = build_model(ShapeSeq((1,)), SYMPLECTIC)
        scale = Matrix.from_scalars(sp1.field, [[2, 0], [0, 2]])
        bad = IsometryModel(m2.shape, m2.mode, m2.space, m2.g,
                            scale, m2.table)
        with pytest.raises(VerificationFailed):
            build_T(sp1, bad)

    def test_pairings_reproduce_table(self, sp1):
        pairs = collection_pairings(sp1, 3)
        for (t, r, d), v in pairs.items():
            assert v == sp1.table.value(t, r, d)


class TestComponentCheck:
    def test_symplectic_immediate(self, sp1):
        t = Matrix.identity(sp1.field, 2)
        flag, _ = flags_from(sp1)
        assert component_check(sp1, t, flag) is True

    def test_orthogonal_rational_undecided(self):
        m = build_model(ShapeSeq((1, 1)), ORTHOGONAL)
        flag, _ = flags_from(m)
        t = Matrix.identity(m.field, 4)
        assert component_check(m, t, flag) is None

    def test_orthogonal_finite_identity_in_component(self):
        m = build_model(ShapeSeq((1, 1)), ORTHOGONAL, get_finite_field(3))
        flag, _ = flags_from(m)
        t = Matrix.identity(m.field, 4)
        assert component_check(m, t, flag) is True


class TestSplitCheck:
    def test_symplectic_two_blocks(self):
        m = build_model(ShapeSeq((2, 1)), SYMPLECTIC)
        rep = split_check(m, 1)
        assert rep["pass"]
        assert rep["jordan_low"] == {4: 1}
        assert rep["jordan_high"] == {2: 1}

    def test_orthogonal_with_marker(self):
        m = build_model(ShapeSeq((2, 1), kappa=1), ORTHOGONAL)
        rep = split_check(m, 2)
        assert rep["pass"]
        assert rep["jordan_low"] == {5: 1, 1: 1}
        assert rep["jordan_high"] == {1: 1}

    def test_symplectic_per_block(self):
        m = build_model(ShapeSeq((2, 1), kappa=1), SYMPLECTIC,
                        get_finite_field(2))
        rep = split_check(m, 2)
        assert rep["pass"] and rep["blocks_stable_orthogonal"]

    def test_orthogonal_cut_restricted(self):
        m = build_model(ShapeSeq((2, 2)), ORTHOGONAL)
        with pytest.raises(AssertionError):
            split_check(m, 1)  # psi(1) = 1, not a valid cut
