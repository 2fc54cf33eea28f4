"""Nichols 代数的逐次构造、斜导数、配对与正根复核"""
import pytest

from src.services.catalog_service import preset_super_a11, preset_taft
from src.services.lattice_service import Bicharacter
from src.services.nichols_service import (
    BraidedDiagonalSpace, RootDatum, build_nichols, check_low_degrees, check_root_formula, dual_basis,
    hopf_pairing, pbw_hilbert_series, quantum_symmetrizer, symmetrizer_block_ranks,
)
from src.utils.errors import BoundExceededError, CutoffExceededError, InputValidationError


class TestRankOne:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_taft_dims(self, n):
        data = build_nichols(BraidedDiagonalSpace.standard(preset_taft(n).bicharacter()))
        assert data.dims == [1] * n
        assert data.ell == n - 1
        assert data.i_ell == (n - 1,)
        assert data.top_word == (0,) * (n - 1)

    def test_top_times_generator_vanishes(self, taft3):
        _, data = taft3
        assert data.multiply_sections(data.top_word, (0,)) == {}

    def test_pairing_is_quantum_factorial(self, taft3):
        _, data = taft3
        q11 = data.space.q(0, 0)
        assert hopf_pairing(data, (0,), (0,)).is_one()
        assert hopf_pairing(data, (0, 0), (0, 0)) == 1 + q11
        assert hopf_pairing(data, (0,), (0, 0)).is_zero()

    def test_trivial_braiding_never_terminates(self):
        bichar = Bicharacter.from_exponents([1], 1, [[0]])
        with pytest.raises(CutoffExceededError) as exc:
            build_nichols(BraidedDiagonalSpace.standard(bichar), cutoff=5)
        assert exc.value.dims == [1] * 6

    def test_cutoff_must_be_positive(self, taft3):
        with pytest.raises(InputValidationError):
            build_nichols(taft3[1].space, cutoff=0)


class TestSuperA11:
    def test_dims(self, super1):
        _, data = super1
        assert data.dims == [1, 2, 2, 2, 1]
        assert data.total_dim == 8
        assert data.i_ell == (0, 0)

    @pytest.mark.slow
    def test_dims_n3(self):
        data = build_nichols(BraidedDiagonalSpace.standard(preset_super_a11(3).bicharacter()))
        assert data.total_dim == 24
        assert data.ell == 12
        assert data.i_ell == (0, 0)

    def test_roots(self, super1):
        preset, data = super1
        assert check_root_formula(data, preset.roots)
        assert pbw_hilbert_series(preset.roots) == data.dims

    def test_symmetrizer_ranks_match(self, super1):
        _, data = super1
        for d in range(1, len(data.dims) + 1):
            ranks = symmetrizer_block_ranks(data.space, d)
            expected = data.dims[d] if d < len(data.dims) else 0
            assert sum(ranks.values()) == expected

    def test_derivations_detect_nonzero(self, super1):
        _, data = super1
        n = data.space.n
        for w in data.basis:
            if not w:
                continue
            vec = {w: data.field.one}
            assert any(data.left_derivative(i, vec) for i in range(n))
            assert any(data.right_derivative(i, vec) for i in range(n))

    def test_dual_basis(self, super1):
        _, data = super1
        f = data.field
        for d in range(data.ell + 1):
            duals = dual_basis(data, d)
            for alpha, yvec in duals.items():
                for beta in data.sections[d]:
                    value = f.zero
                    for ys, c in yvec.items():
                        value = value + c * hopf_pairing(data, ys, beta)
                    assert value == (f.one if alpha == beta else f.zero)


class TestSymmetrizer:
    def test_low_degree_check(self, taft3, super1):
        assert check_low_degrees(taft3[1]) == []
        assert check_low_degrees(super1[1]) == []

    def test_low_degree_check_stops_at_word_bound(self, super1):
        # 2^1 ≤ 3 < 2^2：只复核 1 次
        assert check_low_degrees(super1[1], max_words=3) == []

    def test_degree_two_taft(self, taft3):
        space = taft3[1].space
        cols = quantum_symmetrizer(space, 2)
        # S_2(x x) = (1 + q) x x
        assert cols[(0, 0)] == {(0, 0): 1 + space.q(0, 0)}

    def test_word_bound(self, super1):
        with pytest.raises(BoundExceededError):
            quantum_symmetrizer(super1[1].space, 6, max_words=16)


class TestGeneratorDegrees:
    def test_empty_generators(self):
        bichar = Bicharacter.from_exponents([2], 2, [[1]])
        data = build_nichols(BraidedDiagonalSpace.with_degrees(bichar, []))
        assert data.dims == [1]
        assert data.ell == 0
        assert data.i_ell == (0,)

    def test_standard_degrees_agree(self):
        bichar = preset_taft(3).bicharacter()
        explicit = build_nichols(BraidedDiagonalSpace.with_degrees(bichar, [[1]]))
        assert explicit.dims == [1, 1, 1]

    def test_degree_two_generator(self):
        # Z_8 上次数 2 的生成元：q' = r(g_2, g_2) = ζ_8^4 = -1
        bichar = Bicharacter.from_exponents([8], 8, [[1]])
        data = build_nichols(BraidedDiagonalSpace.with_degrees(bichar, [[2]]))
        assert data.dims == [1, 1]
        assert data.i_ell == (2,)

    def test_bad_degree_length(self):
        bichar = preset_taft(3).bicharacter()
        with pytest.raises(InputValidationError):
            BraidedDiagonalSpace.with_degrees(bichar, [[1, 0]])


class TestRootDatum:
    def test_length_mismatch(self):
        with pytest.raises(InputValidationError):
            RootDatum(positive=((1,),), orders=(3, 3))

    def test_pbw_series(self):
        roots = RootDatum(positive=((1, 0), (0, 1), (1, 1)), orders=(2, 2, 2))
        assert pbw_hilbert_series(roots) == [1, 2, 2, 2, 1]
