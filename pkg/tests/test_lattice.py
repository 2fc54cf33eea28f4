"""格、双特征 r 与形式 b"""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.services.catalog_service import preset_super_a11, preset_taft
from src.services.lattice_service import Bicharacter, GroupData
from src.utils.errors import InputValidationError

SUPER3 = preset_super_a11(3).bicharacter()


def vectors(group: GroupData):
    return st.tuples(*(st.integers(0, m - 1) for m in group.orders))


class TestGroup:
    def test_enumeration_is_lexicographic(self):
        group = GroupData((2, 3))
        assert group.size == 6
        assert group.elements[:3] == [(0, 0), (0, 1), (0, 2)]

    def test_rejects_bad_orders(self):
        with pytest.raises(InputValidationError) as exc:
            GroupData((3, 0))
        assert exc.value.field == "group.orders[1]"


class TestFromExponents:
    def test_session_conductor_shrinks(self):
        bichar = preset_taft(3).bicharacter()
        assert bichar.conductor == 3
        assert bichar.exponents == ((2,),)

    def test_rejects_ill_defined_braiding(self):
        with pytest.raises(InputValidationError) as exc:
            Bicharacter.from_exponents([2], 3, [[1]])
        assert "braiding.exponents" in exc.value.field

    def test_rejects_wrong_shape(self):
        with pytest.raises(InputValidationError):
            Bicharacter.from_exponents([2, 2], 2, [[1, 0]])

    def test_rejects_bad_conductor(self):
        with pytest.raises(InputValidationError):
            Bicharacter.from_exponents([2], 0, [[0]])


class TestForms:
    @given(vectors(SUPER3.group), vectors(SUPER3.group), vectors(SUPER3.group))
    def test_r_is_bicharacter(self, a, b, c):
        group, n = SUPER3.group, SUPER3.conductor
        assert SUPER3.r_exp(group.add(a, b), c) == (SUPER3.r_exp(a, c) + SUPER3.r_exp(b, c)) % n
        assert SUPER3.r_exp(a, group.add(b, c)) == (SUPER3.r_exp(a, b) + SUPER3.r_exp(a, c)) % n

    @given(vectors(SUPER3.group), vectors(SUPER3.group))
    def test_b_symmetric(self, a, b):
        assert SUPER3.b_exp(a, b) == SUPER3.b_exp(b, a)

    @given(vectors(SUPER3.group))
    def test_k_is_gamma_times_gamma_bar(self, a):
        assert SUPER3.k_elem(a) == SUPER3.gamma(a) * SUPER3.gamma_bar(a)

    def test_r_on_generators(self):
        # r(g_s, g_t) = q_ts
        assert SUPER3.r_eval((0, 1), (1, 0)) == SUPER3.qmat[0][1]
        assert SUPER3.r_eval((1, 0), (0, 1)) == SUPER3.qmat[1][0]

    def test_b_eval_on_generators(self):
        assert SUPER3.b_eval((1, 0), (0, 1)) == SUPER3.qmat[0][1] * SUPER3.qmat[1][0]
        assert SUPER3.b_eval((1, 0), (1, 0)) == SUPER3.qmat[0][0] * SUPER3.qmat[0][0]


class TestRadical:
    def test_taft_parity(self):
        assert preset_taft(3).bicharacter().is_nondegenerate()
        even = preset_taft(4).bicharacter()
        assert not even.is_nondegenerate()
        assert even.b_radical() == [(2,)]

    @pytest.mark.parametrize("preset", [preset_taft(4), preset_taft(6), preset_super_a11(1), preset_super_a11(3)])
    def test_smith_matches_scan(self, preset):
        bichar = preset.bicharacter()
        assert bichar.b_radical_size() == bichar.b_radical_size_smith()

    def test_super_nondegenerate(self):
        assert SUPER3.is_nondegenerate()

    def test_characters(self):
        chars = SUPER3.characters()
        assert len(chars) == SUPER3.group.size
        assert len(set(chars)) == len(chars)
