"""积分与区分类群元、KR 对、SPiv、模性判据（含 Taft 奇偶性与超 A(1|1) 验收值）"""
import pytest

from src.services.catalog_service import preset_cartan_type, preset_super_a11, preset_taft
from src.services.lattice_service import Bicharacter
from src.services.nichols_service import BraidedDiagonalSpace, build_nichols
from src.services.smash_service import SmashAlgebra
from src.services.verifier_service import (
    RibbonPair, enumerate_kr_pairs, integrals, modularity_check, radford_consistency, spherical_check_remark,
    spherical_verdict, spiv, witness_to_pair,
)


def nichols_of(preset):
    return build_nichols(BraidedDiagonalSpace.standard(preset.bicharacter()))


def _verify(preset):
    nichols = nichols_of(preset)
    H = SmashAlgebra(nichols)
    dist = integrals(H, nichols)
    return nichols, H, dist


class TestTaftParity:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_distinguished(self, n):
        preset = preset_taft(n)
        _, H, dist = _verify(preset)
        assert dist.g_h.as_pairs() == preset.expectations()["g_h"]
        assert list(dist.alpha_shift) == [1]
        assert not dist.alpha_is_counit
        assert dist.integral_verified and dist.cointegral_verified
        assert dist.radford_s4

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_kr_pairs_by_parity(self, n):
        preset = preset_taft(n)
        _, H, dist = _verify(preset)
        pairs = enumerate_kr_pairs(H, dist)
        assert len(pairs) == (1 if n % 2 else 0)
        assert not spherical_verdict(dist, spiv(H, dist))

    def test_taft3_pair(self):
        preset = preset_taft(3)
        _, H, dist = _verify(preset)
        bichar = preset.bicharacter()
        assert enumerate_kr_pairs(H, dist) == [RibbonPair(zeta=(2,), a=bichar.gamma((1,)))]

    @pytest.mark.parametrize("n,verdict", [(3, "yes"), (4, "no"), (5, "yes"), (6, "no")])
    def test_modularity(self, n, verdict):
        preset = preset_taft(n)
        nichols = nichols_of(preset)
        report = modularity_check(preset.bicharacter(), nichols)
        assert report.verdict == verdict
        if verdict == "no":
            assert report.reason.startswith("(i) fails")
            assert report.b_nondegenerate is False

    @pytest.mark.parametrize("n", [3, 5])
    def test_witness_maps_to_pair(self, n):
        preset = preset_taft(n)
        nichols, H, dist = _verify(preset)
        pairs = set(enumerate_kr_pairs(H, dist))
        bichar = preset.bicharacter()
        report = modularity_check(bichar, nichols)
        assert report.witnesses
        for w in report.witnesses:
            assert witness_to_pair(bichar, w) in pairs

    def test_radford_consistency(self, taft3):
        preset, nichols = taft3
        assert radford_consistency(preset.bicharacter(), nichols)


class TestSuperA11:
    def test_witnesses(self, super1):
        preset, nichols = super1
        report = modularity_check(preset.bicharacter(), nichols)
        assert report.verdict == "yes"
        got = sorted([list(w.j), list(w.a)] for w in report.witnesses)
        assert got == sorted(preset.expectations()["witnesses"])

    def test_spherical(self, super1):
        preset, nichols = super1
        H = SmashAlgebra(nichols)
        dist = integrals(H, nichols)
        assert dist.alpha_is_counit
        sp = spiv(H, dist)
        assert [a.as_pairs() for a in sp] == preset.expectations()["spiv"]
        assert spherical_verdict(dist, sp)
        assert len(enumerate_kr_pairs(H, dist)) == 4

    def test_remark_scan(self, super1):
        preset, nichols = super1
        bichar = preset.bicharacter()
        found = spherical_check_remark(bichar, nichols)
        assert found
        assert all(a.power(2).is_trivial() for _, _, a in found)

    def test_radford(self, super1):
        preset, nichols = super1
        assert radford_consistency(preset.bicharacter(), nichols)

    @pytest.mark.slow
    def test_n3(self):
        preset = preset_super_a11(3)
        nichols = nichols_of(preset)
        bichar = preset.bicharacter()
        expected = preset.expectations()
        report = modularity_check(bichar, nichols)
        assert report.verdict == "yes"
        got = sorted([list(w.j), list(w.a)] for w in report.witnesses)
        assert got == sorted(expected["witnesses"])
        assert got == sorted([[[0, 0], [3, 3]], [[3, 0], [0, 0]], [[0, 3], [0, 3]], [[3, 3], [3, 0]]])

        H = SmashAlgebra(nichols)
        dist = integrals(H, nichols)
        sp = spiv(H, dist)
        # SPiv = {k_1^n k_2^n}
        assert sp == [bichar.k_elem((1, 0)).power(3) * bichar.k_elem((0, 1)).power(3)]
        assert [a.as_pairs() for a in sp] == expected["spiv"]
        assert spherical_verdict(dist, sp)
        assert len(enumerate_kr_pairs(H, dist)) == 4


class TestModularityEdges:
    def test_undetermined(self):
        bichar = preset_taft(3).bicharacter()
        assert modularity_check(bichar, None).verdict == "undetermined"

    def test_no_generators(self):
        bichar = Bicharacter.from_exponents([3], 3, [[1]])
        nichols = build_nichols(BraidedDiagonalSpace.with_degrees(bichar, []))
        report = modularity_check(bichar, nichols)
        # 无生成元时条件 (ii) 只要求 2j = 0
        assert report.verdict == "yes"
        assert {tuple(w.j) for w in report.witnesses} == {(0,)}

    @pytest.mark.slow
    def test_cartan_a2(self):
        preset = preset_cartan_type("A2", 5)
        nichols = nichols_of(preset)
        assert nichols.total_dim == preset.expectations()["total_dim"] == 125
        assert nichols.dims == preset.expectations()["hilbert_series"]
        report = modularity_check(preset.bicharacter(), nichols)
        assert report.verdict == "yes"
