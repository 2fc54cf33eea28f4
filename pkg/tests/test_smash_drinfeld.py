"""smash 积 H 与通用 Drinfeld 偶 Drin(H)：公理、R 矩阵、带状元素"""
import itertools

import pytest

from src.models.schemas import EngineLimits
from src.services.double_service import drinfeld_map_rank, verify_hopf, verify_quasitriangular
from src.services.drinfeld_service import (
    GenericDouble, drinfeld_double, ribbon_element, ribbon_search, verify_ribbon,
)
from src.services.lattice_service import Bicharacter
from src.services.nichols_service import BraidedDiagonalSpace, build_nichols
from src.services.smash_service import SmashAlgebra, smash_product
from src.services.verifier_service import enumerate_kr_pairs, integrals, zeta_values
from src.utils.errors import BoundExceededError
from src.utils.linalg import add_scaled, rank


@pytest.fixture(scope="module")
def taft_drin(taft3_smash):
    return drinfeld_double(taft3_smash)


class TestSmash:
    def test_dimension(self, taft3_smash):
        assert taft3_smash.dimension == 9

    def test_axioms_exhaustive(self, taft3_smash):
        summary = verify_hopf(taft3_smash, mode="exhaustive")
        assert summary.passed, summary.failures

    def test_super_axioms(self, super1):
        summary = verify_hopf(SmashAlgebra(super1[1]))
        assert summary.passed, summary.failures

    def test_x_skew_primitive(self, taft3_smash):
        H = taft3_smash
        delta = H.coproduct(H.x(0))
        gamma = H.gamma_element(H.space.generator_degrees[0])
        unit = H.unit()
        # Δ(x) = x⊗1 + γ⊗x
        target = {}
        for a, ca in H.x(0).items():
            for b, cb in unit.items():
                target[(a, b)] = target.get((a, b), H.field.zero) + ca * cb
        for a, ca in gamma.items():
            for b, cb in H.x(0).items():
                target[(a, b)] = target.get((a, b), H.field.zero) + ca * cb
        assert delta == {k: v for k, v in target.items() if not v.is_zero()}

    def test_antipode_order(self, taft3_smash):
        H = taft3_smash
        x = H.x(0)
        s2 = H.antipode(H.antipode(x))
        assert s2 != x
        s6 = x
        for _ in range(6):
            s6 = H.antipode(s6)
        assert s6 == x


class TestGenericDouble:
    def test_dimension(self, taft_drin):
        assert taft_drin.dimension == 81

    def test_bound(self, super1):
        with pytest.raises(BoundExceededError):
            GenericDouble(SmashAlgebra(super1[1]), EngineLimits(generic_max_dim=16))

    def test_drinfeld_map_full_rank(self, taft_drin):
        assert drinfeld_map_rank(taft_drin, EngineLimits(max_dim=100)) == 81

    @pytest.mark.slow
    def test_axioms(self, taft_drin):
        hopf = verify_hopf(taft_drin)
        assert hopf.passed, hopf.failures
        quasi = verify_quasitriangular(taft_drin)
        assert quasi.passed, quasi.failures


class TestRibbon:
    def test_kr_pair_gives_ribbon(self, taft3, taft3_smash, taft_drin):
        H = taft3_smash
        dist = integrals(H, taft3[1])
        pairs = enumerate_kr_pairs(H, dist)
        assert len(pairs) == 1
        pair = pairs[0]
        v = ribbon_element(taft_drin, zeta_values(H, pair.zeta), H.character_element(pair.a))
        checks = verify_ribbon(taft_drin, v)
        assert all(checks.values()), checks
        assert set(checks) == {"central", "counit", "antipode_fixed", "invertible", "coproduct", "square"}

    def test_non_pair_is_not_ribbon(self, taft3_smash, taft_drin):
        H = taft3_smash
        zero = H.group.zero
        trivial = H.bichar.gamma(zero)
        v = ribbon_element(taft_drin, zeta_values(H, zero), H.character_element(trivial))
        assert not all(verify_ribbon(taft_drin, v, full_basis=False, grouplike_form=True).values())

    @pytest.mark.slow
    def test_search_matches_kr_pairs(self, taft3, taft3_smash, taft_drin):
        H = taft3_smash
        dist = integrals(H, taft3[1])
        expected = {(p.zeta, p.a) for p in enumerate_kr_pairs(H, dist)}
        candidates, labels = [], {}
        for j in H.group.elements:
            for chi in H.bichar.characters():
                label = f"{j}|{chi.exps}"
                labels[label] = (j, chi)
                candidates.append((label, zeta_values(H, j), H.character_element(chi)))
        found = {labels[label] for label in ribbon_search(taft_drin, candidates)}
        assert found == expected


class TestRibbonBruteForce:
    """Drin(k^{Z_2})：dim 4，在中心里直接穷举带状元素，与 KR 对给出的集合比较"""

    @pytest.fixture(scope="class")
    def z2(self):
        bichar = Bicharacter.from_exponents([2], 2, [[1]])
        nichols = build_nichols(BraidedDiagonalSpace.with_degrees(bichar, []))
        H = smash_product(nichols)
        return nichols, H, drinfeld_double(H)

    def test_center_is_whole_algebra(self, z2):
        _, _, dd = z2
        # v ↦ ([v, b_l])_l 的像行；秩 0 即中心为全体
        rows = []
        for k in dd.basis:
            row = {}
            for l in dd.basis:
                bk, bl = dd.element(k), dd.element(l)
                comm = dd.mul(bk, bl)
                add_scaled(comm, dd.mul(bl, bk), -dd.field.one)
                row.update({(l, key): c for key, c in comm.items()})
            rows.append(row)
        assert dd.dimension == 4
        assert rank(rows, dd.field) == 0

    def test_search_over_center_matches_kr_pairs(self, z2):
        nichols, H, dd = z2
        f = dd.field
        u = dd.drinfeld_element()
        # 分裂半单：本原幂等元基下带状元素取 ±1，在 h^p⋈δ_i 基下系数落在 {-1, 0, 1}
        found = []
        for coeffs in itertools.product((-f.one, f.zero, f.one), repeat=dd.dimension):
            v = {k: c for k, c in zip(dd.basis, coeffs) if not c.is_zero()}
            if all(verify_ribbon(dd, v, drinfeld_elem=u).values()):
                found.append(v)

        pairs = enumerate_kr_pairs(H, integrals(H, nichols))
        from_pairs = [ribbon_element(dd, zeta_values(H, p.zeta), H.character_element(p.a), drinfeld_elem=u)
                      for p in pairs]
        assert pairs
        assert len(found) == len(from_pairs)
        assert all(v in found for v in from_pairs)
