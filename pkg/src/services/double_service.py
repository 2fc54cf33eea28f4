"""
辫子 Drinfeld 偶 Drin_{K*}(𝔅_q*, 𝔅_q)

正规形 x_A δ_i y_B（A 为 x 截面词，B 为 y 截面词）。生成关系：
    δ_i x_j = x_j δ_{i-d_j}
    y_j δ_i = δ_{i-d_j} y_j
    y_i x_j - q_ji x_j y_i = δ_ij (1 - k_i)，k_i = Σ_m b(g_m, g_{d_i}) δ_m

y_i 越过任意 x 截面词 u（多重次数 μ）的一步公式：
    y_i u = q(μ,i) u y_i + ∂^L_i(u) - q(μ,i) q_ii^{-1} ∂^R_i(u) k_i
由此对 y 词逐字母递推得到 y_B x_A 的正规形（带缓存）。
"""
from typing import Dict, List, Tuple

from loguru import logger

from src.services.hopf_core import (
    DoubleElement, Elem, FiniteHopfAlgebra, Tensor, drinfeld_map_rank, verify_hopf, verify_quasitriangular,
)
from src.services.lattice_service import Character, LatticeVec
from src.services.nichols_service import NicholsData, Word, dual_basis
from src.utils.cyclotomic import CycNumber
from src.utils.errors import CutoffExceededError
from src.utils.linalg import add_scaled

DoubleKey = Tuple[Word, LatticeVec, Word]
YXTerms = Dict[Tuple[Word, Character, Word], CycNumber]

__all__ = [
    "DoubleAlgebra", "DoubleElement", "braided_double",
    "verify_hopf", "verify_quasitriangular", "drinfeld_map_rank",
]


class DoubleAlgebra(FiniteHopfAlgebra):
    """Drin_{K*}(𝔅_q*, 𝔅_q)，dim = dim(𝔅_q)²·|Λ|"""

    name = "Drin_K*"

    def __init__(self, nichols: NicholsData):
        if not nichols.finite:
            raise CutoffExceededError(len(nichols.dims) - 1, nichols.dims)
        super().__init__(nichols.field)
        self.nichols = nichols
        self.space = nichols.space
        self.bichar = nichols.space.bichar
        self.group = self.bichar.group
        self._trivial = Character(self.bichar.conductor, (0,) * self.group.rank)
        self._x_degree: Dict[Word, LatticeVec] = {w: self.space.word_degree(w) for w in nichols.basis}
        self._y_degree: Dict[Word, LatticeVec] = {w: self.space.word_degree(w) for w in nichols.y_basis}
        self._basis: List[DoubleKey] = [
            (a, k, e) for a in nichols.basis for k in self.group.elements for e in nichols.y_basis
        ]
        self._yx_cache: Dict[Tuple[Word, Word], YXTerms] = {}
        self._r_matrix: Tensor = {}
        logger.info(f"[Double] dim = {len(self._basis)} = {nichols.total_dim}²·{self.group.size}")

    @property
    def basis(self) -> List[DoubleKey]:
        return self._basis

    # ==================== 常用元素 ====================

    def x(self, j: int) -> Elem:
        one = self.field.one
        return {((j,), k, ()): one for k in self.group.elements}

    def y(self, j: int) -> Elem:
        one = self.field.one
        return {((), k, (j,)): one for k in self.group.elements}

    def delta(self, k: LatticeVec) -> Elem:
        return {((), tuple(k), ()): self.field.one}

    def character_element(self, chi: Character) -> Elem:
        f = self.field
        return {((), k, ()): f.root(chi.exponent_at(k)) for k in self.group.elements}

    def k_element(self, j: int) -> Elem:
        """k_j = γ_{d_j} γ̄_{d_j}"""
        return self.character_element(self.bichar.k_elem(self.space.generator_degrees[j]))

    def wrap(self, terms: Elem) -> DoubleElement:
        return DoubleElement(self, terms)

    def z_degree(self, key: DoubleKey) -> int:
        return len(key[0]) - len(key[2])

    def g_degree(self, key: DoubleKey) -> LatticeVec:
        return self.group.sub(self._x_degree[key[0]], self._y_degree[key[2]])

    # ==================== y 越过 x ====================

    def _y_letter_past(self, i: int, c: Word) -> YXTerms:
        """y_i x_c 的正规形"""
        f = self.field
        space = self.space
        mu = space.multidegree(c)
        q_exp = space.chi_exp(mu, i)
        q = f.root(q_exp)
        terms: YXTerms = {(c, self._trivial, (i,)): q}
        for u, coeff in self.nichols.left_deriv.get((c, i), {}).items():
            add_scaled(terms, {(u, self._trivial, ()): coeff}, f.one)
        rd = self.nichols.right_deriv.get((c, i))
        if rd:
            k_i = self.bichar.k_elem(space.generator_degrees[i])
            factor = -f.root(q_exp - space.q_exp(i, i))
            for u, coeff in rd.items():
                add_scaled(terms, {(u, k_i, ()): coeff}, factor)
        return terms

    def yx(self, b: Word, c: Word) -> YXTerms:
        """y_b x_c = Σ coeff · x_{a'} χ y_{e'}（b 为 y 截面词，c 为 x 截面词）"""
        key = (b, c)
        cached = self._yx_cache.get(key)
        if cached is not None:
            return cached
        one = self.field.one
        if not b:
            result: YXTerms = {(c, self._trivial, ()): one}
        elif not c:
            result = {((), self._trivial, b): one}
        else:
            prefix, i = b[:-1], b[-1]
            result = {}
            for (u, chi, e), coeff in self._y_letter_past(i, c).items():
                for (u2, chi2, e2), coeff2 in self.yx(prefix, u).items():
                    # y_{e2} χ = χ(deg e2) χ y_{e2}
                    scale = coeff * coeff2 * self.field.root(chi.exponent_at(self._y_degree[e2]))
                    for e3, coeff3 in self.nichols.y_multiply_sections(e2, e).items():
                        add_scaled(result, {(u2, chi2 * chi, e3): coeff3}, scale)
        self._yx_cache[key] = result
        return result

    # ==================== 结构映射 ====================

    def _mul_basis(self, left: DoubleKey, right: DoubleKey) -> Elem:
        a, i, b = left
        c, j, e = right
        group = self.group
        out: Elem = {}
        for (a2, chi, e2), coeff in self.yx(b, c).items():
            k = group.sub(i, self._x_degree[a2])
            if k != group.sub(j, self._y_degree[e2]):
                continue
            scale = coeff * self.field.root(chi.exponent_at(k))
            xs = self.nichols.multiply_sections(a, a2)
            if not xs:
                continue
            ys = self.nichols.y_multiply_sections(e2, e)
            for wa, ca in xs.items():
                for we, ce in ys.items():
                    add_scaled(out, {(wa, k, we): ca * ce}, scale)
        return out

    def unit(self) -> Elem:
        one = self.field.one
        return {((), k, ()): one for k in self.group.elements}

    def counit_basis(self, key: DoubleKey) -> CycNumber:
        a, k, e = key
        return self.field.one if not a and not e and k == self.group.zero else self.field.zero

    def _coproduct_basis(self, key: DoubleKey) -> Tensor:
        a, k, e = key
        group = self.group
        one = self.field.one
        if a and e:
            return self.tensor_mul(self.coproduct_basis((a, k, ())), self.coproduct_basis(((), k, e)))
        if not a and not e:
            return {(((), b, ()), ((), group.sub(k, b), ())): one for b in group.elements}
        if a:
            j = a[-1]
            dj = self.space.generator_degrees[j]
            tail: Tensor = {}
            for b in group.elements:
                c = group.sub(k, b)
                tail[(((j,), b, ()), ((), c, ()))] = one
                tail[(((), b, ()), ((j,), c, ()))] = self.field.root(self.bichar.r_exp(b, dj))
            if len(a) == 1:
                return tail
            # x_a δ_k = (x_s δ_{k+d_j})(x_j δ_k)
            return self.tensor_mul(self.coproduct_basis((a[:-1], group.add(k, dj), ())), tail)
        i = e[-1]
        di = self.space.generator_degrees[i]
        prefix = e[:-1]
        k2 = group.add(k, self._y_degree[prefix])
        tail = {}
        for b in group.elements:
            c = group.sub(k2, b)
            tail[(((), b, (i,)), ((), c, ()))] = one
            tail[(((), b, ()), ((), c, (i,)))] = self.field.root(self.bichar.r_exp(di, b))
        if not prefix:
            return tail
        # δ_k y_e = (δ_k y_{e'})(δ_{k+deg e'} y_i)
        return self.tensor_mul(self.coproduct_basis(((), k, prefix)), tail)

    def _antipode_basis(self, key: DoubleKey) -> Elem:
        a, k, e = key
        group = self.group
        f = self.field
        if a and e:
            return self.mul(self.antipode_basis(((), k, e)), self.antipode_basis((a, k, ())))
        if not a and not e:
            return {((), group.neg(k), ()): f.one}
        mk = group.neg(k)
        if a:
            j = a[-1]
            dj = self.space.generator_degrees[j]
            # S(x_j δ_k) = -r(-k, d_j)^{-1} x_j δ_{-k-d_j}
            tail = {((j,), group.sub(mk, dj), ()): -f.root(-self.bichar.r_exp(mk, dj))}
            if len(a) == 1:
                return tail
            return self.mul(tail, self.antipode_basis((a[:-1], group.add(k, dj), ())))
        i = e[-1]
        di = self.space.generator_degrees[i]
        prefix = e[:-1]
        k2 = group.add(k, self._y_degree[prefix])
        m = group.sub(group.neg(k2), di)
        # S(δ_k y_i) = -r(d_i, -k-d_i)^{-1} δ_{-k-d_i} y_i
        tail = {((), m, (i,)): -f.root(-self.bichar.r_exp(di, m))}
        if not prefix:
            return tail
        return self.mul(tail, self.antipode_basis(((), k, prefix)))

    def generators(self) -> List[Tuple[str, Elem]]:
        n = self.space.n
        gens = [(f"x_{j + 1}", self.x(j)) for j in range(n)]
        gens += [(f"y_{j + 1}", self.y(j)) for j in range(n)]
        gens += [(f"δ_{k}", self.delta(k)) for k in self.group.elements]
        return gens

    # ==================== R 矩阵 ====================

    def r_matrix(self) -> Tensor:
        """R = Σ_α Σ_{k,m} r(g_m, g_k) δ_k y_α ⊗ x_α δ_m，y_α 为 x_α 的对偶基"""
        if self._r_matrix:
            return self._r_matrix
        group = self.group
        out: Tensor = {}
        for d in range(self.nichols.ell + 1):
            for alpha, dual in dual_basis(self.nichols, d).items():
                for ys, coeff in dual.items():
                    for k in group.elements:
                        for m in group.elements:
                            scale = coeff * self.field.root(self.bichar.r_exp(m, k))
                            add_scaled(out, {(((), k, ys), (alpha, m, ())): scale}, self.field.one)
        self._r_matrix = out
        logger.debug(f"[Double] R 矩阵 {len(out)} 项")
        return out


def braided_double(nichols: NicholsData) -> DoubleAlgebra:
    return DoubleAlgebra(nichols)
