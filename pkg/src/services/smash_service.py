"""
smash 积 H = 𝔅_q ⋊ K*

基为 x_A δ_i（A 为 x 截面词，i ∈ Λ），关系 δ_i x_j = x_j δ_{i-d_j}，
Δ(x_j) = x_j⊗1 + γ_{d_j}⊗x_j，Δ(δ_i) = Σ_{a+b=i} δ_a⊗δ_b，S(x_j) = -γ_{d_j}^{-1} x_j。
"""
from typing import Dict, List, Tuple

from loguru import logger

from src.services.hopf_core import Elem, FiniteHopfAlgebra, Tensor
from src.services.lattice_service import Character, LatticeVec
from src.services.nichols_service import NicholsData, Word
from src.utils.cyclotomic import CycNumber
from src.utils.errors import CutoffExceededError
from src.utils.linalg import add_scaled

SmashKey = Tuple[Word, LatticeVec]


class SmashAlgebra(FiniteHopfAlgebra):
    """H = 𝔅_q ⋊ K*，dim H = dim 𝔅_q · |Λ|"""

    name = "H"

    def __init__(self, nichols: NicholsData):
        if not nichols.finite:
            raise CutoffExceededError(len(nichols.dims) - 1, nichols.dims)
        super().__init__(nichols.field)
        self.nichols = nichols
        self.space = nichols.space
        self.bichar = nichols.space.bichar
        self.group = self.bichar.group
        self._degree: Dict[Word, LatticeVec] = {w: self.space.word_degree(w) for w in nichols.basis}
        self._basis: List[SmashKey] = [(w, k) for w in nichols.basis for k in self.group.elements]
        logger.debug(f"[Smash] dim H = {len(self._basis)}")

    @property
    def basis(self) -> List[SmashKey]:
        return self._basis

    # ==================== 常用元素 ====================

    def delta(self, k: LatticeVec) -> Elem:
        return {((), tuple(k)): self.field.one}

    def x(self, j: int) -> Elem:
        one = self.field.one
        return {((j,), k): one for k in self.group.elements}

    def character_element(self, chi: Character) -> Elem:
        """K* 中的类群元 Σ_k χ(g_k) δ_k"""
        f = self.field
        return {((), k): f.root(chi.exponent_at(k)) for k in self.group.elements}

    def gamma_element(self, vec: LatticeVec) -> Elem:
        return self.character_element(self.bichar.gamma(vec))

    def degree_of(self, word: Word) -> LatticeVec:
        return self._degree[word]

    # ==================== 结构映射 ====================

    def _mul_basis(self, a: SmashKey, b: SmashKey) -> Elem:
        (wa, i), (wc, j) = a, b
        if j != self.group.sub(i, self._degree[wc]):
            return {}
        return {(w, j): c for w, c in self.nichols.multiply_sections(wa, wc).items()}

    def unit(self) -> Elem:
        one = self.field.one
        return {((), k): one for k in self.group.elements}

    def counit_basis(self, a: SmashKey) -> CycNumber:
        w, k = a
        return self.field.one if not w and k == self.group.zero else self.field.zero

    def _coproduct_basis(self, a: SmashKey) -> Tensor:
        w, k = a
        group = self.group
        one = self.field.one
        if not w:
            return {(((), b), ((), group.sub(k, b))): one for b in group.elements}
        j = w[-1]
        dj = self.space.generator_degrees[j]
        # x_j δ_k 的余乘
        tail: Tensor = {}
        for b in group.elements:
            c = group.sub(k, b)
            tail[(((j,), b), ((), c))] = one
            tail[(((), b), ((j,), c))] = self.field.root(self.bichar.r_exp(b, dj))
        if len(w) == 1:
            return tail
        # x_w δ_k = (x_s δ_{k+d_j})(x_j δ_k)
        head = self.coproduct_basis((w[:-1], group.add(k, dj)))
        return self.tensor_mul(head, tail)

    def _antipode_basis(self, a: SmashKey) -> Elem:
        w, k = a
        group = self.group
        if not w:
            return {((), group.neg(k)): self.field.one}
        j = w[-1]
        dj = self.space.generator_degrees[j]
        mk = group.neg(k)
        # S(x_j δ_k) = δ_{-k} S(x_j) = -r(-k, d_j)^{-1} x_j δ_{-k-d_j}
        tail = {((j,), group.sub(mk, dj)): -self.field.root(-self.bichar.r_exp(mk, dj))}
        if len(w) == 1:
            return tail
        return self.mul(tail, self.antipode_basis((w[:-1], group.add(k, dj))))

    def generators(self) -> List[Tuple[str, Elem]]:
        gens = [(f"x_{j + 1}", self.x(j)) for j in range(self.space.n)]
        gens += [(f"δ_{k}", self.delta(k)) for k in self.group.elements]
        return gens

    # ==================== 迭代余乘 ====================

    def double_coproduct(self, h: Elem) -> Dict[Tuple[SmashKey, SmashKey, SmashKey], CycNumber]:
        """(Δ⊗id)Δ(h)"""
        out: Dict = {}
        for (a, b), c in self.coproduct(h).items():
            for (a1, a2), d in self.coproduct_basis(a).items():
                add_scaled(out, {(a1, a2, b): d}, c)
        return out


def smash_product(nichols: NicholsData) -> SmashAlgebra:
    """𝔅_q ⋊ K*，K = Λ 的特征群；截断未终止时抛 CutoffExceededError"""
    return SmashAlgebra(nichols)
