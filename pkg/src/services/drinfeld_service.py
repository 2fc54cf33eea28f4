"""
有限维 Hopf 代数 H 的 Drinfeld 偶 Drin(H) = H^{*cop} ⋈ H

约定：
    (f⋈a)(g⋈b) = Σ f·g(S^{-1}(a_3) ? a_1) ⋈ a_2 b
    Δ(f⋈a) = Σ (f_2⋈a_1)⊗(f_1⋈a_2)
    R = Σ_t (ε⋈h_t)⊗(h^t⋈1)，Δ^op(h) = R Δ(h) R^{-1}
带状元素 v = u·(ζ^{-1}⋈a^{-1})，u = Σ S(R^{(2)}) R^{(1)} 为 Drinfeld 元素。
基用 (p, a) 下标对表示 h^p ⋈ h_a。
"""
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.models.schemas import EngineLimits
from src.services.hopf_core import Elem, FiniteHopfAlgebra, Key, Tensor, flip
from src.utils.cyclotomic import CycNumber
from src.utils.errors import BoundExceededError
from src.utils.linalg import add_scaled, inverse, rank

IndexVec = Dict[int, CycNumber]
GenericKey = Tuple[int, int]


class GenericDouble(FiniteHopfAlgebra):
    """Drin(H)，dim = (dim H)²"""

    name = "Drin(H)"

    def __init__(self, hopf: FiniteHopfAlgebra, limits: Optional[EngineLimits] = None):
        limits = limits or EngineLimits()
        dim = hopf.dimension
        if dim > limits.generic_max_dim:
            raise BoundExceededError("generic double", dim, limits.generic_max_dim)
        super().__init__(hopf.field)
        self.hopf = hopf
        self.keys: List[Key] = list(hopf.basis)
        self.index: Dict[Key, int] = {k: i for i, k in enumerate(self.keys)}
        n = dim
        f = self.field

        self._mult: List[List[IndexVec]] = [
            [self._to_index(hopf.mul_basis(a, b)) for b in self.keys] for a in self.keys
        ]
        self._delta: List[Dict[Tuple[int, int], CycNumber]] = [
            {(self.index[u], self.index[v]): c for (u, v), c in hopf.coproduct_basis(a).items()}
            for a in self.keys
        ]
        self._unit = self._to_index(hopf.unit())
        self._eps = [hopf.counit_basis(a) for a in self.keys]
        self._s = [self._to_index(hopf.antipode_basis(a)) for a in self.keys]
        self._s_inv = self._invert_antipode()

        # e^p e^q = Σ_w Δ(h_w)[p, q] e^w
        self._star: Dict[Tuple[int, int], IndexVec] = {}
        for w in range(n):
            for pq, c in self._delta[w].items():
                add_scaled(self._star.setdefault(pq, {}), {w: c}, f.one)
        # Δ_{H*}(e^p) = Σ m^p_{xy} e^x ⊗ e^y
        self._mstar: List[List[Tuple[int, int, CycNumber]]] = [[] for _ in range(n)]
        for x in range(n):
            for y in range(n):
                for p, c in self._mult[x][y].items():
                    self._mstar[p].append((x, y, c))

        self._commute_cache: Dict[Tuple[int, int], Dict[GenericKey, CycNumber]] = {}
        self._conj_cache: Dict[Tuple[int, int], List[IndexVec]] = {}
        self._basis: List[GenericKey] = [(p, a) for p in range(n) for a in range(n)]
        self._r: Tensor = {}
        logger.info(f"[Drinfeld] dim Drin(H) = {len(self._basis)}")

    # ==================== H 上的辅助运算 ====================

    def _to_index(self, elem: Elem) -> IndexVec:
        return {self.index[k]: c for k, c in elem.items()}

    def _h_mul(self, u: IndexVec, v: IndexVec) -> IndexVec:
        out: IndexVec = {}
        for a, c in u.items():
            for b, d in v.items():
                prod = self._mult[a][b]
                if prod:
                    add_scaled(out, prod, c * d)
        return out

    def _invert_antipode(self) -> List[IndexVec]:
        n = len(self.keys)
        f = self.field
        matrix = [[self._s[col].get(row, f.zero) for col in range(n)] for row in range(n)]
        inv = inverse(matrix, f)
        return [{row: inv[row][col] for row in range(n) if not inv[row][col].is_zero()} for col in range(n)]

    def _conjugated(self, a3: int, a1: int) -> List[IndexVec]:
        """w ↦ S^{-1}(h_{a3}) h_w h_{a1}"""
        key = (a3, a1)
        cached = self._conj_cache.get(key)
        if cached is None:
            left = self._s_inv[a3]
            right = {a1: self.field.one}
            cached = [self._h_mul(self._h_mul(left, {w: self.field.one}), right) for w in range(len(self.keys))]
            self._conj_cache[key] = cached
        return cached

    def _commute(self, a: int, q: int) -> Dict[GenericKey, CycNumber]:
        """(1⋈h_a)(h^q⋈1) = Σ h^q(S^{-1}(a_3) ? a_1) ⋈ a_2"""
        key = (a, q)
        cached = self._commute_cache.get(key)
        if cached is not None:
            return cached
        out: Dict[GenericKey, CycNumber] = {}
        for (a1, rest), c in self._delta[a].items():
            for (a2, a3), d in self._delta[rest].items():
                conj = self._conjugated(a3, a1)
                for w, vec in enumerate(conj):
                    coeff = vec.get(q)
                    if coeff is not None:
                        add_scaled(out, {(w, a2): coeff}, c * d)
        self._commute_cache[key] = out
        return out

    # ==================== 结构映射 ====================

    @property
    def basis(self) -> List[GenericKey]:
        return self._basis

    def _mul_basis(self, left: GenericKey, right: GenericKey) -> Elem:
        p, a = left
        q, b = right
        out: Elem = {}
        for (w, a2), c in self._commute(a, q).items():
            star = self._star.get((p, w))
            if not star:
                continue
            prod = self._mult[a2][b]
            if not prod:
                continue
            for v, s in star.items():
                for z, m in prod.items():
                    add_scaled(out, {(v, z): s * m}, c)
        return out

    def unit(self) -> Elem:
        out: Elem = {}
        for w, e in enumerate(self._eps):
            if e.is_zero():
                continue
            for u, c in self._unit.items():
                out[(w, u)] = e * c
        return out

    def counit_basis(self, key: GenericKey) -> CycNumber:
        p, a = key
        return self._unit.get(p, self.field.zero) * self._eps[a]

    def _coproduct_basis(self, key: GenericKey) -> Tensor:
        p, a = key
        out: Tensor = {}
        for x, y, c in self._mstar[p]:
            for (u, v), d in self._delta[a].items():
                add_scaled(out, {((y, u), (x, v)): c * d}, self.field.one)
        return out

    def _antipode_basis(self, key: GenericKey) -> Elem:
        p, a = key
        n = len(self.keys)
        # (1⋈S(a))(h^p∘S^{-1}⋈1)
        left: Elem = {}
        for w, e in enumerate(self._eps):
            if e.is_zero():
                continue
            for z, c in self._s[a].items():
                left[(w, z)] = e * c
        right: Elem = {}
        for w in range(n):
            coeff = self._s_inv[w].get(p)
            if coeff is None:
                continue
            for u, c in self._unit.items():
                add_scaled(right, {(w, u): coeff * c}, self.field.one)
        return self.mul(left, right)

    def functional_element(self, values: Sequence[CycNumber]) -> Elem:
        """f⋈1，f 由其在 H 基上的取值给出"""
        out: Elem = {}
        for w, fw in enumerate(values):
            if fw.is_zero():
                continue
            for u, c in self._unit.items():
                add_scaled(out, {(w, u): fw * c}, self.field.one)
        return out

    def h_element(self, elem: Elem) -> Elem:
        """ε⋈h"""
        out: Elem = {}
        vec = self._to_index(elem)
        for w, e in enumerate(self._eps):
            if e.is_zero():
                continue
            for z, c in vec.items():
                out[(w, z)] = e * c
        return out

    def generators(self) -> List[Tuple[str, Elem]]:
        f = self.field
        n = len(self.keys)
        gens = []
        for p in range(n):
            values = [f.one if w == p else f.zero for w in range(n)]
            gens.append((f"h^{self.keys[p]}", self.functional_element(values)))
        for label, h in self.hopf.generators():
            gens.append((f"ε⋈{label}", self.h_element(h)))
        return gens

    def r_matrix(self) -> Tensor:
        if self._r:
            return self._r
        out: Tensor = {}
        n = len(self.keys)
        for t in range(n):
            for w, e in enumerate(self._eps):
                if e.is_zero():
                    continue
                for u, c in self._unit.items():
                    add_scaled(out, {((w, t), (t, u)): e * c}, self.field.one)
        self._r = out
        return out

    # ==================== 带状元素 ====================

    def drinfeld_element(self) -> Elem:
        """u = Σ S(R^{(2)}) R^{(1)}"""
        out: Elem = {}
        for (r1, r2), c in self.r_matrix().items():
            add_scaled(out, self.mul(self.antipode_basis(r2), self.element(r1)), c)
        return out

    def grouplike_inverse(self, zeta: Sequence[CycNumber], a: Elem) -> Elem:
        """(ζ⋈a)^{-1} = ζ∘S ⋈ S(a)"""
        f = self.field
        n = len(self.keys)
        zeta_inv = []
        for w in range(n):
            acc = f.zero
            for z, c in self._s[w].items():
                if not zeta[z].is_zero():
                    acc = acc + c * zeta[z]
            zeta_inv.append(acc)
        s_a = self._h_mul_elem_antipode(a)
        out: Elem = {}
        for w, zw in enumerate(zeta_inv):
            if zw.is_zero():
                continue
            for z, c in s_a.items():
                out[(w, z)] = zw * c
        return out

    def _h_mul_elem_antipode(self, a: Elem) -> IndexVec:
        out: IndexVec = {}
        for k, c in self._to_index(a).items():
            add_scaled(out, self._s[k], c)
        return out


def drinfeld_double(hopf: FiniteHopfAlgebra, limits: Optional[EngineLimits] = None) -> GenericDouble:
    return GenericDouble(hopf, limits)


def ribbon_element(dd: GenericDouble, zeta: Sequence[CycNumber], a: Elem,
                   drinfeld_elem: Optional[Elem] = None) -> Elem:
    """v = u·(ζ^{-1}⋈a^{-1})，ζ 为 H 的代数特征（在 H 基上的取值），a 为 H 的类群元"""
    u = drinfeld_elem if drinfeld_elem is not None else dd.drinfeld_element()
    return dd.mul(u, dd.grouplike_inverse(zeta, a))


def verify_ribbon(dd: GenericDouble, v: Elem, drinfeld_elem: Optional[Elem] = None,
                  full_basis: bool = True, grouplike_form: bool = False) -> Dict[str, bool]:
    """
    带状元素的性质：中心、可逆、ε(v) = 1、S(v) = v、(R21 R)Δ(v) = v⊗v、v² = u S(u)

    full_basis 为 False 时中心性只在代数生成元上检查。
    grouplike_form 为 True 表示 v = u G^{-1}（G 类群），此时可逆性与余乘恒等式自动成立，不再计算。
    """
    f = dd.field
    checks: Dict[str, bool] = {}
    if full_basis:
        probes = [dd.element(k) for k in dd.basis]
    else:
        probes = [g for _, g in dd.generators()]
    checks["central"] = all(dd.mul(v, h) == dd.mul(h, v) for h in probes)
    checks["counit"] = dd.counit(v) == f.one
    checks["antipode_fixed"] = dd.antipode(v) == v
    if not grouplike_form:
        left_rows = [dd.mul(v, dd.element(k)) for k in dd.basis]
        checks["invertible"] = rank(left_rows, f) == dd.dimension
        r = dd.r_matrix()
        q = dd.tensor_mul(flip(r), r)
        vv = {(a, b): c * d for a, c in v.items() for b, d in v.items()}
        checks["coproduct"] = dd.tensor_mul(q, dd.coproduct(v)) == vv
    u = drinfeld_elem if drinfeld_elem is not None else dd.drinfeld_element()
    checks["square"] = dd.mul(v, v) == dd.mul(u, dd.antipode(u))
    passed = all(checks.values())
    if passed:
        logger.info("[Drinfeld] 带状元素校验通过")
    else:
        logger.warning(f"[Drinfeld] 带状元素校验失败: {[k for k, ok in checks.items() if not ok]}")
    return checks


def ribbon_search(dd: GenericDouble, candidates: Sequence[Tuple[str, Sequence[CycNumber], Elem]]) -> List[str]:
    """对每个类群元 G = ζ⋈a 检查 u G^{-1} 是否为带状元素，返回通过的标签"""
    u = dd.drinfeld_element()
    found = []
    for label, zeta, a in candidates:
        v = ribbon_element(dd, zeta, a, drinfeld_elem=u)
        if all(verify_ribbon(dd, v, drinfeld_elem=u, full_basis=False, grouplike_form=True).values()):
            found.append(label)
    logger.info(f"[Drinfeld] 类群元穷举: {len(candidates)} 个候选，{len(found)} 个带状")
    return found
