"""
积分、区分类群元、KR 对、SPiv、模性判定

H = 𝔅_q ⋊ K* 的类群元就是 K* 中的特征 χ = Σ_k χ(g_k) δ_k；
H 的代数特征由格点 j 参数化：ζ_j(x_A δ_i) = ε(x_A) δ_{i,j}。
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from loguru import logger

from src.models.schemas import EngineLimits
from src.services.hopf_core import Elem
from src.services.lattice_service import Bicharacter, Character, LatticeVec
from src.services.nichols_service import NicholsData
from src.services.smash_service import SmashAlgebra, SmashKey
from src.utils.cyclotomic import CycNumber
from src.utils.errors import ConventionError, CutoffExceededError
from src.utils.linalg import add_scaled


# ==================== 数据类型 ====================

@dataclass
class DistinguishedData:
    """g_H、α_H、左积分 Λ 与右余积分 λ"""

    g_h: Character
    i_ell: LatticeVec
    alpha_shift: LatticeVec
    integral: Elem
    integral_verified: bool
    cointegral_verified: Optional[bool] = None
    radford_s4: Optional[bool] = None

    @property
    def alpha_is_counit(self) -> bool:
        return not any(self.alpha_shift)


@dataclass(frozen=True)
class RibbonPair:
    """KR 对：ζ = ζ_j，a 为 K* 中的特征"""

    zeta: LatticeVec
    a: Character


@dataclass(frozen=True)
class Witness:
    """模性条件 (ii) 的见证 (j, a)"""

    j: LatticeVec
    a: LatticeVec
    strict: bool


@dataclass
class ModularityReport:
    verdict: str
    b_nondegenerate: Optional[bool] = None
    witnesses: List[Witness] = field(default_factory=list)
    reason: str = ""


# ==================== 泛函 ====================

def _alpha(dist_shift: LatticeVec, key: SmashKey) -> bool:
    w, k = key
    return not w and k == dist_shift


def zeta_values(H: SmashAlgebra, j: LatticeVec) -> List[CycNumber]:
    """ζ_j 在 H 基上的取值"""
    f = H.field
    return [f.one if (not w and k == j) else f.zero for w, k in H.basis]


# ==================== 积分 ====================

def integrals(H: SmashAlgebra, nichols: NicholsData, limits: Optional[EngineLimits] = None) -> DistinguishedData:
    """
    Λ = x_ℓ δ_{-i_ℓ}，λ(x_A δ_i) = [A = top]

    闭式 g_H = γ_{i_ℓ}、α_H(δ_k) = δ_{k,-i_ℓ}、α_H(x) = 0，并用乘法逐一验证：
    hΛ = ε(h)Λ、Λh = α_H(h)Λ（全部生成元）；dim H ≤ max_dim 时再验证 e^t λ = e^t(g_H) λ。
    """
    if not nichols.finite:
        raise CutoffExceededError(len(nichols.dims) - 1, nichols.dims)
    limits = limits or EngineLimits()
    group = H.group
    f = H.field
    i_ell = nichols.i_ell
    shift = group.neg(i_ell)
    top = nichols.top_word
    lam: Elem = {(top, shift): f.one}

    for label, h in H.generators():
        left = H.mul(h, lam)
        expected_left = {k: v * H.counit(h) for k, v in lam.items()} if not H.counit(h).is_zero() else {}
        if left != expected_left:
            raise ConventionError(f"Λ 不是左积分：{label}·Λ ≠ ε({label})Λ")
        alpha_h = f.zero
        for key, c in h.items():
            if _alpha(shift, key):
                alpha_h = alpha_h + c
        right = H.mul(lam, h)
        expected_right = {k: v * alpha_h for k, v in lam.items()} if not alpha_h.is_zero() else {}
        if right != expected_right:
            raise ConventionError(f"α_H 闭式与 Λ·{label} 不符")

    g_h = H.bichar.gamma(i_ell)
    dist = DistinguishedData(g_h=g_h, i_ell=i_ell, alpha_shift=shift, integral=lam, integral_verified=True)

    if H.dimension <= limits.max_dim:
        dist.cointegral_verified = _check_cointegral(H, top, g_h)
        if not dist.cointegral_verified:
            raise ConventionError("λ 不满足 e^t λ = e^t(g_H) λ")
    else:
        logger.warning(f"[Verifier] dim H = {H.dimension} 超过 {limits.max_dim}，跳过余积分验证")

    dist.radford_s4 = radford_s4_check(H, dist)
    logger.info(f"[Verifier] g_H = γ_{i_ell}，α_H 支撑于 δ_{shift}，Radford S⁴: {dist.radford_s4}")
    return dist


def _check_cointegral(H: SmashAlgebra, top, g_h: Character) -> bool:
    """(e^t λ)(h) = Σ e^t(h_1) λ(h_2) 应等于 e^t(g_H) λ(h)"""
    f = H.field
    for key in H.basis:
        lam_h = f.one if key[0] == top else f.zero
        acc: Dict[SmashKey, CycNumber] = {}
        for (h1, h2), c in H.coproduct_basis(key).items():
            if h2[0] == top:
                add_scaled(acc, {h1: c}, f.one)
        expected: Dict[SmashKey, CycNumber] = {}
        if not lam_h.is_zero():
            for k in H.group.elements:
                expected[((), k)] = f.root(g_h.exponent_at(k))
        if acc != expected:
            return False
    return True


def radford_s4_check(H: SmashAlgebra, dist: DistinguishedData) -> bool:
    """S⁴(h) = g_H (Σ α^{-1}(h_1) h_2 α(h_3)) g_H^{-1}，在生成元上检查"""
    f = H.field
    g = H.character_element(dist.g_h)
    g_inv = H.character_element(dist.g_h.inverse())
    for label, h in H.generators():
        s4 = H.antipode(H.antipode(H.antipode(H.antipode(h))))
        inner: Elem = {}
        for (h1, h2, h3), c in H.double_coproduct(h).items():
            if h1[0] or h3[0]:
                continue
            if h1[1] == dist.i_ell and h3[1] == dist.alpha_shift:
                add_scaled(inner, {h2: c}, f.one)
        if s4 != H.mul_many(g, inner, g_inv):
            logger.warning(f"[Verifier] Radford S⁴ 在 {label} 处不成立")
            return False
    return True


# ==================== KR 对与 SPiv ====================

def _s2_matches(H: SmashAlgebra, j: LatticeVec, a: Character,
                cache: Dict[str, Tuple[Elem, Dict]]) -> bool:
    """S²(h) = ζ^{-1}(h_1) a h_2 a^{-1} ζ(h_3)，在全部生成元上检查"""
    f = H.field
    group = H.group
    mj = group.neg(j)
    a_elem = H.character_element(a)
    a_inv = H.character_element(a.inverse())
    for label, h in H.generators():
        if label not in cache:
            cache[label] = (H.antipode(H.antipode(h)), H.double_coproduct(h))
        s2, delta2 = cache[label]
        middle: Elem = {}
        for (h1, h2, h3), c in delta2.items():
            if h1[0] or h3[0] or h1[1] != mj or h3[1] != j:
                continue
            add_scaled(middle, {h2: c}, f.one)
        if s2 != H.mul_many(a_elem, middle, a_inv):
            return False
    return True


def enumerate_kr_pairs(H: SmashAlgebra, dist: DistinguishedData) -> List[RibbonPair]:
    """穷举 (ζ_j, a)：ζ² = α_H、a² = g_H，并在生成元上验证 S² 公式"""
    group = H.group
    pairs: List[RibbonPair] = []
    cache: Dict = {}
    chars = H.bichar.characters()
    for j in group.elements:
        if group.scale(2, j) != dist.alpha_shift:
            continue
        for chi in chars:
            if chi.power(2) != dist.g_h:
                continue
            if _s2_matches(H, j, chi, cache):
                pairs.append(RibbonPair(zeta=j, a=chi))
    logger.info(f"[Verifier] KR 对 {len(pairs)} 个")
    return pairs


def spiv(H: SmashAlgebra, dist: DistinguishedData) -> List[Character]:
    """SPiv(H) = {a : a² = g_H，S²(h) = a h a^{-1}}"""
    zero = H.group.zero
    cache: Dict = {}
    result = [chi for chi in H.bichar.characters()
              if chi.power(2) == dist.g_h and _s2_matches(H, zero, chi, cache)]
    logger.info(f"[Verifier] SPiv 含 {len(result)} 个元素")
    return result


def spherical_verdict(dist: DistinguishedData, spiv_list: List[Character]) -> bool:
    return dist.alpha_is_counit and bool(spiv_list)


# ==================== 模性判据（格点扫描） ====================

def modularity_check(bichar: Bicharacter, nichols: Optional[NicholsData]) -> ModularityReport:
    """
    (i) b 非退化；(ii) 存在 (j, a) 使 2j = i_ℓ，且对每个生成元
    b(g_i, g_a)² = r(g_i, g_{i_ℓ})、r(g_j, g_i) b(g_i, g_a) = q_ii^{-1}
    """
    if nichols is None or not nichols.finite:
        return ModularityReport(verdict="undetermined", reason="Nichols 代数有限性未确定")
    group = bichar.group
    space = nichols.space
    n_exp = bichar.conductor
    i_ell = nichols.i_ell
    nondeg = bichar.is_nondegenerate()

    degrees = space.generator_degrees
    witnesses: List[Witness] = []
    for j in group.elements:
        if group.scale(2, j) != i_ell:
            continue
        for a in group.elements:
            ok = True
            for i, d in enumerate(degrees):
                b_ia = bichar.b_exp(d, a)
                if (2 * b_ia - bichar.r_exp(d, i_ell)) % n_exp:
                    ok = False
                    break
                if (bichar.r_exp(j, d) + b_ia + space.q_exp(i, i)) % n_exp:
                    ok = False
                    break
            if ok:
                witnesses.append(Witness(j=j, a=a, strict=group.scale(2, a) == i_ell))

    if not nondeg:
        report = ModularityReport(verdict="no", b_nondegenerate=False, witnesses=witnesses,
                                  reason="(i) fails: b 退化")
    elif not witnesses:
        report = ModularityReport(verdict="no", b_nondegenerate=True, reason="(ii) fails: 无 (j, a) 见证")
    else:
        report = ModularityReport(verdict="yes", b_nondegenerate=True, witnesses=witnesses,
                                  reason="(i) 与 (ii) 均成立")
    logger.info(f"[Verifier] 模性判定 {report.verdict}，见证 {len(witnesses)} 个")
    return report


def witness_to_pair(bichar: Bicharacter, witness: Witness) -> RibbonPair:
    """(j, a) ↦ (ζ_{-j}, k_a)"""
    return RibbonPair(zeta=bichar.group.neg(witness.j), a=bichar.k_elem(witness.a))


def radford_consistency(bichar: Bicharacter, nichols: NicholsData) -> bool:
    """r(g_{i_ℓ}, g_i) r(g_i, g_{i_ℓ}) = q_ii^{-2}"""
    if not nichols.finite:
        raise CutoffExceededError(len(nichols.dims) - 1, nichols.dims)
    space = nichols.space
    i_ell = nichols.i_ell
    n_exp = bichar.conductor
    return all(
        (bichar.b_exp(i_ell, d) + 2 * space.q_exp(i, i)) % n_exp == 0
        for i, d in enumerate(space.generator_degrees)
    )


def spherical_check_remark(bichar: Bicharacter, nichols: NicholsData) -> List[Tuple[LatticeVec, LatticeVec, Character]]:
    """i_ℓ = 0 时扫描 (b, c)：a = γ_b γ̄_c，a² = 1，r(g_i, g_b) r(g_c, g_i) = q_ii^{-1}"""
    if not nichols.finite:
        raise CutoffExceededError(len(nichols.dims) - 1, nichols.dims)
    group = bichar.group
    if nichols.i_ell != group.zero:
        return []
    space = nichols.space
    n_exp = bichar.conductor
    found = []
    for b in group.elements:
        gb = bichar.gamma(b)
        for c in group.elements:
            a = gb * bichar.gamma_bar(c)
            if not a.power(2).is_trivial():
                continue
            if all((bichar.r_exp(d, b) + bichar.r_exp(c, d) + space.q_exp(i, i)) % n_exp == 0
                   for i, d in enumerate(space.generator_degrees)):
                found.append((b, c, a))
    logger.info(f"[Verifier] 球面性扫描见证 {len(found)} 个")
    return found
