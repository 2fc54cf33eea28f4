"""
对角型 Nichols 代数 𝔅_q 的逐次构造

x 侧：次数 d 的候选词为 s·x_j（s 取 d-1 次的截面词，按字典序），
用右斜导数 ∂^R_i 判定线性无关：u ∈ T(V)_d 在 𝔅 中为零当且仅当所有 ∂^R_i(u) 为零，
这与量子对称化子 S_d 的核相同。每个多重次数块维护一个 EchelonBasis，
截面词取字典序最早的独立词，自动前缀封闭；s·x_j 的投影（右乘矩阵 R_j）同时记录下来。

y 侧：对偶代数取 T(V*) 模去配对左核，截面同样取字典序最早的词。
配对约定 ⟨y_{I'} y_i, u⟩ = ⟨y_{I'}, ∂^L_i u⟩，等价于 ⟨y_I, x_J⟩ = [S_d(x_J)]_{reverse(I)}。
"""
import os
from itertools import product
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.services.lattice_service import Bicharacter, LatticeVec
from src.utils.cyclotomic import CycNumber, CyclotomicField
from src.utils.errors import BoundExceededError, ConventionError, CutoffExceededError, InputValidationError
from src.utils.linalg import EchelonBasis, add_scaled, inverse

Word = Tuple[int, ...]
Vec = Dict[Word, CycNumber]

DEFAULT_CUTOFF = int(os.getenv("NICHOLS_CUTOFF", "24"))
DEFAULT_SYMMETRIZER_WORDS = int(os.getenv("NICHOLS_SYMMETRIZER_WORDS", "4096"))
LOW_DEGREE_CHECK = 4


# ==================== 编织空间 ====================

@dataclass(frozen=True)
class BraidedDiagonalSpace:
    """
    对角编织向量空间 V = span{x_1..x_n}，x_k 的 G-次数为 generator_degrees[k]

    编织 c(x_k ⊗ x_l) = q'_kl x_l ⊗ x_k，q'_kl = r(g_{d_l}, g_{d_k})；
    取标准次数 e_1..e_n 时 q' = q。
    """

    bichar: Bicharacter
    generator_degrees: Tuple[LatticeVec, ...]

    @classmethod
    def standard(cls, bichar: Bicharacter) -> "BraidedDiagonalSpace":
        group = bichar.group
        return cls(bichar, tuple(group.unit(s) for s in range(group.rank)))

    @classmethod
    def with_degrees(cls, bichar: Bicharacter, degrees: Sequence[Sequence[int]]) -> "BraidedDiagonalSpace":
        group = bichar.group
        reduced = []
        for k, deg in enumerate(degrees):
            if len(deg) != group.rank:
                raise InputValidationError(f"generators.degrees[{k}]", f"长度必须为 {group.rank}")
            reduced.append(group.reduce(deg))
        return cls(bichar, tuple(reduced))

    @property
    def n(self) -> int:
        return len(self.generator_degrees)

    @property
    def field(self) -> CyclotomicField:
        return self.bichar.field

    def q_exp(self, k: int, l: int) -> int:
        return self.bichar.r_exp(self.generator_degrees[l], self.generator_degrees[k])

    def q(self, k: int, l: int) -> CycNumber:
        return self.field.root(self.q_exp(k, l))

    def chi_exp(self, mu: Sequence[int], i: int) -> int:
        """q(μ, i) = Π_s q'_{s i}^{μ_s} 的指数"""
        return sum(m * self.q_exp(s, i) for s, m in enumerate(mu) if m) % self.bichar.conductor

    def multidegree(self, word: Word) -> Tuple[int, ...]:
        counts = [0] * self.n
        for letter in word:
            counts[letter] += 1
        return tuple(counts)

    def degree_of(self, mu: Sequence[int]) -> LatticeVec:
        """Z^n 多重次数在 Λ 中的像"""
        group = self.bichar.group
        total = [0] * group.rank
        for k, m in enumerate(mu):
            if m:
                for s, v in enumerate(self.generator_degrees[k]):
                    total[s] += m * v
        return group.reduce(total)

    def word_degree(self, word: Word) -> LatticeVec:
        return self.degree_of(self.multidegree(word))


@dataclass(frozen=True)
class RootDatum:
    """正根（Z^n 中的整系数向量）及其高度 m_β"""

    positive: Tuple[Tuple[int, ...], ...]
    orders: Tuple[int, ...]

    def __post_init__(self):
        if len(self.positive) != len(self.orders):
            raise InputValidationError("roots.orders", "正根个数与阶的个数不一致")
        for k, m in enumerate(self.orders):
            if m < 1:
                raise InputValidationError(f"roots.orders[{k}]", f"阶必须为正整数，实际为 {m}")


# ==================== Nichols 数据 ====================

@dataclass
class NicholsData:
    """
    逐次构造结果

    sections[d] 为 d 次截面词（字典序），right_mult[(s, j)] 为 s·x_j 在截面下的坐标，
    left_deriv / right_deriv 为截面词的斜导数；有限时还带有 y 侧截面与 Gram 数据。
    """

    space: BraidedDiagonalSpace
    dims: List[int]
    sections: List[List[Word]]
    right_mult: Dict[Tuple[Word, int], Vec]
    right_deriv: Dict[Tuple[Word, int], Vec]
    left_deriv: Dict[Tuple[Word, int], Vec]
    finite: bool
    ell: Optional[int] = None
    top_word: Optional[Word] = None
    i_ell: Optional[LatticeVec] = None
    y_sections: List[List[Word]] = field(default_factory=list)
    y_right_mult: Dict[Tuple[Word, int], Vec] = field(default_factory=dict)
    pairing_rows: Dict[Word, Vec] = field(default_factory=dict)
    gram: Dict[int, List[List[CycNumber]]] = field(default_factory=dict)
    dual: Dict[Word, Vec] = field(default_factory=dict)
    _x_products: Dict[Tuple[Word, Word], Vec] = field(default_factory=dict, repr=False)
    _y_products: Dict[Tuple[Word, Word], Vec] = field(default_factory=dict, repr=False)

    @property
    def field(self) -> CyclotomicField:
        return self.space.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def basis(self) -> List[Word]:
        return [w for layer in self.sections for w in layer]

    @property
    def y_basis(self) -> List[Word]:
        return [w for layer in self.y_sections for w in layer]

    # ==================== x 侧运算 ====================

    def _fold(self, start: Vec, letters: Sequence[int], table: Dict[Tuple[Word, int], Vec]) -> Vec:
        current = start
        for j in letters:
            nxt: Vec = {}
            for s, c in current.items():
                image = table.get((s, j))
                if image:
                    add_scaled(nxt, image, c)
            current = nxt
            if not current:
                break
        return current

    def project(self, word: Sequence[int]) -> Vec:
        """任意词在截面基下的坐标"""
        if self.finite and len(word) > self.ell:
            return {}
        return self._fold({(): self.field.one}, word, self.right_mult)

    def multiply_sections(self, a: Word, b: Word) -> Vec:
        """x_a · x_b（两者均为截面词）"""
        key = (a, b)
        cached = self._x_products.get(key)
        if cached is None:
            cached = self._fold({a: self.field.one}, b, self.right_mult)
            self._x_products[key] = cached
        return cached

    def left_derivative(self, i: int, vec: Vec) -> Vec:
        out: Vec = {}
        for s, c in vec.items():
            image = self.left_deriv.get((s, i))
            if image:
                add_scaled(out, image, c)
        return out

    def right_derivative(self, i: int, vec: Vec) -> Vec:
        out: Vec = {}
        for s, c in vec.items():
            image = self.right_deriv.get((s, i))
            if image:
                add_scaled(out, image, c)
        return out

    # ==================== y 侧运算 ====================

    def y_multiply_sections(self, a: Word, b: Word) -> Vec:
        key = (a, b)
        cached = self._y_products.get(key)
        if cached is None:
            cached = self._fold({a: self.field.one}, b, self.y_right_mult)
            self._y_products[key] = cached
        return cached


# ==================== 量子对称化子 ====================

def quantum_symmetrizer(space: BraidedDiagonalSpace, d: int, cutoff: int = DEFAULT_CUTOFF,
                        max_words: int = DEFAULT_SYMMETRIZER_WORDS) -> Dict[Word, Vec]:
    """
    n^d 词基上的 S_d（按列：词 → 像）

    递推 S_d = (id ⊗ S_{d-1})·(1 + σ_1 + σ_1σ_2 + … + σ_1⋯σ_{d-1})：
    S_d(x_w) = Σ_p (Π_{t<p} q_{w_t w_p}) x_{w_p} ⊗ S_{d-1}(x_{w∖p})。
    """
    if d < 0:
        raise InputValidationError("degree", "次数不能为负")
    if d > cutoff:
        raise CutoffExceededError(cutoff)
    words_count = space.n ** d
    if words_count > max_words:
        raise BoundExceededError("symmetrizer words", words_count, max_words)

    f = space.field
    memo: Dict[Word, Vec] = {(): {(): f.one}}

    def image(word: Word) -> Vec:
        cached = memo.get(word)
        if cached is not None:
            return cached
        out: Vec = {}
        for p, letter in enumerate(word):
            exp = sum(space.q_exp(word[t], letter) for t in range(p))
            factor = f.root(exp)
            rest = image(word[:p] + word[p + 1:])
            for w, c in rest.items():
                add_scaled(out, {(letter,) + w: c}, factor)
        memo[word] = out
        return out

    return {w: image(w) for w in product(range(space.n), repeat=d)}


def symmetrizer_block_ranks(space: BraidedDiagonalSpace, d: int, **kwargs) -> Dict[Tuple[int, ...], int]:
    """S_d 在各多重次数块上的秩"""
    columns = quantum_symmetrizer(space, d, **kwargs)
    blocks: Dict[Tuple[int, ...], EchelonBasis] = {}
    for w, col in columns.items():
        mu = space.multidegree(w)
        blocks.setdefault(mu, EchelonBasis(space.field)).insert(col)
    return {mu: len(basis) for mu, basis in blocks.items()}


# ==================== 构造 ====================

def build_nichols(space: BraidedDiagonalSpace, cutoff: int = DEFAULT_CUTOFF) -> NicholsData:
    """
    逐次构造 𝔅_q，直到某一次数为零（有限）或达到截断次数

    Raises:
        CutoffExceededError: 截断次数内每一次数都非零
    """
    if cutoff < 1:
        raise InputValidationError("cutoff", "截断次数必须 ≥ 1")
    f = space.field
    n = space.n
    one = f.one

    sections: List[List[Word]] = [[()]]
    dims = [1]
    right_mult: Dict[Tuple[Word, int], Vec] = {}
    right_deriv: Dict[Tuple[Word, int], Vec] = {}
    left_deriv: Dict[Tuple[Word, int], Vec] = {}
    finite = False

    for d in range(1, cutoff + 1):
        blocks: Dict[Tuple[int, ...], EchelonBasis] = {}
        block_words: Dict[Tuple[int, ...], List[Word]] = {}
        layer: List[Word] = []

        for s in sections[d - 1]:
            mu_s = space.multidegree(s)
            for j in range(n):
                w = s + (j,)
                components: List[Vec] = []
                for i in range(n):
                    comp: Vec = {}
                    if i == j:
                        comp[s] = one
                    ds = right_deriv.get((s, i))
                    if ds:
                        q_ij = space.q(i, j)
                        for t, c in ds.items():
                            image = right_mult.get((t, j))
                            if image:
                                add_scaled(comp, image, c * q_ij)
                    components.append(comp)

                vec = {(i, t): c for i, comp in enumerate(components) for t, c in comp.items()}
                mu = space.multidegree(w)
                basis = blocks.setdefault(mu, EchelonBasis(f))
                is_new, combo = basis.insert(vec)
                if is_new:
                    block_words.setdefault(mu, []).append(w)
                    layer.append(w)
                    right_mult[(s, j)] = {w: one}
                    for i in range(n):
                        if components[i]:
                            right_deriv[(w, i)] = components[i]
                        # ∂^L_i(s x_j) = ∂^L_i(s) x_j + δ_ij q(deg s, j) s
                        lw: Vec = {}
                        ls = left_deriv.get((s, i))
                        if ls:
                            for t, c in ls.items():
                                image = right_mult.get((t, j))
                                if image:
                                    add_scaled(lw, image, c)
                        if i == j:
                            add_scaled(lw, {s: one}, f.root(space.chi_exp(mu_s, j)))
                        if lw:
                            left_deriv[(w, i)] = lw
                else:
                    words = block_words.get(mu, [])
                    right_mult[(s, j)] = {words[t]: c for t, c in combo.items()}

        logger.debug(f"[Nichols] 次数 {d}: dim = {len(layer)}")
        if not layer:
            finite = True
            break
        sections.append(layer)
        dims.append(len(layer))

    if not finite:
        logger.warning(f"[Nichols] 截断次数 {cutoff} 内未终止，Hilbert 级数前缀 {dims}")
        raise CutoffExceededError(cutoff, dims)

    ell = len(dims) - 1
    if dims[ell] != 1:
        raise ConventionError(f"顶次数 {ell} 的分量维数为 {dims[ell]}，应为 1")
    top_word = sections[ell][0]

    data = NicholsData(
        space=space,
        dims=dims,
        sections=sections,
        right_mult=right_mult,
        right_deriv=right_deriv,
        left_deriv=left_deriv,
        finite=True,
        ell=ell,
        top_word=top_word,
        i_ell=space.word_degree(top_word),
    )
    _build_dual(data)
    logger.info(f"[Nichols] 有限维：dim = {data.total_dim}，ℓ = {ell}，i_ℓ = {data.i_ell}")
    return data


def _build_dual(data: NicholsData) -> None:
    """y 侧截面、右乘表、Gram 矩阵与对偶基"""
    space = data.space
    f = space.field
    one = f.one
    n = space.n

    data.y_sections = [[()]]
    data.pairing_rows = {(): {(): one}}
    data.gram = {0: [[one]]}
    data.dual = {(): {(): one}}

    for d in range(1, data.ell + 1):
        by_mu: Dict[Tuple[int, ...], List[Word]] = {}
        for w in data.sections[d]:
            by_mu.setdefault(space.multidegree(w), []).append(w)

        blocks: Dict[Tuple[int, ...], EchelonBasis] = {}
        block_words: Dict[Tuple[int, ...], List[Word]] = {}
        layer: List[Word] = []
        for s in data.y_sections[d - 1]:
            row_s = data.pairing_rows[s]
            for i in range(n):
                w = s + (i,)
                mu = space.multidegree(w)
                # ⟨y_s y_i, x_J⟩ = ⟨y_s, ∂^L_i x_J⟩
                vec: Vec = {}
                for J in by_mu.get(mu, []):
                    acc = f.zero
                    for t, c in data.left_deriv.get((J, i), {}).items():
                        r = row_s.get(t)
                        if r is not None:
                            acc = acc + r * c
                    if not acc.is_zero():
                        vec[J] = acc
                basis = blocks.setdefault(mu, EchelonBasis(f))
                is_new, combo = basis.insert(vec)
                if is_new:
                    block_words.setdefault(mu, []).append(w)
                    layer.append(w)
                    data.pairing_rows[w] = vec
                    data.y_right_mult[(s, i)] = {w: one}
                else:
                    words = block_words.get(mu, [])
                    data.y_right_mult[(s, i)] = {words[t]: c for t, c in combo.items()}

        if len(layer) != data.dims[d]:
            raise ConventionError(f"次数 {d} 的配对退化：y 侧维数 {len(layer)} ≠ {data.dims[d]}")
        data.y_sections.append(layer)
        for s in layer:
            for i in range(n):
                data.y_right_mult.setdefault((s, i), {})

        # Gram 与对偶基（按多重次数分块求逆）
        data.gram[d] = [[data.pairing_rows[I].get(J, f.zero) for J in data.sections[d]] for I in layer]
        y_by_mu: Dict[Tuple[int, ...], List[Word]] = {}
        for w in layer:
            y_by_mu.setdefault(space.multidegree(w), []).append(w)
        for mu, xs in by_mu.items():
            ys = y_by_mu.get(mu, [])
            block = [[data.pairing_rows[I].get(J, f.zero) for J in xs] for I in ys]
            inv = inverse(block, f)
            for a, alpha in enumerate(xs):
                data.dual[alpha] = {ys[k]: c for k, c in enumerate(inv[a]) if not c.is_zero()}

    # 顶次数之上的 y 乘法全部为零
    for s in data.y_sections[data.ell]:
        for i in range(n):
            data.y_right_mult.setdefault((s, i), {})


# ==================== 配对与校验 ====================

def hopf_pairing(data: NicholsData, yword: Sequence[int], xword: Sequence[int]) -> CycNumber:
    """⟨y_word, x_word⟩，次数不同为 0"""
    f = data.field
    if len(yword) != len(xword):
        return f.zero
    vec = data.project(xword)
    for letter in reversed(yword):
        vec = data.left_derivative(letter, vec)
        if not vec:
            return f.zero
    return vec.get((), f.zero)


def dual_basis(data: NicholsData, d: int) -> Dict[Word, Vec]:
    """d 次对偶基：x 截面 α ↦ y_α（y 截面坐标），满足 ⟨y_α, x_β⟩ = δ_αβ"""
    if not data.finite or d > data.ell:
        return {}
    return {alpha: data.dual[alpha] for alpha in data.sections[d]}


def check_root_formula(data: NicholsData, roots: RootDatum) -> bool:
    """i_ℓ = Σ_β (m_β - 1) β（在 Λ 中比较）"""
    if not data.finite:
        raise CutoffExceededError(len(data.dims) - 1, data.dims)
    n = data.space.n
    total = [0] * n
    for beta, m in zip(roots.positive, roots.orders):
        if len(beta) != n:
            raise InputValidationError("roots.positive", f"正根长度必须为 {n}")
        for k, c in enumerate(beta):
            total[k] += (m - 1) * c
    return data.space.degree_of(total) == data.i_ell


def _dual_pairing_ok(data: NicholsData, d: int) -> bool:
    f = data.field
    for alpha, yvec in dual_basis(data, d).items():
        for beta in data.sections[d]:
            value = sum((c * hopf_pairing(data, ys, beta) for ys, c in yvec.items()), f.zero)
            if value != (f.one if alpha == beta else f.zero):
                return False
    return True


def check_low_degrees(data: NicholsData, max_words: int = DEFAULT_SYMMETRIZER_WORDS,
                      top: int = LOW_DEGREE_CHECK) -> List[int]:
    """
    低次数复核，返回不一致的次数

    d ≤ top 且 n^d ≤ max_words 时：S_d 的秩应等于导数构造得到的 dim 𝔅_d，
    对偶基与 x 截面的配对应为 δ_αβ。
    """
    if not data.finite:
        raise CutoffExceededError(len(data.dims) - 1, data.dims)
    n = data.space.n
    bad: List[int] = []
    for d in range(1, min(top, data.ell + 1) + 1):
        if n ** d > max_words:
            break
        expected = data.dims[d] if d < len(data.dims) else 0
        ranks = symmetrizer_block_ranks(data.space, d, cutoff=d, max_words=max_words)
        if sum(ranks.values()) != expected or not _dual_pairing_ok(data, d):
            bad.append(d)
    logger.debug(f"[Nichols] 低次数复核: 不一致次数 {bad}")
    return bad


def pbw_hilbert_series(roots: RootDatum) -> List[int]:
    """Π_β (1 + t^{|β|} + … + t^{(m_β-1)|β|})"""
    series = [1]
    for beta, m in zip(roots.positive, roots.orders):
        height = sum(beta)
        factor = [0] * ((m - 1) * height + 1)
        for k in range(m):
            factor[k * height] += 1
        merged = [0] * (len(series) + len(factor) - 1)
        for a, x in enumerate(series):
            if x:
                for b, y in enumerate(factor):
                    if y:
                        merged[a + b] += x * y
        series = merged
    return series
