"""
格 Λ = Z_{m1}×…×Z_{mn}、双特征 r、对称形式 b 与 K* 中的群元

约定：
    q_ij = ζ_N^{e_ij}
    r(g_i, g_j) = Π_{s,t} q_ts^{i_s j_t}，即 r(g_s, g_t) = q_ts
    b(g_i, g_j) = r(g_i, g_j) r(g_j, g_i)
    γ_i(g_j) = r(g_j, g_i)，γ̄_i(g_j) = r(g_i, g_j)，k_i = γ_i γ̄_i
所有单位根都以 ζ_N 的指数（整数 mod N）在内部传递，只在对外接口处转成 CycNumber。
"""
import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import List, Sequence, Tuple

from loguru import logger
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from src.utils.cyclotomic import CycNumber, CyclotomicField, cyclotomic_field
from src.utils.errors import InputValidationError

LatticeVec = Tuple[int, ...]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ==================== 群 ====================

@dataclass(frozen=True)
class GroupData:
    """有限阿贝尔群 Λ = Z_{m1}×…×Z_{mn}"""

    orders: Tuple[int, ...]

    def __post_init__(self):
        if len(self.orders) < 1:
            raise InputValidationError("group.orders", "至少需要一个循环因子 (n ≥ 1)")
        for s, m in enumerate(self.orders):
            if not isinstance(m, int) or m < 1:
                raise InputValidationError(f"group.orders[{s}]", f"阶必须为正整数，实际为 {m!r}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        total = 1
        for m in self.orders:
            total *= m
        return total

    @property
    def zero(self) -> LatticeVec:
        return (0,) * self.rank

    @cached_property
    def elements(self) -> List[LatticeVec]:
        """字典序枚举全部元素"""
        return list(itertools.product(*(range(m) for m in self.orders)))

    def unit(self, s: int) -> LatticeVec:
        return self.reduce(tuple(1 if t == s else 0 for t in range(self.rank)))

    def reduce(self, vec: Sequence[int]) -> LatticeVec:
        if len(vec) != self.rank:
            raise InputValidationError("lattice", f"格向量长度 {len(vec)} 与秩 {self.rank} 不符")
        return tuple(v % m for v, m in zip(vec, self.orders))

    def add(self, a: LatticeVec, b: LatticeVec) -> LatticeVec:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.orders))

    def sub(self, a: LatticeVec, b: LatticeVec) -> LatticeVec:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.orders))

    def neg(self, a: LatticeVec) -> LatticeVec:
        return tuple((-x) % m for x, m in zip(a, self.orders))

    def scale(self, k: int, a: LatticeVec) -> LatticeVec:
        return tuple((k * x) % m for x, m in zip(a, self.orders))


# ==================== 特征 ====================

@dataclass(frozen=True)
class Character:
    """
    G 的特征，按取值向量存储：χ(g_s) = ζ_N^{exps[s]}

    这样退化的 r（⟨γ_i⟩ 是真子群）也能直接表示，不需要选取对偶群的同构。
    """

    conductor: int
    exps: Tuple[int, ...]

    def exponent_at(self, vec: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.exps, vec)) % self.conductor

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.conductor,
                         tuple((a + b) % self.conductor for a, b in zip(self.exps, other.exps)))

    def inverse(self) -> "Character":
        return Character(self.conductor, tuple((-a) % self.conductor for a in self.exps))

    def power(self, k: int) -> "Character":
        return Character(self.conductor, tuple((k * a) % self.conductor for a in self.exps))

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def as_pairs(self) -> List[List[int]]:
        """报告格式：每个取值写成 [指数, N]"""
        return [[e, self.conductor] for e in self.exps]


def characters(group: GroupData, conductor: int) -> List[Character]:
    """
    按指数向量字典序枚举 G 的全部 |Λ| 个特征：χ(g_s) = ζ_N^{c_s·N/m_s}
    """
    for m in group.orders:
        if conductor % m:
            raise InputValidationError("braiding.conductor", f"导子 {conductor} 不能被群阶 {m} 整除")
    steps = [conductor // m for m in group.orders]
    return [Character(conductor, tuple(c * st for c, st in zip(cvec, steps)))
            for cvec in group.elements]


# ==================== 双特征 ====================

@dataclass(frozen=True)
class Bicharacter:
    """
    编织矩阵 q 及其导出的 r、b

    exponents[i][j] 是 q_ij 在 ζ_N 下的指数，N 为最小公共导子。
    """

    group: GroupData
    conductor: int
    exponents: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_exponents(cls, orders: Sequence[int], conductor: int,
                       exponents: Sequence[Sequence[int]]) -> "Bicharacter":
        """
        由输入的指数矩阵构造并校验

        输入 q_ij = ζ_{N_in}^{e_ij}；会换算到会话导子 N = lcm(m_i, q_ij 的阶)。
        良定义条件 q_ji^{m_i} = q_ji^{m_j} = 1 不满足时直接拒绝，不做静默约化。
        """
        group = GroupData(tuple(int(m) for m in orders))
        n = group.rank
        if conductor < 1:
            raise InputValidationError("braiding.conductor", f"导子必须为正整数，实际为 {conductor}")
        if len(exponents) != n or any(len(row) != n for row in exponents):
            raise InputValidationError("braiding.exponents", f"指数矩阵必须为 {n}×{n}")

        reduced = [[int(e) % conductor for e in row] for row in exponents]
        for i in range(n):
            for j in range(n):
                e = reduced[j][i]
                for s in (i, j):
                    if (e * group.orders[s]) % conductor:
                        raise InputValidationError(
                            f"braiding.exponents[{j}][{i}]",
                            f"q_{j + 1}{i + 1}^{group.orders[s]} ≠ 1（双特征在 G×G 上不良定义）"
                        )

        # 会话导子
        session = 1
        for m in group.orders:
            session = _lcm(session, m)
        for row in reduced:
            for e in row:
                session = _lcm(session, conductor // gcd(e, conductor))

        converted = []
        for row in reduced:
            new_row = []
            for e in row:
                g = gcd(e, conductor)
                order = conductor // g
                # ζ_{N_in}^e 是 order 阶本原根 ζ_order^{e/g}
                new_row.append(((e // g) * (session // order)) % session)
            converted.append(tuple(new_row))

        logger.debug(f"[Lattice] 群阶 {group.orders}，输入导子 {conductor} → 会话导子 {session}")
        return cls(group, session, tuple(converted))

    # ==================== 基本量 ====================

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic_field(self.conductor)

    @property
    def qmat(self) -> List[List[CycNumber]]:
        f = self.field
        return [[f.root(e) for e in row] for row in self.exponents]

    def q_exp(self, i: int, j: int) -> int:
        return self.exponents[i][j]

    def r_exp(self, a: Sequence[int], b: Sequence[int]) -> int:
        """r(g_a, g_b) 的指数：Σ_{s,t} e_ts a_s b_t"""
        n = self.rank
        total = 0
        for s in range(n):
            if not a[s]:
                continue
            for t in range(n):
                if b[t]:
                    total += self.exponents[t][s] * a[s] * b[t]
        return total % self.conductor

    def b_exp(self, a: Sequence[int], b: Sequence[int]) -> int:
        return (self.r_exp(a, b) + self.r_exp(b, a)) % self.conductor

    # ==================== 对外运算 ====================

    def r_eval(self, a: Sequence[int], b: Sequence[int]) -> CycNumber:
        return self.field.root(self.r_exp(a, b))

    def b_eval(self, a: Sequence[int], b: Sequence[int]) -> CycNumber:
        """b(g_a, g_b) = r(g_a, g_b) r(g_b, g_a)"""
        return self.field.root(self.b_exp(a, b))

    def gamma(self, a: Sequence[int]) -> Character:
        """γ_a(g_j) = r(g_j, g_a)"""
        return Character(self.conductor,
                         tuple(self.r_exp(self.group.unit(j), a) for j in range(self.rank)))

    def gamma_bar(self, a: Sequence[int]) -> Character:
        """γ̄_a(g_j) = r(g_a, g_j)"""
        return Character(self.conductor,
                         tuple(self.r_exp(a, self.group.unit(j)) for j in range(self.rank)))

    def k_elem(self, a: Sequence[int]) -> Character:
        """k_a = γ_a γ̄_a，k_a(g_j) = b(g_j, g_a)"""
        return Character(self.conductor,
                         tuple(self.b_exp(self.group.unit(j), a) for j in range(self.rank)))

    def characters(self) -> List[Character]:
        return characters(self.group, self.conductor)

    # ==================== b 的根基 ====================

    def b_radical(self) -> List[LatticeVec]:
        """穷举扫描 b 的根基，返回贪心选出的生成元（字典序）"""
        group = self.group
        radical = [v for v in group.elements
                   if all(self.b_exp(v, group.unit(j)) == 0 for j in range(self.rank))]
        generators: List[LatticeVec] = []
        span = {group.zero}
        for v in radical:
            if v in span:
                continue
            generators.append(v)
            span = _closure(group, span, v)
        return generators

    def b_radical_size(self) -> int:
        group = self.group
        return sum(1 for v in group.elements
                   if all(self.b_exp(v, group.unit(j)) == 0 for j in range(self.rank)))

    def b_radical_size_smith(self) -> int:
        """
        用 Smith 标准形计算 |rad b|

        b 的指数矩阵 β = e + eᵀ 定义同态 Λ → Z_N^n，v ↦ βv，
        像的阶 = Π N/gcd(N, d_k)（d_k 为 SNF 对角元），核的阶 = |Λ| / |像|。
        """
        n = self.rank
        beta = [[self.exponents[s][t] + self.exponents[t][s] for t in range(n)] for s in range(n)]
        # 良定义保证关系 m_s e_s 映到 0，所以 Λ 的像等于 Z^n 的像
        return self.group.size // _image_size(beta, self.conductor)

    def is_nondegenerate(self) -> bool:
        return self.b_radical_size() == 1


def _closure(group: GroupData, span: set, v: LatticeVec) -> set:
    result = set(span)
    frontier = list(span)
    cur = v
    multiples = []
    while cur not in (group.zero,) and cur not in multiples:
        multiples.append(cur)
        cur = group.add(cur, v)
    for w in frontier:
        for m in multiples:
            result.add(group.add(w, m))
    return result


def _image_size(matrix: List[List[int]], modulus: int) -> int:
    """整数矩阵 A 定义的映射 Z^n → Z_N^n 的像的阶"""
    snf = smith_normal_form(Matrix(matrix), domain=ZZ)
    size = 1
    n = len(matrix)
    for k in range(n):
        d = int(snf[k, k]) if k < min(snf.shape) else 0
        size *= modulus // gcd(modulus, abs(d))
    return size
