"""
内置预设：Taft、u_q(sl2)、Cartan 型 u_q(g)、超 A(1|1)

每个预设把符号 q 实例化为 ζ_N^k，编织矩阵存为指数矩阵，并附带期望值（带出处标记）。
"""
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

from loguru import logger

from src.services.lattice_service import Bicharacter
from src.services.nichols_service import RootDatum, pbw_hilbert_series
from src.utils.errors import InputValidationError

Provenance = Literal["published", "derived", "trivial"]

PRESET_NAMES = ("taft", "uqsl2", "cartan", "super-a11")


@dataclass(frozen=True)
class ExpectedValue:
    value: Any
    source: Provenance


@dataclass
class Preset:
    """预设：群、编织指数矩阵、可选正根与期望值"""

    name: str
    orders: Tuple[int, ...]
    conductor: int
    exponents: Tuple[Tuple[int, ...], ...]
    roots: Optional[RootDatum] = None
    expected: Dict[str, ExpectedValue] = field(default_factory=dict)

    def bicharacter(self) -> Bicharacter:
        return Bicharacter.from_exponents(self.orders, self.conductor, self.exponents)

    def expectations(self) -> Dict[str, Any]:
        return {k: v.value for k, v in self.expected.items()}

    def provenance(self) -> Dict[str, str]:
        return {k: v.source for k, v in self.expected.items()}


def _require(condition: bool, field_name: str, message: str) -> None:
    if not condition:
        raise InputValidationError(field_name, message)


# ==================== Taft 与 u_q(sl2) ====================

def _rank_one(n: int, k: int, label: str) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    _require(n >= 2, f"{label}.n", f"n 必须 ≥ 2，实际为 {n}")
    _require(gcd(k, n) == 1, f"{label}.q", f"q² = ζ_n^{k} 的阶必须为 n（要求 gcd(k, n) = 1）")
    conductor = 2 * n
    # q = ζ_{2n}^k，q_11 = q^{-2}
    return conductor, (((-2 * k) % conductor,),)


def preset_taft(n: int, k: int = 1) -> Preset:
    """Taft 代数 T_n(q^{-2})：Z_n 上秩 1，q_11 = q^{-2}"""
    conductor, exponents = _rank_one(n, k, "taft")
    preset = Preset(name=f"taft-{n}", orders=(n,), conductor=conductor, exponents=exponents,
                    roots=RootDatum(positive=((1,),), orders=(n,)))
    bichar = preset.bicharacter()
    odd = n % 2 == 1
    expected = {
        "hilbert_series": ExpectedValue([1] * n, "published"),
        "total_dim": ExpectedValue(n, "published"),
        "ell": ExpectedValue(n - 1, "published"),
        "i_ell": ExpectedValue([n - 1], "published"),
        "alpha_h_support": ExpectedValue([1 % n], "published"),
        "g_h": ExpectedValue(bichar.gamma((n - 1,)).as_pairs(), "published"),
        "kr_pair_count": ExpectedValue(1 if odd else 0, "published"),
        "spherical": ExpectedValue("no", "published"),
        "b_nondegenerate": ExpectedValue(odd, "derived"),
        "modularity": ExpectedValue("yes" if odd else "no", "derived"),
        "radford_consistent": ExpectedValue(True, "derived"),
        "double_dim": ExpectedValue(n ** 3, "derived"),
    }
    if odd:
        m = (n + 1) // 2
        a = bichar.gamma(((m * (n - 1)) % n,))
        expected["kr_pairs"] = ExpectedValue([{"zeta": [m % n], "a": a.as_pairs()}], "published")
    preset.expected = expected
    return preset


def preset_uqsl2(n: int, k: int = 1) -> Preset:
    """u_q(sl2)：与 Taft 同一编织，n 为 ≥ 3 的奇数"""
    _require(n >= 3 and n % 2 == 1, "uqsl2.n", f"n 必须为 ≥ 3 的奇数，实际为 {n}")
    preset = preset_taft(n, k)
    preset.name = f"uqsl2-{n}"
    preset.expected["modularity"] = ExpectedValue("yes", "published")
    preset.expected["double_dim"] = ExpectedValue(n ** 3, "derived")
    if n == 3:
        preset.expected["drinfeld_map_rank"] = ExpectedValue(27, "derived")
        preset.expected["generic_drinfeld_map_rank"] = ExpectedValue(81, "derived")
    return preset


# ==================== Cartan 型 ====================

def cartan_matrix_from_type(type_name: str) -> Tuple[List[List[int]], List[int]]:
    """A_n / B_n / C_n / D_n / G2 的 Cartan 矩阵与对称化向量"""
    name = type_name.strip().upper().replace("_", "")
    series, digits = name[:1], name[1:]
    _require(digits.isdigit(), "cartan", f"无法识别的 Cartan 类型: {type_name}")
    rank = int(digits)
    if series == "G":
        _require(rank == 2, "cartan", "G 型只有 G2")
        return [[2, -3], [-1, 2]], [1, 3]
    _require(series in "ABCD" and rank >= 1, "cartan", f"无法识别的 Cartan 类型: {type_name}")
    matrix = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)] for i in range(rank)]
    d = [1] * rank
    if series == "B":
        _require(rank >= 2, "cartan", "B 型要求秩 ≥ 2")
        matrix[rank - 1][rank - 2] = -2
        d = [2] * (rank - 1) + [1]
    elif series == "C":
        _require(rank >= 2, "cartan", "C 型要求秩 ≥ 2")
        matrix[rank - 2][rank - 1] = -2
        d = [1] * (rank - 1) + [2]
    elif series == "D":
        _require(rank >= 4, "cartan", "D 型要求秩 ≥ 4")
        matrix[rank - 1][rank - 2] = matrix[rank - 2][rank - 1] = 0
        matrix[rank - 1][rank - 3] = matrix[rank - 3][rank - 1] = -1
    return matrix, d


def validate_cartan(matrix: Sequence[Sequence[int]], d: Sequence[int]) -> None:
    n = len(matrix)
    _require(n >= 1 and all(len(row) == n for row in matrix), "cartan.matrix", "Cartan 矩阵必须为非空方阵")
    _require(len(d) == n and all(x >= 1 for x in d), "cartan.d", "对称化向量必须为正整数且长度与秩一致")
    for i in range(n):
        _require(matrix[i][i] == 2, f"cartan.matrix[{i}][{i}]", "对角元必须为 2")
        for j in range(n):
            if i == j:
                continue
            _require(matrix[i][j] <= 0, f"cartan.matrix[{i}][{j}]", "非对角元必须 ≤ 0")
            _require((matrix[i][j] == 0) == (matrix[j][i] == 0), f"cartan.matrix[{i}][{j}]",
                     "a_ij = 0 当且仅当 a_ji = 0")
            _require(d[i] * matrix[i][j] == d[j] * matrix[j][i], f"cartan.d",
                     f"d_{i + 1} a_{i + 1}{j + 1} ≠ d_{j + 1} a_{j + 1}{i + 1}")


def positive_roots(matrix: Sequence[Sequence[int]], limit: int = 512) -> List[Tuple[int, ...]]:
    """
    用根串逐高度生成正根：β + α_i 为根当且仅当 q_i > 0，
    其中 p_i 为 β - kα_i 仍为根的最大 k，q_i = p_i - ⟨β, α_i^∨⟩，⟨β, α_i^∨⟩ = Σ_j c_j a_ij
    """
    n = len(matrix)
    simple = [tuple(1 if t == s else 0 for t in range(n)) for s in range(n)]
    roots = list(simple)
    known = set(roots)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pairing = sum(beta[j] * matrix[i][j] for j in range(n))
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in known:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = tuple(beta[t] + (1 if t == i else 0) for t in range(n))
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        roots.extend(sorted(nxt))
        layer = nxt
        if len(roots) > limit:
            raise InputValidationError("cartan.matrix", "正根数目超出上限（矩阵不是有限型？）")
    return roots


def preset_cartan(matrix: Sequence[Sequence[int]], d: Sequence[int], l: int, k: int = 1,
                  name: str = "cartan") -> Preset:
    """Cartan 型：q_ij = q^{d_i a_ij}，q = ζ_l^k，群 (Z_l)^rank"""
    validate_cartan(matrix, d)
    _require(l >= 3 and l % 2 == 1, "cartan.l", f"l 必须为 ≥ 3 的奇数，实际为 {l}")
    if any(x == -3 for row in matrix for x in row):
        _require(l % 3 != 0, "cartan.l", "G2 型要求 l 与 3 互素")
    _require(gcd(k, l) == 1, "cartan.q", f"q = ζ_l^{k} 必须是 l 次本原根")
    for i, di in enumerate(d):
        _require(gcd(di, l) == 1, f"cartan.d[{i}]", f"d_{i + 1} = {di} 必须与 l 互素")

    n = len(matrix)
    exponents = tuple(tuple((k * d[i] * matrix[i][j]) % l for j in range(n)) for i in range(n))
    preset = Preset(name=name, orders=(l,) * n, conductor=l, exponents=exponents)
    bichar = preset.bicharacter()
    roots = positive_roots(matrix)
    orders = []
    for beta in roots:
        e = bichar.r_exp(beta, beta)
        orders.append(bichar.conductor // gcd(e, bichar.conductor))
    preset.roots = RootDatum(positive=tuple(roots), orders=tuple(orders))

    total = 1
    for m in orders:
        total *= m
    i_ell = [0] * n
    for beta, m in zip(roots, orders):
        for s in range(n):
            i_ell[s] += (m - 1) * beta[s]
    preset.expected = {
        "total_dim": ExpectedValue(total, "derived"),
        "hilbert_series": ExpectedValue(pbw_hilbert_series(preset.roots), "derived"),
        "i_ell": ExpectedValue([v % l for v in i_ell], "derived"),
        "b_nondegenerate": ExpectedValue(True, "derived"),
        "modularity": ExpectedValue("yes", "published"),
    }
    logger.debug(f"[Catalog] {name}: {len(roots)} 个正根，dim 𝔅 = {total}")
    return preset


def preset_cartan_type(type_name: str, l: int, k: int = 1) -> Preset:
    matrix, d = cartan_matrix_from_type(type_name)
    return preset_cartan(matrix, d, l, k, name=f"cartan-{type_name.upper()}-{l}")


# ==================== 超 A(1|1) ====================

def preset_super_a11(n: int, k: int = 1) -> Preset:
    """q_11 = q_22 = -1，q_12 = 1，q_21 = q（2n 次本原根），群 Z_{2n}×Z_{2n}"""
    _require(n >= 1 and n % 2 == 1, "super-a11.n", f"n 必须为正奇数，实际为 {n}")
    conductor = 2 * n
    _require(gcd(k, conductor) == 1, "super-a11.q", f"q = ζ_{conductor}^{k} 必须是 2n 次本原根")
    exponents = ((n, 0), (k % conductor, n))
    roots = RootDatum(positive=((1, 0), (0, 1), (1, 1)), orders=(2, 2, 2 * n))
    preset = Preset(name=f"super-a11-{n}", orders=(conductor, conductor), conductor=conductor,
                    exponents=exponents, roots=roots)
    bichar = preset.bicharacter()
    witnesses = [[[0, 0], [n, n]], [[n, 0], [0, 0]], [[0, n], [0, n]], [[n, n], [n, 0]]]
    preset.expected = {
        "total_dim": ExpectedValue(8 * n, "published"),
        "hilbert_series": ExpectedValue(pbw_hilbert_series(roots), "derived"),
        "ell": ExpectedValue(4 * n, "derived"),
        "i_ell": ExpectedValue([0, 0], "published"),
        "b_nondegenerate": ExpectedValue(True, "published"),
        "witnesses": ExpectedValue(witnesses, "derived"),
        "witness_count": ExpectedValue(4, "published"),
        "kr_pair_count": ExpectedValue(4, "derived"),
        "spiv": ExpectedValue([bichar.k_elem((n, n)).as_pairs()], "published"),
        "spherical": ExpectedValue("yes", "published"),
        "modularity": ExpectedValue("yes", "published"),
        "radford_consistent": ExpectedValue(True, "published"),
        "double_dim": ExpectedValue(64 * n * n * 4 * n * n, "derived"),
    }
    return preset


# ==================== 入口 ====================

def get_preset(name: str, n: Optional[int] = None, l: Optional[int] = None, k: int = 1,
               cartan: Optional[str] = None) -> Preset:
    """按 CLI 名称取预设"""
    key = name.strip().lower()
    if key == "taft":
        return preset_taft(n if n is not None else 3, k)
    if key == "uqsl2":
        return preset_uqsl2(n if n is not None else 3, k)
    if key == "super-a11":
        return preset_super_a11(n if n is not None else 1, k)
    if key == "cartan":
        return preset_cartan_type(cartan or "A2", l if l is not None else 5, k)
    raise InputValidationError("preset", f"未知预设 {name}，可选: {', '.join(PRESET_NAMES)}")
