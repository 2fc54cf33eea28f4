"""
ℚ(ζ_N) 上的精确线性代数

稀疏向量用 dict 表示（键可以是任意可排序对象：词、格点、基下标），
零系数不存储。EchelonBasis 做增量消元，并记录每个主元行由哪些已插入向量组合而成，
Nichols 构造、Gram 逆和秩计算都基于它。
"""
from typing import Dict, Generic, Hashable, Iterable, List, Sequence, Tuple, TypeVar

from src.utils.cyclotomic import CycNumber, CyclotomicField
from src.utils.errors import SingularMatrixError

K = TypeVar("K", bound=Hashable)


def add_scaled(target: Dict, source: Dict, scale: CycNumber) -> None:
    """target += scale * source（原地，清除抵消为零的项）"""
    for key, value in source.items():
        term = value * scale
        current = target.get(key)
        if current is None:
            if not term.is_zero():
                target[key] = term
            continue
        total = current + term
        if total.is_zero():
            del target[key]
        else:
            target[key] = total


class EchelonBasis(Generic[K]):
    """
    增量行阶梯基

    插入顺序即优先顺序：第 t 个被判定为新的向量得到下标 t。
    每个主元行 = 残差 / 主元系数，并带有用原始插入向量表达的组合系数。
    约化时按插入顺序单遍扫描即可，因为第 k 行在前 k-1 个主元处已为零。
    """

    def __init__(self, field: CyclotomicField):
        self.field = field
        self._rows: List[Tuple[K, Dict[K, CycNumber], Dict[int, CycNumber]]] = []
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def reduce(self, vec: Dict[K, CycNumber]) -> Tuple[Dict[K, CycNumber], Dict[int, CycNumber]]:
        """
        约化向量

        Returns:
            (残差, 组合)，满足 vec = 残差 + Σ 组合[t] · v_t
        """
        residual = dict(vec)
        combo: Dict[int, CycNumber] = {}
        for pivot, row, row_combo in self._rows:
            coeff = residual.get(pivot)
            if coeff is None:
                continue
            add_scaled(residual, row, -coeff)
            add_scaled(combo, row_combo, coeff)
        return residual, combo

    def insert(self, vec: Dict[K, CycNumber]) -> Tuple[bool, Dict[int, CycNumber]]:
        """
        插入向量

        Returns:
            (True, {t: 1})：向量独立，获得新下标 t；
            (False, 组合)：向量可由已有向量表示，vec = Σ 组合[t] · v_t
        """
        residual, combo = self.reduce(vec)
        if not residual:
            return False, combo
        pivot = min(residual)
        inv = residual[pivot].inverse()
        row = {k: v * inv for k, v in residual.items()}
        t = self.size
        # 行 = (vec - Σ combo·v) / pivot  =>  以原始向量表示
        row_combo = {s: -c * inv for s, c in combo.items()}
        row_combo[t] = inv
        self._rows.append((pivot, row, row_combo))
        self.size += 1
        return True, {t: self.field.one}

    def contains(self, vec: Dict[K, CycNumber]) -> bool:
        residual, _ = self.reduce(vec)
        return not residual


def rank(rows: Iterable[Dict], field: CyclotomicField) -> int:
    """稀疏行集合的秩"""
    basis: EchelonBasis = EchelonBasis(field)
    for row in rows:
        basis.insert(row)
    return len(basis)


def inverse(matrix: Sequence[Sequence[CycNumber]], field: CyclotomicField) -> List[List[CycNumber]]:
    """Gauss-Jordan 求逆；奇异时抛出 SingularMatrixError"""
    n = len(matrix)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if pivot_row is None:
            raise SingularMatrixError(f"{n}×{n} 矩阵在第 {col} 列无主元")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor.is_zero():
                continue
            aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]

