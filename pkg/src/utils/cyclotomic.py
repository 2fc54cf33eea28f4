"""
分圆域 ℚ(ζ_N) 精确算术

元素以幂基 1, ζ, …, ζ^{φ(N)-1} 下的有理系数向量表示，并按 Φ_N 约化，
因此相等判定就是系数向量相等。不同导子的元素参与运算时嵌入到 lcm 导子。
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational, cyclotomic_poly, divisors, symbols, totient
from sympy.ntheory import mobius

_X = symbols('x')

Rat = Union[int, Fraction]


def _norm(c: Rat) -> Rat:
    """整数值的 Fraction 统一成 int（int 运算更快，且 hash/== 与 Fraction 一致）"""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CyclotomicField:
    """
    分圆域 ℚ(ζ_N)

    Attributes:
        conductor: 导子 N
        degree: φ(N)
    """

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError(f"导子必须为正整数: {conductor}")
        self.conductor = conductor
        self.degree = int(totient(conductor))

        phi = Poly(cyclotomic_poly(conductor, _X), _X)
        # 升幂系数，首一
        self._phi: List[int] = [int(c) for c in reversed(phi.all_coeffs())]
        self._phi_poly = Poly(phi.all_coeffs(), _X, domain=QQ)

        # x^k 约化后的系数表，覆盖乘法中间次数与全部 N 次单位根
        size = max(conductor, 2 * self.degree - 1)
        d = self.degree
        table: List[Tuple[int, ...]] = []
        vec = [0] * d
        vec[0] = 1
        for _ in range(size):
            table.append(tuple(vec))
            top = vec[-1]
            shifted = [0] + vec[:-1]
            if top:
                for i in range(d):
                    shifted[i] -= top * self._phi[i]
            vec = shifted
        self._power_table = table

        self.zero = CycNumber(self, (0,) * d)
        self.one = CycNumber(self, table[0])
        self._roots = [CycNumber(self, table[k]) for k in range(conductor)]
        self._root_index: Dict[Tuple[Rat, ...], int] = {
            r.coeffs: k for k, r in enumerate(self._roots)
        }
        # Tr(ζ^k) / φ(N) = μ(m) / φ(m)，m = N / gcd(k, N)；与所在的域无关
        orders = [conductor // gcd(k, conductor) for k in range(d)]
        self._trace_weights: Tuple[Fraction, ...] = tuple(Fraction(int(mobius(m)), int(totient(m))) for m in orders)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.conductor})"

    def normalized_trace(self, coeffs: Sequence[Rat]) -> Fraction:
        """Tr(x) / φ(N)，即 x 全部共轭的平均"""
        return sum((Fraction(c) * w for c, w in zip(coeffs, self._trace_weights) if c), Fraction(0))

    # ==================== 构造 ====================

    def root(self, k: int) -> "CycNumber":
        """ζ_N^k（k 按 N 取模）"""
        return self._roots[k % self.conductor]

    def rational(self, value: Rat) -> "CycNumber":
        value = _norm(Fraction(value))
        return CycNumber(self, (value,) + (0,) * (self.degree - 1))

    def element(self, coeffs: Sequence[Rat]) -> "CycNumber":
        """由幂基系数构造；长度可以超过 φ(N)，会自动约化"""
        return CycNumber(self, self._reduce(list(coeffs)))

    # ==================== 内部运算 ====================

    def _reduce(self, poly: Sequence[Rat]) -> Tuple[Rat, ...]:
        d = self.degree
        res: List[Rat] = [0] * d
        for k, c in enumerate(poly):
            if not c:
                continue
            if k < d:
                res[k] += c
                continue
            row = self._power_table[k] if k < len(self._power_table) else self._power_of_x(k)
            for i in range(d):
                if row[i]:
                    res[i] += c * row[i]
        return tuple(_norm(c) for c in res)

    def _power_of_x(self, k: int) -> Tuple[int, ...]:
        return self._power_table[k % self.conductor]

    def _mul(self, a: Tuple[Rat, ...], b: Tuple[Rat, ...]) -> Tuple[Rat, ...]:
        d = self.degree
        prod: List[Rat] = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
        return self._reduce(prod)

    def _inverse(self, a: Tuple[Rat, ...]) -> Tuple[Rat, ...]:
        k = self._root_index.get(a)
        if k is not None:
            return self._roots[-k % self.conductor].coeffs
        neg = tuple(-c for c in a)
        k = self._root_index.get(neg)
        if k is not None:
            return tuple(-c for c in self._roots[-k % self.conductor].coeffs)
        poly = Poly([Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                     for c in reversed(a)], _X, domain=QQ)
        inv = poly.invert(self._phi_poly)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return self._reduce(coeffs)

    def root_exponent(self, x: "CycNumber") -> Optional[int]:
        """x = ζ_N^k 时返回 k，否则 None"""
        return self._root_index.get(x.coeffs)


@lru_cache(maxsize=None)
def cyclotomic_field(conductor: int) -> CyclotomicField:
    """按导子缓存的域实例（同一导子全局共享一份根表）"""
    return CyclotomicField(conductor)


class CycNumber:
    """ℚ(ζ_N) 中的元素，不可变"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: Tuple[Rat, ...]):
        self.field = field
        self.coeffs = coeffs

    @property
    def conductor(self) -> int:
        return self.field.conductor

    # ==================== 类型对齐 ====================

    def _align(self, other) -> Tuple[CyclotomicField, Tuple[Rat, ...], Tuple[Rat, ...]]:
        if isinstance(other, CycNumber):
            if other.field is self.field:
                return self.field, self.coeffs, other.coeffs
            m = _lcm(self.conductor, other.conductor)
            return cyclotomic_field(m), embed(self, m).coeffs, embed(other, m).coeffs
        if isinstance(other, (int, Fraction)):
            return self.field, self.coeffs, self.field.rational(other).coeffs
        return NotImplemented  # type: ignore[return-value]

    # ==================== 算术 ====================

    def __add__(self, other):
        aligned = self._align(other)
        if aligned is NotImplemented:
            return NotImplemented
        field, a, b = aligned
        return CycNumber(field, tuple(_norm(x + y) for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        aligned = self._align(other)
        if aligned is NotImplemented:
            return NotImplemented
        field, a, b = aligned
        return CycNumber(field, tuple(_norm(x - y) for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        aligned = self._align(other)
        if aligned is NotImplemented:
            return NotImplemented
        field, a, b = aligned
        return CycNumber(field, field._mul(a, b))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("分圆域中零元不可逆")
        return CycNumber(self.field, self.field._inverse(self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("分圆域中零元不可逆")
            inv = Fraction(1) / Fraction(other)
            return CycNumber(self.field, tuple(_norm(c * inv) for c in self.coeffs))
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "CycNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        k = self.field.root_exponent(self)
        if k is not None:
            return self.field.root(k * exponent)
        acc = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base
            exponent >>= 1
        return acc

    # ==================== 判定 ====================

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == self.field.one.coeffs

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        aligned = self._align(other)
        if aligned is NotImplemented:
            return NotImplemented
        _, a, b = aligned
        return a == b

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self) -> int:
        # 相等的元素在任何 ℚ(ζ_M) 中平均迹相同；有理数的平均迹就是自身
        return hash(self.field.normalized_trace(self.coeffs))

    def root_exponent(self) -> Optional[int]:
        """本元素为 ζ_N^k 时返回 k"""
        return self.field.root_exponent(self)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.conductor}" + (f"^{k}" if k > 1 else "")
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


# ==================== 模块级操作 ====================

def root_of_unity(k: int, conductor: int) -> CycNumber:
    """返回 ζ_N^k（已按 Φ_N 约化）"""
    if conductor < 1:
        raise ValueError(f"导子必须为正整数: {conductor}")
    return cyclotomic_field(conductor).root(k)


def embed(x: CycNumber, conductor: int) -> CycNumber:
    """把 ℚ(ζ_n) 中的元素嵌入 ℚ(ζ_M)，要求 n | M"""
    n = x.conductor
    if conductor == n:
        return x
    if conductor % n:
        raise ValueError(f"无法把导子 {n} 嵌入导子 {conductor}")
    target = cyclotomic_field(conductor)
    step = conductor // n
    poly: List[Rat] = [0] * conductor
    for k, c in enumerate(x.coeffs):
        if c:
            poly[(k * step) % conductor] += c
    return target.element(poly)


def multiplicative_order(x: CycNumber) -> Optional[int]:
    """
    乘法阶：最小的 d ≥ 1 使 x^d = 1；x 不是单位根（含 x = 0）时返回 None

    ℚ(ζ_N) 中的单位根都是 ±ζ_N^k，阶整除 lcm(2, N)。
    """
    if x.is_zero():
        return None
    n = x.conductor
    k = x.root_exponent()
    if k is not None:
        return n // gcd(k, n)
    for d in divisors(_lcm(2, n)):
        if (x ** d).is_one():
            return int(d)
    return None
