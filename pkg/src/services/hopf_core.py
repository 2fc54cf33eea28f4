"""
有限维 Hopf 代数的公共骨架与公理检查

元素用稀疏 dict（基键 → CycNumber）表示，张量用键元组作为 dict 的键。
辫子 Drinfeld 偶、smash 积 H 与 Drin(H) 都继承 FiniteHopfAlgebra，
只需给出基、基上的乘法 / 余乘 / 余单位 / 对极与生成元，其余运算和检查在这里统一完成。
"""
import random
from abc import ABC, abstractmethod
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from src.models.schemas import AxiomSummary, EngineLimits
from src.utils.cyclotomic import CycNumber, CyclotomicField
from src.utils.errors import BoundExceededError, ConventionError
from src.utils.linalg import add_scaled, rank

Key = Hashable
Elem = Dict[Key, CycNumber]
Tensor = Dict[Tuple[Key, ...], CycNumber]


class FiniteHopfAlgebra(ABC):
    """有限维 Hopf 代数，结构映射在基上给出并缓存"""

    name: str = "hopf"

    def __init__(self, field: CyclotomicField):
        self.field = field
        self._mul_cache: Dict[Tuple[Key, Key], Elem] = {}
        self._coproduct_cache: Dict[Key, Tensor] = {}
        self._antipode_cache: Dict[Key, Elem] = {}

    # ==================== 子类接口 ====================

    @property
    @abstractmethod
    def basis(self) -> List[Key]:
        ...

    @abstractmethod
    def _mul_basis(self, a: Key, b: Key) -> Elem:
        ...

    @abstractmethod
    def unit(self) -> Elem:
        ...

    @abstractmethod
    def _coproduct_basis(self, a: Key) -> Tensor:
        ...

    @abstractmethod
    def counit_basis(self, a: Key) -> CycNumber:
        ...

    @abstractmethod
    def _antipode_basis(self, a: Key) -> Elem:
        ...

    @abstractmethod
    def generators(self) -> List[Tuple[str, Elem]]:
        """代数生成元（带可读标签）"""
        ...

    def r_matrix(self) -> Optional[Tensor]:
        return None

    # ==================== 基上运算（缓存） ====================

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element(self, key: Key) -> Elem:
        return {key: self.field.one}

    def mul_basis(self, a: Key, b: Key) -> Elem:
        cached = self._mul_cache.get((a, b))
        if cached is None:
            cached = self._mul_basis(a, b)
            self._mul_cache[(a, b)] = cached
        return cached

    def coproduct_basis(self, a: Key) -> Tensor:
        cached = self._coproduct_cache.get(a)
        if cached is None:
            cached = self._coproduct_basis(a)
            self._coproduct_cache[a] = cached
        return cached

    def antipode_basis(self, a: Key) -> Elem:
        cached = self._antipode_cache.get(a)
        if cached is None:
            cached = self._antipode_basis(a)
            self._antipode_cache[a] = cached
        return cached

    # ==================== 线性扩张 ====================

    def mul(self, u: Elem, v: Elem) -> Elem:
        out: Elem = {}
        for a, c in u.items():
            for b, d in v.items():
                prod = self.mul_basis(a, b)
                if prod:
                    add_scaled(out, prod, c * d)
        return out

    def mul_many(self, *factors: Elem) -> Elem:
        acc = factors[0]
        for factor in factors[1:]:
            acc = self.mul(acc, factor)
        return acc

    def coproduct(self, u: Elem) -> Tensor:
        out: Tensor = {}
        for a, c in u.items():
            add_scaled(out, self.coproduct_basis(a), c)
        return out

    def counit(self, u: Elem) -> CycNumber:
        acc = self.field.zero
        for a, c in u.items():
            e = self.counit_basis(a)
            if not e.is_zero():
                acc = acc + c * e
        return acc

    def antipode(self, u: Elem) -> Elem:
        out: Elem = {}
        for a, c in u.items():
            add_scaled(out, self.antipode_basis(a), c)
        return out

    def tensor_mul(self, t: Tensor, s: Tensor) -> Tensor:
        """张量积代数中的乘法（各分量逐位相乘）"""
        out: Tensor = {}
        for ks, c in t.items():
            for ls, d in s.items():
                coeff = c * d
                partial: List[Tuple[Tuple[Key, ...], CycNumber]] = [((), coeff)]
                for a, b in zip(ks, ls):
                    prod = self.mul_basis(a, b)
                    if not prod:
                        partial = []
                        break
                    partial = [(prefix + (k,), pc * v) for prefix, pc in partial for k, v in prod.items()]
                for key, v in partial:
                    add_scaled(out, {key: v}, self.field.one)
        return out

    def tensor_unit(self, arity: int) -> Tensor:
        out: Tensor = {(): self.field.one}
        unit = self.unit()
        for _ in range(arity):
            out = {prefix + (k,): c * v for prefix, c in out.items() for k, v in unit.items()}
        return out


def flip(t: Tensor) -> Tensor:
    return {(b, a): c for (a, b), c in t.items()}


class DoubleElement:
    """
    代数元素的轻量包装，支持 + - * 与结构映射

    内部仍是稀疏 dict；等式比较按系数逐项进行。
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FiniteHopfAlgebra, terms: Elem):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def _coerce(self, other) -> Elem:
        if isinstance(other, DoubleElement):
            return other.terms
        if isinstance(other, (int, CycNumber)):
            f = self.algebra.field
            scalar = other if isinstance(other, CycNumber) else f.rational(other)
            return {k: v * scalar for k, v in self.algebra.unit().items()}
        raise TypeError(f"无法与 {type(other).__name__} 运算")

    def __add__(self, other) -> "DoubleElement":
        out = dict(self.terms)
        add_scaled(out, self._coerce(other), self.algebra.field.one)
        return DoubleElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "DoubleElement":
        return DoubleElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "DoubleElement":
        out = dict(self.terms)
        add_scaled(out, self._coerce(other), -self.algebra.field.one)
        return DoubleElement(self.algebra, out)

    def __mul__(self, other) -> "DoubleElement":
        if isinstance(other, DoubleElement):
            return DoubleElement(self.algebra, self.algebra.mul(self.terms, other.terms))
        if isinstance(other, (int, CycNumber)):
            scalar = other if isinstance(other, CycNumber) else self.algebra.field.rational(other)
            return DoubleElement(self.algebra, {k: v * scalar for k, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> "DoubleElement":
        if isinstance(other, (int, CycNumber)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, DoubleElement):
            return self.terms == other.terms
        if isinstance(other, (int, CycNumber)):
            return not (self - other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coproduct(self) -> Tensor:
        return self.algebra.coproduct(self.terms)

    def counit(self) -> CycNumber:
        return self.algebra.counit(self.terms)

    def antipode(self) -> "DoubleElement":
        return DoubleElement(self.algebra, self.algebra.antipode(self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({v})·{k}" for k, v in sorted(self.terms.items(), key=lambda kv: repr(kv[0])))


# ==================== 公理检查 ====================

class _Recorder:
    """累计检查结果，失败时记录第一个出错的基元素"""

    def __init__(self, summary: AxiomSummary):
        self.summary = summary

    def record(self, check: str, ok: bool, where: str = "") -> bool:
        previous = self.summary.checks.get(check, True)
        self.summary.checks[check] = previous and ok
        if not ok and previous:
            self.summary.failures.append(f"{check}: {where}")
            logger.error(f"[Hopf] {self.summary.algebra} 公理 {check} 在 {where} 处失败")
        return ok


def _coassoc_left(alg: FiniteHopfAlgebra, t: Tensor) -> Tensor:
    out: Tensor = {}
    for (a, b), c in t.items():
        for (a1, a2), d in alg.coproduct_basis(a).items():
            add_scaled(out, {(a1, a2, b): d}, c)
    return out


def _coassoc_right(alg: FiniteHopfAlgebra, t: Tensor) -> Tensor:
    out: Tensor = {}
    for (a, b), c in t.items():
        for (b1, b2), d in alg.coproduct_basis(b).items():
            add_scaled(out, {(a, b1, b2): d}, c)
    return out


def _counit_left(alg: FiniteHopfAlgebra, t: Tensor) -> Elem:
    out: Elem = {}
    for (a, b), c in t.items():
        e = alg.counit_basis(a)
        if not e.is_zero():
            add_scaled(out, {b: c}, e)
    return out


def _counit_right(alg: FiniteHopfAlgebra, t: Tensor) -> Elem:
    out: Elem = {}
    for (a, b), c in t.items():
        e = alg.counit_basis(b)
        if not e.is_zero():
            add_scaled(out, {a: c}, e)
    return out


def _antipode_left(alg: FiniteHopfAlgebra, t: Tensor) -> Elem:
    out: Elem = {}
    for (a, b), c in t.items():
        add_scaled(out, alg.mul(alg.antipode_basis(a), alg.element(b)), c)
    return out


def _antipode_right(alg: FiniteHopfAlgebra, t: Tensor) -> Elem:
    out: Elem = {}
    for (a, b), c in t.items():
        add_scaled(out, alg.mul(alg.element(a), alg.antipode_basis(b)), c)
    return out


def _scaled_unit(alg: FiniteHopfAlgebra, scalar: CycNumber) -> Elem:
    if scalar.is_zero():
        return {}
    return {k: v * scalar for k, v in alg.unit().items()}


def _sample_triples(keys: Sequence[Key], size: int, seed: int) -> Iterable[Tuple[Key, Key, Key]]:
    rng = random.Random(seed)
    for _ in range(size):
        yield rng.choice(keys), rng.choice(keys), rng.choice(keys)


def verify_hopf(alg: FiniteHopfAlgebra, mode: str = "generators",
                limits: Optional[EngineLimits] = None) -> AxiomSummary:
    """
    Hopf 代数公理检查

    generators 层：结构映射都是（反）代数映射，在生成元上检查余结合、余单位、对极公理，
    在生成元对上检查 Δ、ε 可乘与 S 反可乘；结合律在 dim ≤ associativity_bound 时检查全部三元组，
    否则抽样。exhaustive 层另外在每个基元素上检查余结合、余单位与对极公理。
    """
    limits = limits or EngineLimits()
    dim = alg.dimension
    if mode == "exhaustive" and dim > limits.max_dim:
        raise BoundExceededError("exhaustive axioms", dim, limits.max_dim)

    summary = AxiomSummary(algebra=alg.name, mode=mode, dimension=dim)
    rec = _Recorder(summary)
    basis = alg.basis
    one = alg.field.one
    unit = alg.unit()
    gens = alg.generators()

    # 单位元
    for key in basis:
        elem = alg.element(key)
        rec.record("unit", alg.mul(unit, elem) == elem and alg.mul(elem, unit) == elem, repr(key))
    rec.record("counit_unit", alg.counit(unit) == one, "1")

    # 结合律
    if dim <= limits.associativity_bound:
        triples: Iterable = ((a, b, c) for a in basis for b in basis for c in basis)
    else:
        triples = _sample_triples(basis, limits.sample_size, limits.seed)
        summary.skipped.append(f"associativity: 抽样 {limits.sample_size} 组")
    for a, b, c in triples:
        left = alg.mul(alg.mul_basis(a, b), alg.element(c))
        right = alg.mul(alg.element(a), alg.mul_basis(b, c))
        if not rec.record("associativity", left == right, f"({a!r}, {b!r}, {c!r})"):
            break

    # 生成元上的余代数与对极公理
    targets: List[Tuple[str, Elem]] = list(gens)
    if mode == "exhaustive":
        targets = [(repr(k), alg.element(k)) for k in basis]
    for label, h in targets:
        delta = alg.coproduct(h)
        rec.record("coassociativity", _coassoc_left(alg, delta) == _coassoc_right(alg, delta), label)
        rec.record("counit", _counit_left(alg, delta) == h and _counit_right(alg, delta) == h, label)
        expected = _scaled_unit(alg, alg.counit(h))
        rec.record("antipode", _antipode_left(alg, delta) == expected
                   and _antipode_right(alg, delta) == expected, label)

    # 结构映射的可乘性
    for la, ga in gens:
        for lb, gb in gens:
            where = f"{la}·{lb}"
            prod = alg.mul(ga, gb)
            rec.record("coproduct_multiplicative",
                       alg.coproduct(prod) == alg.tensor_mul(alg.coproduct(ga), alg.coproduct(gb)), where)
            rec.record("counit_multiplicative", alg.counit(prod) == alg.counit(ga) * alg.counit(gb), where)
            rec.record("antipode_antimultiplicative",
                       alg.antipode(prod) == alg.mul(alg.antipode(gb), alg.antipode(ga)), where)

    logger.info(f"[Hopf] {alg.name} (dim {dim}, {mode}) 公理检查: "
                f"{'通过' if summary.passed else '失败 ' + '; '.join(summary.failures)}")
    return summary


def _terms(r: Tensor) -> List[Tuple[Key, Key, CycNumber]]:
    return [(a, b, c) for (a, b), c in r.items()]


def _triple_product(alg: FiniteHopfAlgebra, slots: Sequence[Sequence[Tuple[Key, ...]]],
                    coeff: CycNumber, out: Tensor) -> None:
    """out += coeff · (Π slots[0]) ⊗ (Π slots[1]) ⊗ (Π slots[2])，每个槽位是基键的乘积序列"""
    pieces: List[Elem] = []
    for factors in slots:
        acc: Elem = alg.element(factors[0])
        for k in factors[1:]:
            acc = alg.mul(acc, alg.element(k))
            if not acc:
                return
        pieces.append(acc)
    partial: List[Tuple[Tuple[Key, ...], CycNumber]] = [((), coeff)]
    for piece in pieces:
        partial = [(prefix + (k,), pc * v) for prefix, pc in partial for k, v in piece.items()]
    for key, v in partial:
        add_scaled(out, {key: v}, alg.field.one)


def verify_quasitriangular(alg: FiniteHopfAlgebra, mode: str = "generators",
                           limits: Optional[EngineLimits] = None) -> AxiomSummary:
    """
    拟三角性检查：Δ^op(h) R = R Δ(h)，(Δ⊗id)R = R13 R23，(id⊗Δ)R = R13 R12，
    R 可逆（逆为 (S⊗id)R），以及 dim ≤ qybe_bound 时的 QYBE
    """
    limits = limits or EngineLimits()
    dim = alg.dimension
    if mode == "exhaustive" and dim > limits.max_dim:
        raise BoundExceededError("exhaustive axioms", dim, limits.max_dim)
    r = alg.r_matrix()
    summary = AxiomSummary(algebra=f"{alg.name}/R", mode=mode, dimension=dim)
    rec = _Recorder(summary)
    if r is None:
        rec.record("r_matrix", False, "未定义 R")
        return summary
    terms = _terms(r)

    targets: List[Tuple[str, Elem]] = list(alg.generators())
    if mode == "exhaustive":
        targets = [(repr(k), alg.element(k)) for k in alg.basis]
    for label, h in targets:
        delta = alg.coproduct(h)
        rec.record("almost_cocommutative", alg.tensor_mul(flip(delta), r) == alg.tensor_mul(r, delta), label)

    # (Δ⊗id)R = R13 R23 = Σ a_t ⊗ a_s ⊗ b_t b_s
    lhs: Tensor = {}
    for (a, b), c in r.items():
        for (a1, a2), d in alg.coproduct_basis(a).items():
            add_scaled(lhs, {(a1, a2, b): d}, c)
    rhs: Tensor = {}
    for a, b, c in terms:
        for a2, b2, c2 in terms:
            _triple_product(alg, ((a,), (a2,), (b, b2)), c * c2, rhs)
    rec.record("delta_left", lhs == rhs, "(Δ⊗id)R")

    # (id⊗Δ)R = R13 R12 = Σ a_t a_s ⊗ b_s ⊗ b_t
    lhs = {}
    for (a, b), c in r.items():
        for (b1, b2), d in alg.coproduct_basis(b).items():
            add_scaled(lhs, {(a, b1, b2): d}, c)
    rhs = {}
    for a, b, c in terms:
        for a2, b2, c2 in terms:
            _triple_product(alg, ((a, a2), (b2,), (b,)), c * c2, rhs)
    rec.record("delta_right", lhs == rhs, "(id⊗Δ)R")

    # R·(S⊗id)R = 1⊗1
    s_r: Tensor = {}
    for (a, b), c in r.items():
        for k, v in alg.antipode_basis(a).items():
            add_scaled(s_r, {(k, b): v}, c)
    rec.record("invertible", alg.tensor_mul(r, s_r) == alg.tensor_unit(2), "R·(S⊗id)R")

    if dim <= limits.qybe_bound:
        # R12 R13 R23 = Σ a_t a_s ⊗ b_t a_u ⊗ b_s b_u；R23 R13 R12 = Σ a_s a_t ⊗ a_u b_t ⊗ b_u b_s
        left: Tensor = {}
        right: Tensor = {}
        for at, bt, ct in terms:
            for as_, bs, cs in terms:
                for au, bu, cu in terms:
                    coeff = ct * cs * cu
                    _triple_product(alg, ((at, as_), (bt, au), (bs, bu)), coeff, left)
                    _triple_product(alg, ((as_, at), (au, bt), (bu, bs)), coeff, right)
        rec.record("qybe", left == right, "R12R13R23")
    else:
        summary.skipped.append(f"qybe: dim {dim} > {limits.qybe_bound}")
        logger.warning(f"[Hopf] {alg.name} 维数 {dim} 超过 QYBE 上限 {limits.qybe_bound}，跳过")

    logger.info(f"[Hopf] {alg.name} 拟三角检查: {'通过' if summary.passed else '失败'}")
    return summary


def drinfeld_map_rank(alg: FiniteHopfAlgebra, limits: Optional[EngineLimits] = None) -> int:
    """f ↦ (f⊗id)(R21 R) 的秩，即 R21 R 系数矩阵的秩"""
    limits = limits or EngineLimits()
    dim = alg.dimension
    if dim > limits.max_dim:
        raise BoundExceededError("drinfeld map", dim, limits.max_dim)
    r = alg.r_matrix()
    if r is None:
        raise ConventionError(f"{alg.name} 未定义 R 矩阵")
    q = alg.tensor_mul(flip(r), r)
    rows: Dict[Key, Elem] = {}
    for (a, b), c in q.items():
        rows.setdefault(a, {})[b] = c
    result = rank(rows.values(), alg.field)
    logger.info(f"[Hopf] {alg.name} Drinfeld 映射秩 {result} / {dim}")
    return result
