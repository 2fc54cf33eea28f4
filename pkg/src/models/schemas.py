"""
数据模型定义 - 使用 Pydantic
"""
import os
from datetime import datetime
from typing import ClassVar, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

Verdict = Literal["yes", "no", "undetermined"]
CheckName = Literal["dims", "modularity", "ribbon", "axioms", "drinfeld"]
CharacterPairs = List[List[int]]

DEFAULT_CHECKS: List[str] = ["dims", "modularity", "ribbon", "axioms"]


# ==================== 配置相关 ====================

class EngineLimits(BaseModel):
    """计算规模上限（默认值读环境变量，可被输入文件 [limits] 与命令行覆盖）"""

    DEFAULT_CUTOFF: ClassVar[int] = int(os.getenv("NICHOLS_CUTOFF", "24"))
    DEFAULT_MAX_DIM: ClassVar[int] = int(os.getenv("NICHOLS_MAX_DIM", "512"))
    DEFAULT_GENERIC_MAX_DIM: ClassVar[int] = int(os.getenv("NICHOLS_GENERIC_MAX_DIM", "16"))
    DEFAULT_SYMMETRIZER_WORDS: ClassVar[int] = int(os.getenv("NICHOLS_SYMMETRIZER_WORDS", "4096"))

    cutoff: int = Field(default=DEFAULT_CUTOFF, ge=1, description="Nichols 构造截断次数")
    max_dim: int = Field(default=DEFAULT_MAX_DIM, ge=1, description="穷举校验的维数上限")
    generic_max_dim: int = Field(default=DEFAULT_GENERIC_MAX_DIM, ge=1, description="Drin(H) 中 dim H 的上限")
    symmetrizer_words: int = Field(default=DEFAULT_SYMMETRIZER_WORDS, ge=1, description="对称化子词数上限")
    associativity_bound: int = Field(default=64, ge=1, description="全部三元组检查结合律的维数上限")
    qybe_bound: int = Field(default=64, ge=1, description="检查 QYBE 的维数上限")
    sample_size: int = Field(default=200, ge=1, description="抽样检查的样本数")
    seed: int = Field(default=0, description="抽样随机种子")

    def merged(self, overrides: Dict[str, int]) -> "EngineLimits":
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return EngineLimits(**data)


class GroupSection(BaseModel):
    """[group] 段"""
    orders: List[int] = Field(description="循环因子阶 m_1..m_n")


class BraidingSection(BaseModel):
    """[braiding] 段：q_ij = ζ_N^{exponents[i][j]}"""
    conductor: int = Field(description="输入导子 N")
    exponents: List[List[int]] = Field(description="指数矩阵")


class RootsSection(BaseModel):
    """[roots] 段（可选）"""
    positive: List[List[int]] = Field(default_factory=list, description="正根")
    orders: List[int] = Field(default_factory=list, description="高度 m_β")


class GeneratorsSection(BaseModel):
    """[generators] 段（可选）：生成元的 G-次数"""
    degrees: List[List[int]] = Field(default_factory=list, description="生成元次数")


class InputSpec(BaseModel):
    """声明式输入文件"""
    name: str = Field(default="custom", description="输入名称")
    group: GroupSection
    braiding: BraidingSection
    roots: Optional[RootsSection] = Field(default=None, description="正根数据")
    generators: Optional[GeneratorsSection] = Field(default=None, description="生成元次数")
    checks: List[CheckName] = Field(default_factory=lambda: list(DEFAULT_CHECKS), description="检查项")
    limits: Dict[str, int] = Field(default_factory=dict, description="规模上限覆盖")

    @field_validator("limits")
    @classmethod
    def _known_limits(cls, value: Dict[str, int]) -> Dict[str, int]:
        known = set(EngineLimits.model_fields)
        unknown = sorted(set(value) - known)
        if unknown:
            raise ValueError(f"未知的上限键: {', '.join(unknown)}")
        for key, v in value.items():
            if key != "seed" and v < 1:
                raise ValueError(f"上限 {key} 必须 ≥ 1，实际为 {v}")
        return value


# ==================== 报告相关 ====================

class InputEcho(BaseModel):
    """输入回显"""
    name: str = Field(description="输入名称")
    orders: List[int] = Field(description="群阶")
    conductor: int = Field(description="输入导子")
    exponents: List[List[int]] = Field(description="输入指数矩阵")
    session_conductor: int = Field(description="会话导子")


class AxiomSummary(BaseModel):
    """Hopf / 拟三角公理检查结果"""
    algebra: str = Field(description="代数名称")
    mode: Literal["generators", "exhaustive"] = Field(default="generators", description="检查层级")
    dimension: int = Field(description="维数")
    checks: Dict[str, bool] = Field(default_factory=dict, description="各项是否通过")
    failures: List[str] = Field(default_factory=list, description="失败项及出错的基元素")
    skipped: List[str] = Field(default_factory=list, description="因规模跳过的项")

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class DistinguishedOut(BaseModel):
    """g_H、α_H 与积分"""
    g_h: CharacterPairs = Field(description="g_H 在 g_1..g_n 上的取值")
    alpha_h_support: List[int] = Field(description="α_H(δ_i) = 1 的唯一 i")
    integral_verified: bool = Field(description="Λ 的左积分性质已验证")
    cointegral_verified: Optional[bool] = Field(default=None, description="λ 的性质已验证（规模允许时）")
    radford_s4: Optional[bool] = Field(default=None, description="Radford S⁴ 公式在生成元上成立")


class RibbonPairOut(BaseModel):
    """KR 对 (ζ, a)"""
    zeta: List[int] = Field(description="格点 j，ζ(x_A δ_i) = ε(x_A) δ_{i,j}")
    a: CharacterPairs = Field(description="a 在 g_1..g_n 上的取值")


class WitnessOut(BaseModel):
    """模性条件 (ii) 的见证 (j, a)"""
    j: List[int] = Field(description="格点 j")
    a: List[int] = Field(description="格点 a")
    strict: bool = Field(description="是否同时满足 2a = i_ℓ")


class ModularityOut(BaseModel):
    """模性判定"""
    verdict: Verdict = Field(description="判定")
    b_nondegenerate: Optional[bool] = Field(default=None, description="条件 (i)")
    witnesses: List[WitnessOut] = Field(default_factory=list, description="条件 (ii) 的见证")
    reason: str = Field(default="", description="判定理由")


class SphericalRemarkOut(BaseModel):
    """球面性扫描的见证 (b, c) 及 a = γ_b γ̄_c"""
    b: List[int] = Field(description="格点 b")
    c: List[int] = Field(description="格点 c")
    a: CharacterPairs = Field(description="a 的取值")


class RibbonCheckOut(BaseModel):
    """Drin(H) 中带状元素的校验"""
    pair_index: int = Field(description="KR 对序号")
    checks: Dict[str, bool] = Field(default_factory=dict, description="各项性质")
    passed: bool = Field(description="是否全部通过")


class RibbonOracleOut(BaseModel):
    """穷举类群元的带状元素搜索"""
    candidates: int = Field(description="尝试的类群元个数")
    ribbon_count: int = Field(description="得到带状元素的个数")
    matches_kr: bool = Field(description="与 KR 对集合一致")


class ReportDoc(BaseModel):
    """运行报告"""
    command: str = Field(description="子命令")
    input: InputEcho
    hilbert_series: Optional[List[int]] = Field(default=None, description="Hilbert 级数")
    total_dim: Optional[int] = Field(default=None, description="dim 𝔅_q")
    finite: Verdict = Field(default="undetermined", description="有限维判定")
    ell: Optional[int] = Field(default=None, description="顶次数 ℓ")
    i_ell: Optional[List[int]] = Field(default=None, description="顶次数的 G-次数")
    root_formula: Optional[bool] = Field(default=None, description="正根公式复核")
    pbw_match: Optional[bool] = Field(default=None, description="PBW 计数复核")
    double_dim: Optional[int] = Field(default=None, description="辫子 Drinfeld 偶维数")
    fpdim_identity: Optional[bool] = Field(default=None, description="维数恒等式")
    low_degree_check: Optional[bool] = Field(default=None, description="低次数对称化子秩与对偶配对复核")
    b_nondegenerate: Optional[bool] = Field(default=None, description="b 非退化")
    b_radical: List[List[int]] = Field(default_factory=list, description="b 根基生成元")
    distinguished: Optional[DistinguishedOut] = Field(default=None, description="区分类群元")
    kr_pairs: List[RibbonPairOut] = Field(default_factory=list, description="KR 对")
    spiv: List[CharacterPairs] = Field(default_factory=list, description="SPiv(H)")
    spherical: Verdict = Field(default="undetermined", description="球面性判定")
    spherical_remark: List[SphericalRemarkOut] = Field(default_factory=list, description="球面性扫描见证")
    radford_consistent: Optional[bool] = Field(default=None, description="Radford 相容性")
    modularity: Optional[ModularityOut] = Field(default=None, description="模性判定")
    axioms: List[AxiomSummary] = Field(default_factory=list, description="公理检查")
    generic_double_dim: Optional[int] = Field(default=None, description="dim Drin(H)")
    ribbon_checks: List[RibbonCheckOut] = Field(default_factory=list, description="带状元素校验")
    ribbon_oracle: Optional[RibbonOracleOut] = Field(default=None, description="带状元素穷举对照")
    drinfeld_map_rank: Optional[int] = Field(default=None, description="Drinfeld 映射的秩")
    generic_drinfeld_map_rank: Optional[int] = Field(default=None, description="Drin(H) 上 Drinfeld 映射的秩")
    warnings: List[str] = Field(default_factory=list, description="跳过项等提示")
    timings: Optional[Dict[str, float]] = Field(default=None, description="各阶段耗时（秒）")


# ==================== 存档相关 ====================

class ReportRecord(BaseModel):
    """存档记录摘要"""
    id: int = Field(description="记录ID")
    created_at: datetime = Field(description="运行时间")
    command: str = Field(description="子命令")
    source: str = Field(description="预设名或输入文件")
    conductor: int = Field(description="会话导子")
    total_dim: Optional[int] = Field(default=None, description="dim 𝔅_q")
    verdict: Optional[str] = Field(default=None, description="模性判定")
    exit_code: int = Field(default=0, description="退出码")
