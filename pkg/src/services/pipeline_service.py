"""
运行流水线：dims → 偶 → 校验器，按子命令 / 检查项组装 ReportDoc
"""
from typing import Any, Dict, List, Optional, Set

from loguru import logger

from src.models.schemas import (
    AxiomSummary, DistinguishedOut, EngineLimits, InputEcho, InputSpec, ModularityOut, ReportDoc,
    RibbonCheckOut, RibbonOracleOut, RibbonPairOut, SphericalRemarkOut, WitnessOut,
)
from src.services.config_service import build_bicharacter, build_roots, build_space, flatten_value
from src.services.double_service import DoubleAlgebra, drinfeld_map_rank, verify_hopf, verify_quasitriangular
from src.services.drinfeld_service import GenericDouble, ribbon_element, ribbon_search, verify_ribbon
from src.services.lattice_service import Bicharacter
from src.services.nichols_service import (
    NicholsData, build_nichols, check_low_degrees, check_root_formula, pbw_hilbert_series,
)
from src.services.smash_service import SmashAlgebra, smash_product
from src.services.verifier_service import (
    DistinguishedData, RibbonPair, enumerate_kr_pairs, integrals, modularity_check, radford_consistency,
    spherical_check_remark, spherical_verdict, spiv, witness_to_pair, zeta_values,
)
from src.utils.datetime_helper import Stopwatch
from src.utils.errors import CutoffExceededError

COMMAND_STAGES: Dict[str, Set[str]] = {
    "dims": {"dims"},
    "modularity": {"dims", "modularity"},
    "ribbon": {"dims", "ribbon"},
    "axioms": {"dims", "axioms"},
    "drinfeld-double": {"dims", "drinfeld"},
}

# 与顺序无关的期望字段
SET_KEYS = {"kr_pairs", "spiv", "witnesses", "spherical_remark"}


def stages_for(command: str, checks: List[str]) -> Set[str]:
    if command == "check":
        return {"dims"} | set(checks)
    return set(COMMAND_STAGES[command])


class PipelineService:
    """一次运行的编排；每个阶段只填写 ReportDoc 中属于自己的字段"""

    def __init__(self, spec: InputSpec, limits: EngineLimits, exhaustive: bool = False):
        self.spec = spec
        self.limits = limits
        self.mode = "exhaustive" if exhaustive else "generators"
        self.watch = Stopwatch()
        self.bichar: Optional[Bicharacter] = None
        self.nichols: Optional[NicholsData] = None
        self.smash: Optional[SmashAlgebra] = None
        self.dist: Optional[DistinguishedData] = None
        self.pairs: List[RibbonPair] = []
        self.generic: Optional[GenericDouble] = None

    def run(self, command: str, timings: bool = False) -> ReportDoc:
        stages = stages_for(command, list(self.spec.checks))
        logger.info(f"[Pipeline] {command}: {self.spec.name}，阶段 {sorted(stages)}")
        with self.watch.stage("lattice"):
            self.bichar = build_bicharacter(self.spec)
            space = build_space(self.spec, self.bichar)
        report = ReportDoc(
            command=command,
            input=InputEcho(
                name=self.spec.name,
                orders=list(self.spec.group.orders),
                conductor=self.spec.braiding.conductor,
                exponents=[list(row) for row in self.spec.braiding.exponents],
                session_conductor=self.bichar.conductor,
            ),
        )
        report.b_nondegenerate = self.bichar.is_nondegenerate()
        report.b_radical = [list(v) for v in self.bichar.b_radical()]

        with self.watch.stage("nichols"):
            try:
                self.nichols = build_nichols(space, self.limits.cutoff)
            except CutoffExceededError as e:
                report.hilbert_series = list(e.dims)
                report.finite = "undetermined"
                report.warnings.append(f"截断次数 {e.cutoff} 内未终止，有限性未定")
                if "modularity" in stages:
                    report.modularity = ModularityOut(verdict="undetermined", b_nondegenerate=report.b_nondegenerate,
                                                      reason="Nichols 代数有限性未确定")
                if timings:
                    report.timings = dict(self.watch.timings)
                return report
        self._fill_dims(report)

        if stages & {"modularity", "ribbon"}:
            with self.watch.stage("verifier"):
                self._fill_verifier(report)
        if "modularity" in stages:
            with self.watch.stage("modularity"):
                self._fill_modularity(report)
        if "axioms" in stages:
            with self.watch.stage("axioms"):
                self._fill_axioms(report)
        if "ribbon" in stages:
            with self.watch.stage("ribbon"):
                self._fill_ribbon(report)
        if "drinfeld" in stages:
            with self.watch.stage("drinfeld"):
                self._fill_drinfeld(report)
        if timings:
            report.timings = dict(self.watch.timings)
        return report

    # ==================== 各阶段 ====================

    def _fill_dims(self, report: ReportDoc) -> None:
        nichols = self.nichols
        group = self.bichar.group
        report.hilbert_series = list(nichols.dims)
        report.total_dim = nichols.total_dim
        report.finite = "yes"
        report.ell = nichols.ell
        report.i_ell = list(nichols.i_ell)
        report.double_dim = len(nichols.basis) * group.size * len(nichols.y_basis)
        smash_dim = nichols.total_dim * group.size
        report.fpdim_identity = (report.double_dim == nichols.total_dim ** 2 * group.size
                                 and smash_dim ** 2 == report.double_dim * group.size)
        if not report.fpdim_identity:
            report.warnings.append("维数恒等式 dim(偶) = dim(𝔅)²·|Λ| 不成立")

        bad = check_low_degrees(nichols, self.limits.symmetrizer_words)
        report.low_degree_check = not bad
        if bad:
            report.warnings.append(f"低次数复核不一致（次数 {bad}）：对称化子秩或对偶配对与构造不符")

        roots = build_roots(self.spec)
        if roots is not None:
            report.root_formula = check_root_formula(nichols, roots)
            report.pbw_match = pbw_hilbert_series(roots) == nichols.dims
            if not (report.root_formula and report.pbw_match):
                report.warnings.append("正根数据与 Nichols 构造不一致")

    def _ensure_smash(self) -> SmashAlgebra:
        if self.smash is None:
            self.smash = smash_product(self.nichols)
        return self.smash

    def _ensure_generic(self) -> GenericDouble:
        if self.generic is None:
            self.generic = GenericDouble(self._ensure_smash(), self.limits)
        return self.generic

    def _fill_verifier(self, report: ReportDoc) -> None:
        H = self._ensure_smash()
        dist = integrals(H, self.nichols, self.limits)
        self.dist = dist
        report.distinguished = DistinguishedOut(
            g_h=dist.g_h.as_pairs(),
            alpha_h_support=list(dist.alpha_shift),
            integral_verified=dist.integral_verified,
            cointegral_verified=dist.cointegral_verified,
            radford_s4=dist.radford_s4,
        )
        self.pairs = enumerate_kr_pairs(H, dist)
        report.kr_pairs = [RibbonPairOut(zeta=list(p.zeta), a=p.a.as_pairs()) for p in self.pairs]
        sp = spiv(H, dist)
        report.spiv = [a.as_pairs() for a in sp]
        report.spherical = "yes" if spherical_verdict(dist, sp) else "no"
        report.radford_consistent = radford_consistency(self.bichar, self.nichols)
        if self.pairs and not report.radford_consistent:
            report.warnings.append("存在 KR 对但 Radford 相容性不成立")
        if dist.alpha_is_counit:
            zero = self.bichar.group.zero
            from_pairs = sorted(p.a.as_pairs() for p in self.pairs if p.zeta == zero)
            if from_pairs != sorted(report.spiv):
                report.warnings.append("SPiv 与 ζ = ε 的 KR 对不一致")
        remark = spherical_check_remark(self.bichar, self.nichols)
        report.spherical_remark = [SphericalRemarkOut(b=list(b), c=list(c), a=a.as_pairs()) for b, c, a in remark]
        if remark and not sp:
            report.warnings.append("球面性扫描找到见证但 SPiv 为空")

    def _fill_modularity(self, report: ReportDoc) -> None:
        result = modularity_check(self.bichar, self.nichols)
        report.modularity = ModularityOut(
            verdict=result.verdict,
            b_nondegenerate=result.b_nondegenerate,
            witnesses=[WitnessOut(j=list(w.j), a=list(w.a), strict=w.strict) for w in result.witnesses],
            reason=result.reason,
        )
        known = set(self.pairs)
        for w in result.witnesses:
            if witness_to_pair(self.bichar, w) not in known:
                report.warnings.append(f"见证 (j={list(w.j)}, a={list(w.a)}) 不对应任何 KR 对")

    def _skip(self, report: ReportDoc, what: str, dim: int, bound: int) -> None:
        message = f"{what}: 维数 {dim} 超过上限 {bound}，跳过"
        report.warnings.append(message)
        logger.warning(f"[Pipeline] {message}")

    def _fill_axioms(self, report: ReportDoc) -> None:
        H = self._ensure_smash()
        if H.dimension <= self.limits.max_dim:
            report.axioms.append(verify_hopf(H, self.mode, self.limits))
        else:
            self._skip(report, "H 公理检查", H.dimension, self.limits.max_dim)
        if report.double_dim > self.limits.max_dim:
            self._skip(report, "辫子 Drinfeld 偶公理检查", report.double_dim, self.limits.max_dim)
            return
        double = DoubleAlgebra(self.nichols)
        report.axioms.append(verify_hopf(double, self.mode, self.limits))
        report.axioms.append(verify_quasitriangular(double, self.mode, self.limits))
        if not axioms_passed(report.axioms):
            report.warnings.append("公理检查存在失败项")

    def _fill_ribbon(self, report: ReportDoc) -> None:
        H = self._ensure_smash()
        if H.dimension > self.limits.generic_max_dim:
            self._skip(report, "Drin(H) 带状元素校验", H.dimension, self.limits.generic_max_dim)
            return
        dd = self._ensure_generic()
        report.generic_double_dim = dd.dimension
        u = dd.drinfeld_element()
        for index, pair in enumerate(self.pairs):
            v = ribbon_element(dd, zeta_values(H, pair.zeta), H.character_element(pair.a), drinfeld_elem=u)
            checks = verify_ribbon(dd, v, drinfeld_elem=u, full_basis=True)
            report.ribbon_checks.append(RibbonCheckOut(pair_index=index, checks=checks, passed=all(checks.values())))

        candidates = []
        labels = {}
        for j in H.group.elements:
            for chi in H.bichar.characters():
                label = f"{list(j)}|{chi.exps}"
                labels[label] = RibbonPair(zeta=j, a=chi)
                candidates.append((label, zeta_values(H, j), H.character_element(chi)))
        found = {labels[label] for label in ribbon_search(dd, candidates)}
        report.ribbon_oracle = RibbonOracleOut(
            candidates=len(candidates), ribbon_count=len(found), matches_kr=found == set(self.pairs),
        )
        if found != set(self.pairs):
            report.warnings.append("带状元素穷举与 KR 对集合不一致")

    def _fill_drinfeld(self, report: ReportDoc) -> None:
        if report.double_dim > self.limits.max_dim:
            self._skip(report, "Drinfeld 映射秩", report.double_dim, self.limits.max_dim)
            return
        double = DoubleAlgebra(self.nichols)
        report.drinfeld_map_rank = drinfeld_map_rank(double, self.limits)

        H = self._ensure_smash()
        if H.dimension > self.limits.generic_max_dim:
            self._skip(report, "Drin(H) 的 Drinfeld 映射秩", H.dimension, self.limits.generic_max_dim)
            return
        dd = self._ensure_generic()
        if dd.dimension > self.limits.max_dim:
            self._skip(report, "Drin(H) 的 Drinfeld 映射秩", dd.dimension, self.limits.max_dim)
            return
        report.generic_double_dim = dd.dimension
        report.generic_drinfeld_map_rank = drinfeld_map_rank(dd, self.limits)
        if report.generic_drinfeld_map_rank != dd.dimension:
            report.warnings.append("Drin(H) 的 Drinfeld 映射不满秩")


def run_pipeline(spec: InputSpec, command: str, limits: EngineLimits, exhaustive: bool = False,
                 timings: bool = False) -> ReportDoc:
    return PipelineService(spec, limits, exhaustive).run(command, timings)


# ==================== 期望比较 ====================

def report_values(report: ReportDoc) -> Dict[str, Any]:
    """报告中可与期望文件比较的量（形状与预设期望一致）"""
    mod = report.modularity
    dist = report.distinguished
    return {
        "hilbert_series": report.hilbert_series,
        "total_dim": report.total_dim,
        "ell": report.ell,
        "i_ell": report.i_ell,
        "b_nondegenerate": report.b_nondegenerate,
        "double_dim": report.double_dim,
        "g_h": dist.g_h if dist else None,
        "alpha_h_support": dist.alpha_h_support if dist else None,
        "kr_pairs": [{"zeta": p.zeta, "a": p.a} for p in report.kr_pairs] if dist else None,
        "kr_pair_count": len(report.kr_pairs) if dist else None,
        "spiv": report.spiv if dist else None,
        "spiv_count": len(report.spiv) if dist else None,
        "spherical": report.spherical if dist else None,
        "radford_consistent": report.radford_consistent,
        "modularity": mod.verdict if mod else None,
        "witnesses": [[w.j, w.a] for w in mod.witnesses] if mod else None,
        "witness_count": len(mod.witnesses) if mod else None,
        "drinfeld_map_rank": report.drinfeld_map_rank,
        "generic_double_dim": report.generic_double_dim,
        "generic_drinfeld_map_rank": report.generic_drinfeld_map_rank,
    }


def compare_expectations(report: ReportDoc, expected: Dict[str, Any]) -> List[str]:
    """返回不一致项；报告中未计算的字段不参与比较"""
    actual = report_values(report)
    mismatches: List[str] = []
    for key, want in sorted(expected.items()):
        if key not in actual:
            mismatches.append(f"{key}: 未知的期望字段")
            continue
        got = actual[key]
        if got is None:
            logger.debug(f"[Pipeline] 期望字段 {key} 未在本次运行中计算，跳过")
            continue
        left, right = flatten_value(got), flatten_value(want)
        if key in SET_KEYS:
            left, right = sorted(left), sorted(right)
        if left != right:
            mismatches.append(f"{key}: 期望 {want}，实际 {got}")
    return mismatches


def axioms_passed(summaries: List[AxiomSummary]) -> bool:
    return all(s.passed for s in summaries)
