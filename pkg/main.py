"""
Nichols 工具包 - 程序入口

对角型 Nichols 代数、辫子 Drinfeld 偶与带状 / 球面 / 模性判据的批处理命令行
"""
import argparse
import json
import os
import sys
import traceback
from typing import Any, Dict, List, Optional

# 添加项目根目录到路径
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from loguru import logger

from src.api import Api
from src.api.api import COMMANDS, EXIT_OK, EXIT_VALIDATION
from src.services.catalog_service import PRESET_NAMES
from src.utils.datetime_helper import now_str
from src.utils.logger import setup_logger

EXIT_BY_KIND = {"validation": EXIT_VALIDATION, "bound": EXIT_VALIDATION, "convention": EXIT_VALIDATION,
                "cutoff": 3}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nichols", description="对角型 Nichols 代数与辫子 Drinfeld 偶校验工具")
    parser.add_argument("--log-level", default=None, help="控制台日志级别（默认读 NICHOLS_LOG_LEVEL）")
    parser.add_argument("--no-log-file", action="store_true", help="不写日志文件")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        p = sub.add_parser(name, help=f"运行 {name} 流水线")
        p.add_argument("--preset", choices=PRESET_NAMES, help="内置预设")
        p.add_argument("--n", type=int, default=None, help="预设参数 n")
        p.add_argument("--l", type=int, default=None, help="Cartan 预设的 l")
        p.add_argument("--k", type=int, default=1, help="q = ζ^k 中的 k")
        p.add_argument("--cartan", default=None, help="Cartan 类型，如 A2、B2、G2")
        p.add_argument("--input", dest="input_path", default=None, help="TOML 输入文件")
        p.add_argument("--cutoff", type=int, default=None, help="Nichols 截断次数")
        p.add_argument("--max-dim", type=int, default=None, help="穷举校验的维数上限")
        p.add_argument("--exhaustive", action="store_true", help="在全部基元素上检查公理")
        p.add_argument("--json", dest="json_path", default=None, help="JSON 报告输出路径")
        p.add_argument("--assert", dest="assert_path", default=None, help="期望文件")
        p.add_argument("--timings", action="store_true", help="报告中包含各阶段耗时")
        p.add_argument("--no-archive", action="store_true", help="不写入报告存档")

    h = sub.add_parser("history", help="查看报告存档")
    h.add_argument("--limit", type=int, default=20, help="显示条数")
    h.add_argument("--show", type=int, default=None, help="打印指定记录的完整报告")

    e = sub.add_parser("expect", help="导出预设的期望文件")
    e.add_argument("--preset", choices=PRESET_NAMES, required=True, help="内置预设")
    e.add_argument("--n", type=int, default=None, help="预设参数 n")
    e.add_argument("--l", type=int, default=None, help="Cartan 预设的 l")
    e.add_argument("--k", type=int, default=1, help="q = ζ^k 中的 k")
    e.add_argument("--cartan", default=None, help="Cartan 类型")
    e.add_argument("--write", required=True, help="输出路径")
    return parser


# ==================== 文本输出 ====================

def _fmt_pairs(pairs: List[List[int]]) -> str:
    return "(" + ", ".join(f"ζ_{N}^{e}" for e, N in pairs) + ")"


def render_text(report: Dict[str, Any]) -> str:
    """人读的报告摘要"""
    lines = [f"== {report['command']}: {report['input']['name']} "
             f"(Λ = {report['input']['orders']}, N = {report['input']['session_conductor']}) =="]
    if report.get("hilbert_series") is not None:
        lines.append(f"Hilbert 级数: {report['hilbert_series']}  有限: {report['finite']}")
    if report.get("total_dim") is not None:
        lines.append(f"dim 𝔅_q = {report['total_dim']}，ℓ = {report['ell']}，i_ℓ = {report['i_ell']}")
        lines.append(f"dim 偶 = {report['double_dim']}（维数恒等式 {report['fpdim_identity']}）")
    if report.get("root_formula") is not None:
        lines.append(f"正根复核: i_ℓ {report['root_formula']}，PBW {report['pbw_match']}")
    lines.append(f"b 非退化: {report['b_nondegenerate']}")
    dist = report.get("distinguished")
    if dist:
        lines.append(f"g_H = {_fmt_pairs(dist['g_h'])}，α_H 支撑于 δ_{dist['alpha_h_support']}，"
                     f"Radford S⁴: {dist['radford_s4']}")
        lines.append(f"KR 对 {len(report['kr_pairs'])} 个:")
        for p in report["kr_pairs"]:
            lines.append(f"  ζ = ζ_{p['zeta']}, a = {_fmt_pairs(p['a'])}")
        lines.append(f"SPiv: {[_fmt_pairs(a) for a in report['spiv']]}，球面: {report['spherical']}")
        lines.append(f"Radford 相容: {report['radford_consistent']}")
    mod = report.get("modularity")
    if mod:
        lines.append(f"模性: {mod['verdict']}（{mod['reason']}）")
        for w in mod["witnesses"]:
            lines.append(f"  见证 j = {w['j']}, a = {w['a']}{'' if w['strict'] else '  (2a ≠ i_ℓ)'}")
    for ax in report.get("axioms", []):
        bad = [k for k, ok in ax["checks"].items() if not ok]
        lines.append(f"公理 {ax['algebra']} (dim {ax['dimension']}, {ax['mode']}): {'通过' if not bad else '失败 ' + ', '.join(bad)}")
    if report.get("generic_double_dim") is not None:
        lines.append(f"dim Drin(H) = {report['generic_double_dim']}")
    for rc in report.get("ribbon_checks", []):
        lines.append(f"  KR 对 #{rc['pair_index']} 的带状元素: {'通过' if rc['passed'] else rc['checks']}")
    oracle = report.get("ribbon_oracle")
    if oracle:
        lines.append(f"类群元穷举: {oracle['candidates']} 个候选，{oracle['ribbon_count']} 个带状，"
                     f"与 KR 对一致: {oracle['matches_kr']}")
    if report.get("drinfeld_map_rank") is not None:
        lines.append(f"Drinfeld 映射秩: {report['drinfeld_map_rank']}")
    if report.get("generic_drinfeld_map_rank") is not None:
        lines.append(f"Drin(H) 的 Drinfeld 映射秩: {report['generic_drinfeld_map_rank']}")
    for w in report.get("warnings", []):
        lines.append(f"[!] {w}")
    return "\n".join(lines)


def write_json(path: str, payload: Dict[str, Any]) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")


def _exit_for_error(result: Dict[str, Any]) -> int:
    field = f" [{result['field']}]" if result.get("field") else ""
    print(f"错误{field}: {result['error']}", file=sys.stderr)
    return EXIT_BY_KIND.get(result.get("kind"), EXIT_VALIDATION)


# ==================== 子命令 ====================

def run_command(args: argparse.Namespace, api: Optional[Api] = None) -> int:
    api = api or Api(archive=not getattr(args, "no_archive", False))
    logger.debug(f"[CLI] 子命令 {args.command}")

    if args.command == "history":
        if args.show is not None:
            result = api.show_report(args.show)
            if not result["success"]:
                return _exit_for_error(result)
            print(render_text(result["data"]))
            return EXIT_OK
        result = api.history(args.limit)
        for r in result["data"]:
            print(f"#{r['id']:<5} {r['created_at']}  {r['command']:<16} {r['source']:<24} "
                  f"dim={r['total_dim']} 模性={r['verdict']} exit={r['exit_code']}")
        return EXIT_OK

    if args.command == "expect":
        result = api.export_expectations(args.preset, args.write, n=args.n, l=args.l, k=args.k, cartan=args.cartan)
        if not result["success"]:
            return _exit_for_error(result)
        print(f"已写出 {result['data']['path']}")
        return EXIT_OK

    result = api.run(
        args.command, preset=args.preset, input_path=args.input_path, n=args.n, l=args.l, k=args.k,
        cartan=args.cartan, cutoff=args.cutoff, max_dim=args.max_dim, exhaustive=args.exhaustive,
        assert_path=args.assert_path, timings=args.timings,
    )
    if not result["success"]:
        return _exit_for_error(result)
    data = result["data"]
    print(render_text(data["report"]))
    for m in data["mismatches"]:
        print(f"期望不符: {m}", file=sys.stderr)
    if args.json_path:
        write_json(args.json_path, data["report"])
    return data["exit_code"]


def main(argv: Optional[List[str]] = None) -> int:
    """主入口函数"""
    args = build_parser().parse_args(argv)
    setup_logger(log_dir=os.path.join(PROJECT_ROOT, 'logs'), level=args.log_level, file_logging=not args.no_log_file)
    try:
        return run_command(args)
    except KeyboardInterrupt:
        logger.info("程序被用户中断")
        return 130
    except Exception as e:
        error_msg = f"程序运行出现未处理的异常: {e}"
        logger.exception(error_msg)

        # 尝试将错误信息写入独立文件（防止日志系统本身有问题）
        try:
            error_file = os.path.join(PROJECT_ROOT, 'logs', f'critical_error_{now_str("%Y%m%d_%H%M%S")}.log')
            os.makedirs(os.path.dirname(error_file), exist_ok=True)
            with open(error_file, 'w', encoding='utf-8') as f:
                f.write(f"时间: {now_str()}\n")
                f.write(f"错误: {error_msg}\n")
                f.write(f"异常类型: {type(e).__name__}\n")
                f.write(f"\n完整堆栈跟踪:\n{traceback.format_exc()}\n")
        except Exception:
            pass

        raise


if __name__ == '__main__':
    sys.exit(main())
