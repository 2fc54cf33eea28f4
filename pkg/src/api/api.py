"""
API 模块 - CLI 与测试调用的统一入口

每个方法返回 {'success': True, 'data': ...} 或 {'success': False, 'error': ..., 'field': ..., 'kind': ...}，
异常不越过这一层。
"""
import os
from typing import Any, Dict, Optional

from loguru import logger

from src.models.database import Database
from src.models.schemas import InputSpec
from src.services.catalog_service import get_preset
from src.services.config_service import effective_limits, load_expectations, load_input, preset_to_input, \
    write_expectations
from src.services.pipeline_service import COMMAND_STAGES, compare_expectations, run_pipeline
from src.utils.errors import InputValidationError, NicholsKitError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ASSERT = 2
EXIT_CUTOFF = 3

COMMANDS = ("check",) + tuple(COMMAND_STAGES)


class Api:
    """批处理 API 类"""

    def __init__(self, db: Optional[Database] = None, archive: bool = True) -> None:
        self.archive = archive
        self._db = db

    @property
    def db(self) -> Database:
        if self._db is None:
            logger.debug("正在初始化数据库...")
            self._db = Database()
        return self._db

    def _success(self, data: Any = None, message: str = "") -> Dict[str, Any]:
        """返回成功结果"""
        return {'success': True, 'data': data, 'message': message}

    def _error(self, error: NicholsKitError) -> Dict[str, Any]:
        """返回错误结果"""
        return {'success': False, **error.to_dict()}

    # ==================== 输入解析 ====================

    def resolve_input(self, preset: Optional[str] = None, input_path: Optional[str] = None,
                      n: Optional[int] = None, l: Optional[int] = None, k: int = 1,
                      cartan: Optional[str] = None) -> tuple[InputSpec, str]:
        """预设或输入文件 → (InputSpec, 来源描述)"""
        if preset and input_path:
            raise InputValidationError("input", "--preset 与 --input 只能二选一")
        if preset:
            p = get_preset(preset, n=n, l=l, k=k, cartan=cartan)
            return preset_to_input(p), p.name
        if input_path:
            return load_input(input_path), input_path
        raise InputValidationError("input", "需要 --preset 或 --input")

    @staticmethod
    def _expectation_path(path: str) -> str:
        if not os.path.exists(path) and os.path.exists(path + ".toml"):
            return path + ".toml"
        return path

    # ==================== 流水线 ====================

    def run(self, command: str, preset: Optional[str] = None, input_path: Optional[str] = None,
            n: Optional[int] = None, l: Optional[int] = None, k: int = 1, cartan: Optional[str] = None,
            cutoff: Optional[int] = None, max_dim: Optional[int] = None, exhaustive: bool = False,
            assert_path: Optional[str] = None, timings: bool = False) -> Dict[str, Any]:
        """
        运行一个子命令

        Returns:
            data 含 report（dict）、exit_code、mismatches、record_id
        """
        try:
            if command not in COMMANDS:
                raise InputValidationError("command", f"未知子命令 {command}")
            spec, source = self.resolve_input(preset, input_path, n, l, k, cartan)
            limits = effective_limits(spec, {"cutoff": cutoff, "max_dim": max_dim})
            logger.info(f"[API] {command} {source}（cutoff={limits.cutoff}, max_dim={limits.max_dim}）")

            report = run_pipeline(spec, command, limits, exhaustive=exhaustive, timings=timings)

            mismatches = []
            exit_code = EXIT_OK
            if report.finite == "undetermined":
                exit_code = EXIT_CUTOFF
            elif assert_path:
                expected = load_expectations(self._expectation_path(assert_path))
                mismatches = compare_expectations(report, expected)
                if mismatches:
                    exit_code = EXIT_ASSERT
                    for m in mismatches:
                        logger.error(f"[API] 期望不符: {m}")

            record_id = None
            if self.archive:
                record_id = self.db.save_report(report, source, exit_code)

            return self._success({
                'report': report.model_dump(mode='json', exclude_none=False),
                'exit_code': exit_code,
                'mismatches': mismatches,
                'record_id': record_id,
            })
        except NicholsKitError as api_error:
            logger.error(f"[API] {command} 失败: {api_error.message}")
            return self._error(api_error)

    # ==================== 期望文件 ====================

    def export_expectations(self, preset: str, path: str, n: Optional[int] = None, l: Optional[int] = None,
                            k: int = 1, cartan: Optional[str] = None) -> Dict[str, Any]:
        """把预设的期望值写成期望文件"""
        try:
            p = get_preset(preset, n=n, l=l, k=k, cartan=cartan)
            write_expectations(p, path)
            return self._success({'path': path, 'keys': sorted(p.expected)})
        except NicholsKitError as api_error:
            return self._error(api_error)

    # ==================== 历史记录 ====================

    def history(self, limit: int = 20) -> Dict[str, Any]:
        """最近的运行记录"""
        records = self.db.list_reports(limit)
        return self._success([r.model_dump(mode='json') for r in records])

    def show_report(self, report_id: int) -> Dict[str, Any]:
        """取回存档报告"""
        report = self.db.get_report(report_id)
        if report is None:
            return self._error(InputValidationError("show", f"记录 #{report_id} 不存在"))
        return self._success(report.model_dump(mode='json'))
