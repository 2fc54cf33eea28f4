"""
输入文件与期望文件的读写（TOML）

读取用 tomllib（Python < 3.11 用 tomli），写出用本模块的小型生成器：
输入文件只含整数、字符串与整数列表/矩阵，不需要通用 TOML 写出器。
"""
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

from loguru import logger
from pydantic import ValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from src.models.schemas import (
    BraidingSection, EngineLimits, GroupSection, InputSpec, RootsSection,
)
from src.services.catalog_service import Preset
from src.services.lattice_service import Bicharacter
from src.services.nichols_service import BraidedDiagonalSpace, RootDatum
from src.utils.errors import InputValidationError


# ==================== 读取 ====================

def _first_error(exc: ValidationError, prefix: str = "") -> InputValidationError:
    err = exc.errors()[0]
    parts = [str(p) for p in err.get("loc", ())]
    if prefix:
        parts.insert(0, prefix)
    loc = ".".join(parts) or "input"
    return InputValidationError(loc, err.get("msg", "输入无效"))


def parse_input(data: Dict[str, Any]) -> InputSpec:
    """dict → InputSpec，pydantic 校验错误转成带字段路径的 InputValidationError"""
    try:
        return InputSpec.model_validate(data)
    except ValidationError as e:
        raise _first_error(e) from e


def load_input(path: str) -> InputSpec:
    """读取 TOML 输入文件"""
    if not os.path.exists(path):
        raise InputValidationError("input", f"输入文件不存在: {path}")
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise InputValidationError("input", f"TOML 解析失败: {e}") from e
    data.setdefault("name", os.path.splitext(os.path.basename(path))[0])
    spec = parse_input(data)
    logger.info(f"[Config] 已读取输入 {path}（{spec.name}）")
    return spec


def load_expectations(path: str) -> Dict[str, Any]:
    """期望文件：[expect] 段为期望值，[provenance] 段为出处标记"""
    if not os.path.exists(path):
        raise InputValidationError("assert", f"期望文件不存在: {path}")
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise InputValidationError("assert", f"期望文件 TOML 解析失败: {e}") from e
    expect = data.get("expect")
    if not isinstance(expect, dict):
        raise InputValidationError("assert", "期望文件缺少 [expect] 段")
    return expect


# ==================== 输入 → 代数数据 ====================

def build_bicharacter(spec: InputSpec) -> Bicharacter:
    return Bicharacter.from_exponents(spec.group.orders, spec.braiding.conductor, spec.braiding.exponents)


def build_space(spec: InputSpec, bichar: Bicharacter) -> BraidedDiagonalSpace:
    if spec.generators is not None:
        return BraidedDiagonalSpace.with_degrees(bichar, spec.generators.degrees)
    return BraidedDiagonalSpace.standard(bichar)


def build_roots(spec: InputSpec) -> Optional[RootDatum]:
    if spec.roots is None or not spec.roots.positive:
        return None
    return RootDatum(positive=tuple(tuple(b) for b in spec.roots.positive), orders=tuple(spec.roots.orders))


def effective_limits(spec: InputSpec, overrides: Optional[Dict[str, Optional[int]]] = None) -> EngineLimits:
    """环境默认值 < 输入文件 [limits] < 命令行"""
    try:
        limits = EngineLimits().merged(spec.limits)
    except ValidationError as e:
        raise _first_error(e, "limits") from e
    try:
        return limits.merged(overrides or {})
    except ValidationError as e:
        raise _first_error(e) from e


def preset_to_input(preset: Preset, checks: Optional[List[str]] = None) -> InputSpec:
    roots = None
    if preset.roots is not None:
        roots = RootsSection(positive=[list(b) for b in preset.roots.positive], orders=list(preset.roots.orders))
    data = InputSpec(
        name=preset.name,
        group=GroupSection(orders=list(preset.orders)),
        braiding=BraidingSection(conductor=preset.conductor, exponents=[list(row) for row in preset.exponents]),
        roots=roots,
    )
    if checks is not None:
        data.checks = list(checks)
    return data


# ==================== 写出 ====================

def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    raise InputValidationError("toml", f"不支持写出的值类型: {type(value).__name__}")


def _toml_table(name: str, items: List[Tuple[str, Any]]) -> List[str]:
    lines = [f"[{name}]"]
    lines += [f"{k} = {_toml_value(v)}" for k, v in items]
    lines.append("")
    return lines


def dump_input(spec: InputSpec) -> str:
    lines = [f"name = {_toml_value(spec.name)}", f"checks = {_toml_value(list(spec.checks))}", ""]
    lines += _toml_table("group", [("orders", spec.group.orders)])
    lines += _toml_table("braiding", [("conductor", spec.braiding.conductor),
                                      ("exponents", spec.braiding.exponents)])
    if spec.roots is not None:
        lines += _toml_table("roots", [("positive", spec.roots.positive), ("orders", spec.roots.orders)])
    if spec.generators is not None:
        lines += _toml_table("generators", [("degrees", spec.generators.degrees)])
    if spec.limits:
        lines += _toml_table("limits", sorted(spec.limits.items()))
    return "\n".join(lines)


def write_input(spec: InputSpec, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_input(spec))
    logger.info(f"[Config] 已写出输入文件 {path}")


def flatten_value(value: Any) -> Any:
    # 见证、KR 对等嵌套结构拍平成整数列表，与报告的比较函数一致
    if isinstance(value, dict):
        return [flatten_value(value[k]) for k in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [flatten_value(v) for v in value]
    return value


def dump_expectations(preset: Preset) -> str:
    lines = [f"# {preset.name}", ""]
    lines += _toml_table("expect", [(k, flatten_value(v)) for k, v in sorted(preset.expectations().items())])
    lines += _toml_table("provenance", sorted(preset.provenance().items()))
    return "\n".join(lines)


def write_expectations(preset: Preset, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_expectations(preset))
    logger.info(f"[Config] 已写出期望文件 {path}")
