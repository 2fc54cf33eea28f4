"""
日志工具模块
"""
import os
import sys
from typing import Optional

from loguru import logger

# 日志目录
LOG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), 'logs')

# 控制台日志级别（可通过环境变量覆盖）
DEFAULT_LOG_LEVEL = os.getenv("NICHOLS_LOG_LEVEL", "INFO")


def setup_logger(log_dir: Optional[str] = None, level: Optional[str] = None, file_logging: bool = True):
    """
    设置日志配置

    报告正文输出到 stdout，日志统一走 stderr，避免混入 JSON/文本报告。

    Args:
        log_dir: 日志目录，默认为项目 logs 目录
        level: 控制台日志级别，默认读取 NICHOLS_LOG_LEVEL
        file_logging: 是否写入日志文件
    """
    console_level = (level or DEFAULT_LOG_LEVEL).upper()

    # 移除默认处理器
    logger.remove()

    try:
        if hasattr(sys.stderr, 'isatty') and sys.stderr.isatty():
            logger.add(
                sys.stderr,
                format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
                level=console_level,
                colorize=True
            )
        else:
            logger.add(
                sys.stderr,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
                level=console_level,
                colorize=False
            )
    except Exception:
        # stderr 不可用时只保留文件日志
        pass

    if not file_logging:
        return

    log_path = log_dir or LOG_DIR
    os.makedirs(log_path, exist_ok=True)

    # 运行日志（INFO及以上级别）
    logger.add(
        os.path.join(log_path, "app_{time:YYYY-MM-DD}.log"),
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
        level="INFO",
        rotation="00:00",  # 每天轮转
        retention="30 days",
        compression="zip",
        encoding="utf-8",
        enqueue=True,
        backtrace=True,
        diagnose=False
    )

    # 错误日志（ERROR及以上级别，包含完整堆栈信息）
    logger.add(
        os.path.join(log_path, "error_{time:YYYY-MM-DD}.log"),
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}\n{exception}",
        level="ERROR",
        rotation="00:00",
        retention="90 days",
        compression="zip",
        encoding="utf-8",
        enqueue=True,
        backtrace=True,
        diagnose=True
    )

    logger.debug("日志系统初始化完成")

