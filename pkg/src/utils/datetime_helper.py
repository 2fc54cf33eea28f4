"""日期时间与计时工具函数"""
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Dict, Iterator


def now() -> datetime:
    """获取当前 UTC 时间"""
    return datetime.now(timezone.utc)


def now_str(fmt: str = '%Y-%m-%d %H:%M:%S') -> str:
    """获取当前时间的格式化字符串"""
    return now().strftime(fmt)


class Stopwatch:
    """
    分阶段计时器

    用法:
        watch = Stopwatch()
        with watch.stage("nichols"):
            ...
        watch.timings  # {"nichols": 0.12}
    """

    def __init__(self):
        self.timings: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.timings[name] = round(self.timings.get(name, 0.0) + elapsed, 6)
