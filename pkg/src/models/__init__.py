# 数据模型模块
from .database import Database, init_db
from .schemas import (
    EngineLimits,
    InputSpec,
    ReportDoc,
    ReportRecord,
    AxiomSummary,
)

__all__ = [
    'Database',
    'init_db',
    'EngineLimits',
    'InputSpec',
    'ReportDoc',
    'ReportRecord',
    'AxiomSummary',
]
