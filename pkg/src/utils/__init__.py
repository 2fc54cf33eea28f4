# 工具函数模块
from .cyclotomic import CycNumber, cyclotomic_field, root_of_unity
from .errors import (
    BoundExceededError,
    ConventionError,
    CutoffExceededError,
    InputValidationError,
    NicholsKitError,
)
from .logger import setup_logger

__all__ = [
    'CycNumber',
    'cyclotomic_field',
    'root_of_unity',
    'BoundExceededError',
    'ConventionError',
    'CutoffExceededError',
    'InputValidationError',
    'NicholsKitError',
    'setup_logger',
]
