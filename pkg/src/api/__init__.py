# API 模块 - CLI 调用的统一入口
from .api import Api

__all__ = ['Api']
