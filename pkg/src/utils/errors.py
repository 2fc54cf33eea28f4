"""
异常定义

所有业务异常都继承 NicholsKitError，API 层据此转换为 {'success': False, ...} 字典，
CLI 再映射到退出码。
"""
from typing import Optional, Sequence


class NicholsKitError(Exception):
    """工具包异常基类"""

    kind: str = "error"

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def to_dict(self) -> dict:
        return {"kind": self.kind, "error": self.message, "field": self.field}


class InputValidationError(NicholsKitError):
    """输入校验失败（消息中注明违反的条件和字段）"""

    kind = "validation"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}", field=field)


class CutoffExceededError(NicholsKitError):
    """Nichols 代数在截断次数内未终止，有限性无法判定"""

    kind = "cutoff"

    def __init__(self, cutoff: int, dims: Sequence[int] = ()):
        super().__init__(f"cutoff exceeded: 次数 {cutoff} 处仍有非零分量", field="cutoff")
        self.cutoff = cutoff
        self.dims = list(dims)


class BoundExceededError(NicholsKitError):
    """资源保护：规模超过配置上限"""

    kind = "bound"

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"bound exceeded: {what} 规模 {size} 超过上限 {bound}", field=what)
        self.what = what
        self.size = size
        self.bound = bound


class ConventionError(NicholsKitError):
    """定义性刻画校验失败（积分、Gram 矩阵等），说明上游约定有误"""

    kind = "convention"


class SingularMatrixError(ConventionError):
    """矩阵不可逆"""
