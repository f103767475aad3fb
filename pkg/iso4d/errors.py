"""
工具包异常定义
"""
from typing import Dict, Optional, Sequence


class Iso4dError(Exception):
    """工具包所有异常的基类"""


class MalformedExpressionError(Iso4dError):
    """表达式格式错误（例如分母恒为零）"""


class PoleError(Iso4dError):
    """代换后分母恒为零"""


class PoleAtPointError(PoleError):
    """在给定取值点处分母为零"""

    def __init__(self, message: str, point: Optional[Dict] = None):
        super().__init__(message)
        self.point = point


class PoleOrderError(PoleError):
    """极限点处存在极点，携带极点阶数"""

    def __init__(self, order: int, symbol: str = "eps", detail: str = ""):
        self.order = order
        self.symbol = symbol
        self.detail = detail
        super().__init__(f"{symbol}=0 处存在 {order} 阶极点{(': ' + detail) if detail else ''}")


class SpectralParseError(Iso4dError):
    """谱型字符串无法解析"""


class SpectralValidationError(Iso4dError):
    """谱型违反加细条件"""


class SizeConsistencyError(SpectralValidationError):
    """各奇点处的矩阵大小 m 不一致"""

    def __init__(self, sizes: Sequence[int], text: str = ""):
        self.sizes = list(sizes)
        super().__init__(f"矩阵大小不一致 {tuple(self.sizes)}{(' 于 ' + repr(text)) if text else ''}")


class UnknownSystemError(Iso4dError):
    """未知的系统、线性问题或退化规则编号"""

    def __init__(self, system_id: str, kind: str = "系统"):
        self.system_id = system_id
        super().__init__(f"未知{kind}: {system_id}")


class ArityError(Iso4dError):
    """参数个数不匹配"""


class PreconditionError(Iso4dError):
    """调用前置条件不满足"""


class ResampleSignal(Iso4dError):
    """随机样本落在分母零点上，调用方需要重新采样"""


class MalformedRuleError(Iso4dError):
    """退化规则代换产生恒为零的分母"""


class UnresolvedClusteringError(Iso4dError):
    """特征值聚类间隙不超过容差，无法判定"""


class RamifiedTypeError(Iso4dError):
    """首项不可对角化（分歧型，不在处理范围内）"""


class StepUnderflowError(Iso4dError):
    """积分步长低于下限"""


class InvalidInitialPointError(Iso4dError):
    """初始点落在向量场分母零点上"""
