"""
iso4d：四维 Painlevé 型方程的目录、验证与数值工具包
"""
from .config import TOOLKIT_VERSION

__version__ = TOOLKIT_VERSION

__all__ = ["__version__"]
