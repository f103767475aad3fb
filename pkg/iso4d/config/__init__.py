"""
配置模块
"""
from .toolkit_config import ToolkitConfig, TOOLKIT_VERSION, REPORT_SCHEMA_VERSION
from .logging_config import setup_logging

__all__ = ["ToolkitConfig", "TOOLKIT_VERSION", "REPORT_SCHEMA_VERSION", "setup_logging"]
