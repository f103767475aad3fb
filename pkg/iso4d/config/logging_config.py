"""
日志配置
"""
import logging
from typing import Optional

try:
    import colorlog
    COLORLOG_AVAILABLE = True
except ImportError:
    colorlog = None
    COLORLOG_AVAILABLE = False

LOG_FORMAT = "%(asctime)s - [iso4d] - %(levelname)s - %(message)s"

_configured = False


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """配置 iso4d 根日志器（只安装一次处理器）"""
    global _configured
    from .toolkit_config import ToolkitConfig

    logger = logging.getLogger("iso4d")
    logger.setLevel((level or ToolkitConfig.LOG_LEVEL).upper())

    if not _configured:
        handler = logging.StreamHandler()
        if COLORLOG_AVAILABLE:
            formatter = colorlog.ColoredFormatter(
                "%(log_color)s" + LOG_FORMAT,
                log_colors={
                    "DEBUG": "cyan",
                    "INFO": "green",
                    "WARNING": "yellow",
                    "ERROR": "red",
                    "CRITICAL": "bold_red",
                },
            )
        else:
            formatter = logging.Formatter(LOG_FORMAT)
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False
        _configured = True

    return logger
