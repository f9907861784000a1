import logging

from .log_config import setup_logger
from .settings import Settings, get_settings

setup_logger()
logger = logging.getLogger(__name__)

__all__ = ["Settings", "get_settings", "setup_logger"]
