"""
Subclosure - Logging Setup
"""

import logging
import sys
from typing import Optional

from src.utils.config import Config, get_config


def configure_logging(config: Optional[Config] = None, verbose: bool = False) -> logging.Logger:
    """Install one stderr handler on the package logger; stdout stays free for results"""
    config = config or get_config()
    level = logging.DEBUG if verbose else getattr(logging, str(config.get('logging.level', 'WARNING')).upper(),
                                                  logging.WARNING)
    root = logging.getLogger("src")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(config.get('logging.format', '%(levelname)s %(name)s: %(message)s')))
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
    return root
