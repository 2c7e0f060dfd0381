"""
Configuração de logging
"""
import logging
import os
import sys

from dotenv import load_dotenv

LOGGER_NAMESPACE = "loopframe"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_configured = False


def setup_logging(level: str = None) -> logging.Logger:
    """
    Configura o logger raiz do pacote (uma única vez)

    Args:
        level: Nível explícito; se None, usa LOOPFRAME_LOG_LEVEL ou WARNING

    Returns:
        Logger raiz do pacote
    """
    global _configured
    load_dotenv()
    root = logging.getLogger(LOGGER_NAMESPACE)

    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.propagate = False
        _configured = True

    level_name = level or os.getenv("LOOPFRAME_LOG_LEVEL", "WARNING")
    root.setLevel(getattr(logging, str(level_name).upper(), logging.WARNING))
    return root


def get_logger(name: str) -> logging.Logger:
    """Logger filho dentro do namespace do pacote"""
    if name.startswith(LOGGER_NAMESPACE):
        return logging.getLogger(name)
    return logging.getLogger(f"{LOGGER_NAMESPACE}.{name}")
