from .logger import Logger, LoggerFactory, get_logger

__all__ = ["Logger", "LoggerFactory", "get_logger"]
