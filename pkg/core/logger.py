"""
Logging for the toolkit: one 'ecgray' logger, a detailed file log and a
terse stderr console that stays clear of tqdm progress bars.
"""
import logging
import sys
from pathlib import Path
from typing import Optional

from tqdm import tqdm

LOGGER_NAME = 'ecgray'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
CONSOLE_FORMAT = '%(levelname)s: %(message)s'


class ProgressAwareHandler(logging.StreamHandler):
    """Console handler that prints through tqdm.write so open bars are redrawn below the line."""

    def __init__(self, stream=None):
        super().__init__(stream or sys.stderr)

    def emit(self, record: logging.LogRecord):
        try:
            tqdm.write(self.format(record), file=self.stream)
            self.flush()
        except Exception:
            self.handleError(record)


class Logger:
    """Owner of the shared 'ecgray' logger's handlers."""

    _instance: Optional[logging.Logger] = None

    @classmethod
    def setup(cls, log_file: Optional[str] = None, log_level: str = 'INFO') -> logging.Logger:
        """
        Attach the file and console handlers once per process.

        Args:
            log_file: Path to log file, or None for console logging only
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

        Returns:
            The 'ecgray' logger
        """
        if cls._instance is not None:
            return cls._instance

        level = getattr(logging, log_level.upper(), logging.INFO)
        logger = logging.getLogger(LOGGER_NAME)
        logger.setLevel(level)
        logger.handlers.clear()

        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_path)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
            logger.addHandler(file_handler)

        # stdout carries command output
        console_handler = ProgressAwareHandler(sys.stderr)
        console_handler.setLevel(max(logging.WARNING, level))
        console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        logger.addHandler(console_handler)

        cls._instance = logger
        return logger

    @classmethod
    def reset(cls):
        """Drop the configured handlers so the next setup() starts fresh."""
        if cls._instance is not None:
            for handler in list(cls._instance.handlers):
                handler.close()
                cls._instance.removeHandler(handler)
        cls._instance = None
