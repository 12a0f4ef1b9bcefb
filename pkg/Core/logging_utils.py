# Core/logging_utils.py
import os, sys

from loguru import logger

FILE_FORMAT = "{time:HH:mm:ss} [{level}] {name}: {message}"
CONSOLE_FORMAT = "{level} {name}: {message}"


def setup_logging(level="INFO", app_name="MarcumPhi", log_file=True):
    logger.remove()

    if log_file:
        log_dir = os.path.join(os.path.expanduser("~"), app_name, "logs")
        os.makedirs(log_dir, exist_ok=True)
        logger.add(
            os.path.join(log_dir, f"{app_name.lower()}.log"),
            level=level,
            format=FILE_FORMAT,
            encoding="utf-8",
        )

    # Console runs only
    if getattr(sys, "stderr", None) is not None:
        logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT)

    return logger
