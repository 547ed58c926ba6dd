import os
import sys
import logging
from logging.handlers import TimedRotatingFileHandler
from datetime import datetime

from pytz import timezone, UnknownTimeZoneError

from finspinor.config import LOG_DIR, LOG_LEVEL, TIMEZONE


class TZFormatter(logging.Formatter):
    def __init__(self, fmt=None, datefmt=None, tzname="UTC"):
        super().__init__(fmt=fmt, datefmt=datefmt)
        try:
            self.local_tz = timezone(tzname)
        except UnknownTimeZoneError:
            self.local_tz = timezone("UTC")

    def formatTime(self, record, datefmt=None):
        dt = datetime.fromtimestamp(record.created, tz=self.local_tz)
        return dt.strftime(datefmt) if datefmt else dt.isoformat()


def setup_logging():
    # Use the root logger so all library modules inherit it
    logger = logging.getLogger()
    level = logging.getLevelName(str(LOG_LEVEL).upper())
    if not isinstance(level, int):
        level = logging.INFO
    logger.setLevel(level)

    # Avoid adding duplicate handlers when several commands run in one process
    if getattr(setup_logging, "_configured", False):
        return logger

    fmt = "[%(asctime)s] [%(levelname)-7s] %(name)s: %(message)s"
    datefmt = "%Y-%m-%d %H:%M:%S"

    # Console handler -> stderr; stdout is reserved for command results
    sh = logging.StreamHandler(sys.stderr)
    sh.setLevel(level)
    sh.setFormatter(TZFormatter(fmt, datefmt, tzname=TIMEZONE))
    logger.addHandler(sh)

    if LOG_DIR:
        os.makedirs(LOG_DIR, exist_ok=True)
        log_filename = os.path.join(LOG_DIR, "finspinor.log")
        fh = TimedRotatingFileHandler(
            log_filename, when="midnight", interval=1, backupCount=50, utc=False
        )
        fh.setLevel(level)
        fh.setFormatter(TZFormatter(fmt, datefmt, tzname=TIMEZONE))
        logger.addHandler(fh)
        logger.info(f"Writing logs to: {log_filename}")

    setup_logging._configured = True
    return logger
