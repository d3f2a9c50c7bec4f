from __future__ import annotations

import logging
from pathlib import Path
from typing import IO

import portalocker

logger = logging.getLogger(__name__)


class ExportLockedError(PermissionError):
    pass


class ExportLock:
    """Exclusive, non-blocking lock on an export target held while it is rewritten."""

    def __init__(self) -> None:
        self._lock: portalocker.Lock | None = None
        self._handle: IO[str] | None = None

    @property
    def owns_lock(self) -> bool:
        return self._lock is not None

    def acquire_for_path(self, path: str | Path) -> bool:
        self.release()
        target_path = Path(path)
        lock = portalocker.Lock(
            str(target_path),
            mode="a+",
            timeout=0,
            flags=portalocker.LOCK_EX | portalocker.LOCK_NB,
            encoding="utf-8",
        )
        try:
            handle = lock.acquire()
        except portalocker.exceptions.LockException:
            logger.debug("Export target %s is locked elsewhere", target_path)
            return False

        self._lock = lock
        self._handle = handle
        return True

    def write_text(self, text: str) -> None:
        if self._handle is None:
            raise ExportLockedError("Write denied: export target is not locked by this process.")
        self._handle.seek(0)
        self._handle.truncate()
        self._handle.write(text)
        self._handle.flush()

    def release(self) -> None:
        if self._lock is None:
            return
        try:
            self._lock.release()
        finally:
            self._lock = None
            self._handle = None
