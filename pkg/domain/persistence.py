from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from domain.file_lock import ExportLock, ExportLockedError

logger = logging.getLogger(__name__)


def dumps_document(payload: dict[str, Any]) -> str:
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if not text.endswith("\n"):
        text += "\n"
    return text


def save_document(path: str | Path, text: str) -> None:
    lock = ExportLock()
    if not lock.acquire_for_path(path):
        raise ExportLockedError(f"Export denied: {path} is locked by another process.")
    try:
        lock.write_text(text)
        logger.info("Wrote %d bytes to %s", len(text.encode("utf-8")), path)
    finally:
        lock.release()


def load_document(path: str | Path) -> dict[str, Any]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(payload, dict) or payload.get("schema") != 1:
        raise ValueError(f"Invalid export file {path}: missing schema 1 marker")
    return payload
