import logging
import shutil
import time
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import jsonlines

from src.exceptions import CheckpointMismatch
from src.storage.CheckpointStorageInterface import CheckpointStorageInterface
from src.storage.SettledEntry import SettledEntry

logger = logging.getLogger(__name__)


class JsonlCheckpointStorage(CheckpointStorageInterface):
    """
    Checkpoint as a JSON-lines file: a header object on the first line, then one
    {"n": [...], "min": int|null, "mf": bool} object per settled multidegree.

    When `resume_from` is given its entries are replayed; a different `path` receives a
    copy of the resumed file before new entries are appended.
    """

    def __init__(self, path: Optional[str], resume_from: Optional[str] = None, flush_interval: float = 60.0) -> None:
        self.path = Path(path) if path else Path(resume_from)
        self.resume_from = Path(resume_from) if resume_from else None
        self.flush_interval = flush_interval
        self._writer: Optional[jsonlines.Writer] = None
        self._handle = None
        self._last_flush = time.monotonic()

    def open(self, header: Dict[str, Any]) -> List[SettledEntry]:
        entries: List[SettledEntry] = []
        if self.resume_from is not None:
            entries = self._replay(header)
            if self.path.resolve() != self.resume_from.resolve():
                shutil.copyfile(self.resume_from, self.path)
            self._handle = open(self.path, "a", encoding="utf-8")
            self._writer = jsonlines.Writer(self._handle, sort_keys=True)
        else:
            self._handle = open(self.path, "w", encoding="utf-8")
            self._writer = jsonlines.Writer(self._handle, sort_keys=True)
            self._writer.write(header)
            self.flush()
        logger.info("checkpoint %s: %d settled entries replayed", self.path, len(entries))
        return entries

    def save(self, entries: Iterable[SettledEntry]) -> bool:
        self._writer.write_all(entry.to_record() for entry in entries)
        if time.monotonic() - self._last_flush >= self.flush_interval:
            self.flush()
            return True
        return False

    def flush(self) -> None:
        if self._handle is not None:
            self._handle.flush()
            logger.debug("checkpoint %s flushed", self.path)
        self._last_flush = time.monotonic()

    def close(self) -> None:
        if self._writer is not None:
            self.flush()
            self._writer.close()
            self._handle.close()
            self._writer = None
            self._handle = None

    def _replay(self, header: Dict[str, Any]) -> List[SettledEntry]:
        with jsonlines.open(self.resume_from) as reader:
            lines = reader.iter(type=dict, skip_invalid=True)
            stored = next(lines, None)
            if stored != header:
                raise CheckpointMismatch(f"checkpoint header {stored} does not match this run {header}")
            # a crash can leave a torn last line; skip_invalid drops it
            return [SettledEntry.from_record(record) for record in lines]
