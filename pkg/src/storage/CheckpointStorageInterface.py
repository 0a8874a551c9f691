from typing import Any, Dict, Iterable, List

from src.storage.SettledEntry import SettledEntry


class CheckpointStorageInterface:
    """
    Interface for search checkpoint storage.
    You have to implement this method when you make a new storage class.
    """

    def open(self, header: Dict[str, Any]) -> List[SettledEntry]:
        """
        Prepare the storage for a run described by `header`, replaying earlier progress.

        Args:
            header (Dict[str, Any]): identity of the run (type, rank, numbering, ...)

        Returns:
            List[SettledEntry]: entries settled by an earlier run, empty for a fresh one

        Raises:
            CheckpointMismatch: the stored header belongs to a different run
        """
        pass

    def save(self, entries: Iterable[SettledEntry]) -> bool:
        """
        Append settled entries.

        Returns:
            bool: True if the storage was flushed to disk by this call.
        """
        pass

    def flush(self) -> None:
        """
        Force everything saved so far to durable storage.
        """
        pass

    def close(self) -> None:
        pass
