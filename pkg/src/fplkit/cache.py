"""On-disk result cache keyed by operation, size, class and code version.

Entries are JSON files written with create-then-rename, so a reader never
sees a partial file and concurrent writers of the same key are harmless.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any

from . import __version__

CODE_VERSION = f"fplkit-{__version__}"
ENV_VAR = "FPLKIT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "fplkit"


class ResultCache:
    def __init__(self, root: str | os.PathLike | None = None, version: str = CODE_VERSION):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.version = version

    def key(self, operation: str, size: int, cls: str, extra: Any = None) -> list:
        return [operation, size, cls, extra, self.version]

    def _path(self, key: list) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()
        return self.root / f"{digest}.json"

    def get(self, operation: str, size: int, cls: str, extra: Any = None) -> Any | None:
        key = self.key(operation, size, cls, extra)
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        if entry.get("key") != key:
            return None
        return entry["value"]

    def put(self, operation: str, size: int, cls: str, value: Any, extra: Any = None) -> None:
        key = self.key(operation, size, cls, extra)
        path = self._path(key)
        self.root.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "value": value, "created_at": time.time()}
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


class NullCache:
    """Stand-in used with ``--no-cache``."""

    def get(self, *args, **kwargs) -> None:
        return None

    def put(self, *args, **kwargs) -> None:
        pass
