"""On-disk cache: one JSON file per (kind, g, v) plus a manifest.

The manifest records a format version and a sha256 per file.  Entries from
another format version, or whose content hash no longer matches, are
ignored (never migrated) and will be recomputed and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path

FORMAT_VERSION = 1
ENV_VAR = "BCMOTZKIN_CACHE"
DEFAULT_DIR = ".bcmotzkin_cache"


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_DIR))


def dumps(obj) -> str:
    """Canonical JSON text used for every artifact file."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


class DiskCache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self._lock = threading.Lock()

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def _read_manifest(self) -> dict:
        try:
            data = json.loads(self.manifest_path.read_text())
        except (OSError, ValueError):
            return {"format_version": FORMAT_VERSION, "entries": {}}
        if data.get("format_version") != FORMAT_VERSION:
            return {"format_version": FORMAT_VERSION, "entries": {}}
        return data

    @staticmethod
    def name(kind: str, g: int, v: int) -> str:
        return f"{kind}_{g}_{v}"

    def load(self, kind: str, g: int, v: int):
        name = self.name(kind, g, v)
        entry = self._read_manifest()["entries"].get(name)
        if entry is None:
            return None
        path = self.root / entry["file"]
        try:
            text = path.read_text()
        except OSError:
            return None
        if hashlib.sha256(text.encode()).hexdigest() != entry["sha256"]:
            return None
        return json.loads(text)

    def save(self, kind: str, g: int, v: int, payload) -> Path:
        name = self.name(kind, g, v)
        text = dumps(payload)
        with self._lock:
            self.root.mkdir(parents=True, exist_ok=True)
            path = self.root / f"{name}.json"
            _atomic_write(path, text)
            manifest = self._read_manifest()
            manifest["entries"][name] = {
                "file": path.name,
                "sha256": hashlib.sha256(text.encode()).hexdigest(),
            }
            _atomic_write(self.manifest_path, dumps(manifest))
        return path

    def keys(self) -> list[str]:
        return sorted(self._read_manifest()["entries"])


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
