"""Persistent JSON-lines store of search results with verified witnesses.

One record per line.  Loading re-verifies every witness; a corrupt or
non-verifying line aborts the load with its line number (fail-closed).
Concurrent readers are safe; writing is single-writer (rewrite on save).
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import CacheFormatError
from .groups import Basis, GroupKind, GroupSpec, is_difference_basis

DEFAULT_CACHE_PATH = "./diffbase-cache.jsonl"
CACHE_ENV_VAR = "DIFFBASE_CACHE"


@dataclass(frozen=True)
class CacheRecord:
    kind: str          # "cyclic" | "dihedral" | "interval"
    n: int
    delta: int
    witness: Tuple[int, ...]
    certified: bool
    provenance: str
    tool_version: str
    timestamp: float

    def spec(self) -> GroupSpec:
        return GroupSpec(GroupKind(self.kind), self.n)

    def verify(self) -> None:
        b = Basis(self.spec(), tuple(self.witness))
        if len(b) != self.delta:
            raise ValueError(f"witness size {len(b)} != delta {self.delta}")
        if not is_difference_basis(b):
            raise ValueError("witness is not a difference basis")


def default_cache_path() -> Path:
    return Path(os.environ.get(CACHE_ENV_VAR, DEFAULT_CACHE_PATH))


class ResultCache:
    """In-memory view over the cache file, keyed by (kind, n)."""

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._records: Dict[Tuple[str, int], CacheRecord] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._records)

    def get(self, kind, n: int) -> Optional[CacheRecord]:
        key = (kind.value if isinstance(kind, GroupKind) else kind, n)
        return self._records.get(key)

    def put(self, record: CacheRecord) -> None:
        record.verify()
        with self._lock:
            old = self._records.get((record.kind, record.n))
            # never downgrade a certified result
            if old is not None and old.certified and not record.certified:
                return
            self._records[(record.kind, record.n)] = record

    def records(self) -> List[CacheRecord]:
        return sorted(self._records.values(), key=lambda r: (r.kind, r.n))

    def load(self) -> "ResultCache":
        if not self.path.exists():
            return self
        with open(self.path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                    rec = CacheRecord(
                        kind=raw["kind"],
                        n=int(raw["n"]),
                        delta=int(raw["delta"]),
                        witness=tuple(int(x) for x in raw["witness"]),
                        certified=bool(raw["certified"]),
                        provenance=str(raw.get("provenance", "")),
                        tool_version=str(raw.get("tool_version", "")),
                        timestamp=float(raw.get("timestamp", 0.0)),
                    )
                    rec.verify()
                except Exception as e:
                    raise CacheFormatError(
                        f"{self.path}:{line_no}: bad cache record: {e}",
                        line_no=line_no,
                    ) from e
                self.put(rec)
        return self

    def save(self) -> None:
        """Compacting rewrite: one line per (kind, n), sorted."""
        with self._lock:
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                for rec in self.records():
                    d = asdict(rec)
                    d["witness"] = list(rec.witness)
                    fh.write(json.dumps(d) + "\n")
            os.replace(tmp, self.path)


def make_record(
    spec: GroupSpec,
    delta: int,
    witness: Iterable[int],
    certified: bool,
    provenance: str,
    tool_version: str = "",
) -> CacheRecord:
    return CacheRecord(
        kind=spec.kind.value,
        n=spec.n,
        delta=delta,
        witness=tuple(witness),
        certified=certified,
        provenance=provenance,
        tool_version=tool_version,
        timestamp=time.time(),
    )
