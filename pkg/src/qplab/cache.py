"""On-disk cache of p_A(0..N): one ``n,value`` file per canonical multiset.

The cache is advisory. A file that fails to parse or does not satisfy the
generating-function identity is thrown away and rebuilt.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Optional

from .partitions import Multiset, check_series, series_values

log = logging.getLogger(__name__)

ENV_VAR = "QPLAB_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "qplab"


class SeriesCache:
    def __init__(self, directory: Optional[os.PathLike] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path_for(self, A: Multiset) -> Path:
        return self.directory / ("A_" + "_".join(map(str, A.parts)) + ".csv")

    def _read(self, A: Multiset) -> Optional[list]:
        path = self.path_for(A)
        if not path.exists():
            return None
        values = []
        try:
            with open(path) as fh:
                for expected, line in enumerate(fh):
                    n, v = line.strip().split(",")
                    if int(n) != expected:
                        raise ValueError(f"row {expected} is labelled {n}")
                    values.append(int(v))
        except (ValueError, OSError) as exc:
            log.warning("ignoring unreadable cache file %s: %s", path, exc)
            return None
        if not check_series(A, values):
            log.warning("ignoring cache file %s: values are not p_A", path)
            return None
        return values

    def get(self, A: Multiset, N: int) -> list:
        """p_A(0..N), served from disk when possible."""
        cached = self._read(A)
        if cached is not None and len(cached) > N:
            return cached[:N + 1]
        values = series_values(A.parts, N)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            path = self.path_for(A)
            if cached is None:
                with open(path, "w") as fh:
                    fh.writelines(f"{n},{v}\n" for n, v in enumerate(values))
            else:
                with open(path, "a") as fh:
                    fh.writelines(f"{n},{values[n]}\n" for n in range(len(cached), N + 1))
        except OSError as exc:
            log.warning("could not write series cache: %s", exc)
        return values


class NoCache:
    def get(self, A: Multiset, N: int) -> list:
        return series_values(A.parts, N)
