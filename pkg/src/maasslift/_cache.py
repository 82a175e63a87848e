"""Precision-monotone memo: a longer exact expansion answers every shorter request."""

from __future__ import annotations

import threading
from fractions import Fraction

from .qseries import PuiseuxSeries


class SeriesCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._store: dict = {}

    def get(self, key, precision: Fraction) -> PuiseuxSeries | None:
        with self._lock:
            hit = self._store.get(key)
        if hit is None:
            return None
        if hit.precision is not None and hit.precision < precision:
            return None
        return hit.truncate(precision)

    def put(self, key, series: PuiseuxSeries) -> None:
        with self._lock:
            old = self._store.get(key)
            if old is None or (old.precision or 0) < (series.precision or 0):
                self._store[key] = series

    def clear(self) -> None:
        with self._lock:
            self._store.clear()
