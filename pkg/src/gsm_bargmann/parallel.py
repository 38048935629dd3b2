"""Chunked, order-preserving fan-out over point batches.

Chunk boundaries depend only on the chunk size, never on the worker count,
and results are concatenated in chunk order, so output bits do not change
with ``GSM_NUM_WORKERS``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def num_workers() -> int:
    raw = os.environ.get("GSM_NUM_WORKERS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def map_chunks(work, *arrays, chunk: int = 2048) -> np.ndarray:
    n = len(arrays[0])
    bounds = [(i, min(i + chunk, n)) for i in range(0, n, chunk)] or [(0, 0)]
    pieces = [tuple(a[i:j] for a in arrays) for i, j in bounds]
    workers = min(num_workers(), len(pieces))
    if workers <= 1:
        results = [work(*p) for p in pieces]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: work(*p), pieces))
    return np.concatenate(results, axis=0)
