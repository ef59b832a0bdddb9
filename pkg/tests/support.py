"""Shared, memoised computations for the test modules."""

from __future__ import annotations

import time
from functools import lru_cache

from hopfribbon.catalog import catalog_ids, load
from hopfribbon.double import double
from hopfribbon.radford import radford_data
from hopfribbon.ribbon import classify

ALL_IDS = catalog_ids()
SMALL_IDS = [cid for cid in ALL_IDS if load(cid).dim <= 9]
GROUP_IDS = [cid for cid in ALL_IDS if cid.startswith("group-")]

TIMINGS: dict[str, float] = {}


@lru_cache(maxsize=None)
def algebra(cid: str):
    return load(cid)


@lru_cache(maxsize=None)
def qt(cid: str):
    t0 = time.perf_counter()
    out = double(algebra(cid))
    TIMINGS[f"double:{cid}"] = time.perf_counter() - t0
    return out


@lru_cache(maxsize=None)
def radford(cid: str):
    return radford_data(algebra(cid))


@lru_cache(maxsize=None)
def double_radford(cid: str):
    return radford_data(qt(cid).algebra)


@lru_cache(maxsize=None)
def report(cid: str):
    return classify(algebra(cid), qt(cid))
