"""Shared expensive fixtures: ribbon data built once per session."""

from functools import lru_cache

from hopfinv.uqsl2 import build_uqsl2


@lru_cache(maxsize=None)
def data3():
    return build_uqsl2(3)


@lru_cache(maxsize=None)
def data5():
    return build_uqsl2(5)
