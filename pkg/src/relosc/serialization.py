"""Deterministic text encoding of numeric payloads.

Floats are written with Python's shortest round-trip representation (up to 17
significant digits), so parsing the output recovers the exact double and
identical inputs produce byte-identical files.
"""
from __future__ import annotations

import json

__all__ = ["json_dumps", "fmt_float"]


def fmt_float(x: float) -> str:
    return repr(float(x))


def json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=True)
