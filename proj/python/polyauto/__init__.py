"""Dynamics of shift-like maps and skew products of Henon maps."""

import json as _json

from ._polyauto import (
    ArityMismatch,
    Error,
    InputError,
    Map,
    SectorViolation,
    boettcher,
    classify,
    green,
    load_map,
    map_from_json,
    render,
)
from ._polyauto import verify_json as _verify_json

__all__ = [
    "ArityMismatch",
    "Error",
    "InputError",
    "Map",
    "SectorViolation",
    "boettcher",
    "classify",
    "green",
    "load_map",
    "map_from_json",
    "render",
    "verify",
]


def verify(maps, samples=200, seed=1, threads=0):
    """Run the verification suite and return the report as a dict."""
    loaded = [m if isinstance(m, Map) else load_map(str(m)) for m in maps]
    return _json.loads(_verify_json(loaded, samples, seed, threads))
