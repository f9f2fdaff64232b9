"""Bundled JSON schemas for the CLI's machine-readable output."""

from __future__ import annotations

import json
from functools import cache
from importlib import resources

NAMES = ("colouring", "rainbow_range", "family_check", "run_report")


@cache
def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema {name!r}; known: {NAMES}")
    return json.loads(resources.files("rainbow_nbhd").joinpath(f"schemas/{name}.json").read_text())
