"""Embedded expected-value tables for the reproduce command."""

from __future__ import annotations

import json
from importlib import resources

TABLE_IDS = (
    "dlu-x7",
    "dlu-dillon",
    "dlu-cubic-quadratic",
    "dlu-subfield-branch",
    "spectrum-x7-vs-g",
    "spectrum-inverse",
    "spectrum-modified-inverse",
    "properties-f-vs-inverse",
)


def load_expected(table_id: str) -> dict:
    """The embedded expected-value record for one reproducible table."""
    if table_id not in TABLE_IDS:
        raise KeyError(f"unknown table id: {table_id!r}")
    path = resources.files(__package__).joinpath(f"expected/{table_id}.json")
    return json.loads(path.read_text())
