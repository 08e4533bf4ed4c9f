"""Access to the bundled reference tables and JSON schemas."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load_golden() -> dict:
    with resources.files("orthoint").joinpath("data/golden.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    with resources.files("orthoint").joinpath(f"schemas/{name}.schema.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


def pants_list() -> list[tuple[int, int, int]]:
    return [tuple(t) for t in load_golden()["pants_classification"]]


def tori_list() -> list[tuple[int, int, int]]:
    return [tuple(t) for t in load_golden()["tori_classification"]]


def label_aliases(table: str) -> dict[tuple, tuple]:
    return {tuple(a["label"]): tuple(a["triple"]) for a in load_golden()["label_aliases"]
            if a["table"] == table}
