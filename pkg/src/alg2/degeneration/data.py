"""Loading and validating the bundled degeneration data file."""
from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

ENV_VAR = "ALG2_DATA"


class DataError(ValueError):
    pass


class UnknownId(KeyError):
    pass


def _bundled(name):
    return resources.files("alg2").joinpath("data", name)


@lru_cache(maxsize=1)
def schema():
    return json.loads(_bundled("graph.schema.json").read_text())


@lru_cache(maxsize=8)
def _load(path: str | None):
    if path is None:
        text = _bundled("graph.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"data file is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        raise DataError(f"data file does not match the schema: {exc.message}") from exc
    return doc


def load(path: str | os.PathLike | None = None) -> dict:
    """The data document; ``path`` overrides ``$ALG2_DATA``, which overrides the bundled file."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    return _load(None if path is None else str(path))


def by_id(items, ident):
    for item in items:
        if item["id"] == ident:
            return item
    raise UnknownId(ident)


@lru_cache(maxsize=1)
def output_schema():
    """JSON schema for everything the command-line tool prints as JSON."""
    return json.loads(_bundled("output.schema.json").read_text())
