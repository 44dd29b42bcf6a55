"""Machine-readable report documents: exact numbers, fixed field order, stable bytes."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources

from nashgate import __version__

SCHEMA_RESOURCE = "report.schema.json"


def exact(value):
    """Recursively convert Fractions to {"num", "den"} and tuples to lists."""
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {k: exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__} exactly")


def digest(canonical_text: str) -> str:
    return "sha256:" + hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


def make_report(command: str, canonical_input: str, payload: dict) -> dict:
    return {
        "command": command,
        "input_digest": digest(canonical_input),
        "payload": exact(payload),
        "version": __version__,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("nashgate.schemas").joinpath(SCHEMA_RESOURCE).read_text(encoding="utf-8"))
