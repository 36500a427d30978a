"""JSON loading and canonical dumping of preposets, fans and reports."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import BraidFanError, InvalidFan
from .fan import Cone, Fan
from .preposet import Preposet


class SchemaError(BraidFanError):
    kind = "schema-error"


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def _relations(value: Any, what: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise SchemaError(f"{what} must be a list of [lo, hi] pairs")
    rels = []
    for pair in value:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError(f"{what}: {pair!r} is not a [lo, hi] pair")
        rels.append((_int(pair[0], what), _int(pair[1], what)))
    return rels


def preposet_from_json(data: Any) -> Preposet:
    """Read ``{"n": int, "relations": [[lo, hi], ...]}``; the closure is taken."""
    if not isinstance(data, dict) or "n" not in data:
        raise SchemaError("a preposet needs an object with key 'n'")
    return Preposet.from_relations(_int(data["n"], "n"), _relations(data.get("relations", []), "relations"))


def fan_from_json(data: Any) -> Fan:
    """Read ``{"n": int, "maximal_cones": [{"relations": [...]}, ...]}``."""
    if not isinstance(data, dict) or "n" not in data or "maximal_cones" not in data:
        raise SchemaError("a fan needs an object with keys 'n' and 'maximal_cones'")
    n = _int(data["n"], "n")
    if n < 2:
        raise SchemaError(f"n must be at least 2, got {n}")
    cones_data = data["maximal_cones"]
    if not isinstance(cones_data, list) or not cones_data:
        raise SchemaError("'maximal_cones' must be a nonempty list")
    cones = []
    for k, entry in enumerate(cones_data):
        if not isinstance(entry, dict) or "relations" not in entry:
            raise SchemaError(f"cone {k} needs a 'relations' list")
        label = Preposet.from_relations(n, _relations(entry["relations"], f"cone {k} relations"))
        if not label.is_connected():
            raise InvalidFan(f"cone {k} has a disconnected label {label}")
        cones.append(Cone(label))
    return Fan(n, tuple(cones))


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def load_fan(path: str | Path) -> Fan:
    return fan_from_json(load_json(path))


def _format(value: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, dict) and value:
        items = [f"{pad}{json.dumps(k)}: {_format(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list) and any(isinstance(v, dict) for v in value):
        items = [pad + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    # integer arrays (and nested ones) stay on one line
    return json.dumps(value, separators=(", ", ": "))


def dumps(payload: Any) -> str:
    """Deterministic, diff-friendly JSON text."""
    return _format(payload, 0) + "\n"


def write_json(path: str | Path, payload: Any) -> None:
    Path(path).write_text(dumps(payload), encoding="utf-8")
