"""JSON ring-table files.

Schema: ``{"order": n, "zero": i, "one": i | null, "add": [[...]],
"mul": [[...]], "label": str}`` with optional ``"element_names"``.  The
additive inverses and exponent are derived on load.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .axioms import validate_axioms
from .ring import AxiomError, RingTable, SchemaError


def to_dict(ring: RingTable) -> dict:
    d = {
        "order": ring.order,
        "zero": ring.zero,
        "one": ring.one,
        "add": ring.add.tolist(),
        "mul": ring.mul.tolist(),
        "label": ring.label,
    }
    names = ring.element_names
    if names is not None:
        d["element_names"] = names
    return d


def serialize(ring: RingTable) -> bytes:
    return json.dumps(to_dict(ring), separators=(",", ":")).encode()


def _table(data, key, n):
    rows = data.get(key)
    if not isinstance(rows, list) or len(rows) != n:
        raise SchemaError(f"{key!r} must be a list of {n} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{key!r} row {i} must have {n} entries")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise SchemaError(f"{key!r} row {i} has invalid entry {v!r}")
    return np.array(rows, dtype=np.int64).reshape(n, n)


def from_dict(data, validate: bool = True) -> RingTable:
    if not isinstance(data, dict):
        raise SchemaError("ring file must hold a JSON object")
    n = data.get("order")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("'order' must be a positive integer")
    zero = data.get("zero")
    if not isinstance(zero, int) or not 0 <= zero < n:
        raise SchemaError("'zero' must be an element index")
    one = data.get("one")
    if one is not None and (not isinstance(one, int) or not 0 <= one < n):
        raise SchemaError("'one' must be an element index or null")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise SchemaError("'label' must be a string")
    add = _table(data, "add", n)
    mul = _table(data, "mul", n)
    names = data.get("element_names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise SchemaError("'element_names' must list one name per element")
    ring = RingTable.from_tables(add, mul, zero, one=one, label=label,
                                 names=None if names is None else [str(s) for s in names])
    if validate:
        violations = validate_axioms(ring)
        if violations:
            raise AxiomError(violations)
    return ring


def load(data: bytes | str, validate: bool = True) -> RingTable:
    try:
        obj = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"malformed ring file: {exc}") from exc
    return from_dict(obj, validate=validate)


def load_file(path, validate: bool = True) -> RingTable:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read ring file {path}: {exc}") from exc
    return load(raw, validate=validate)


def save_file(ring: RingTable, path) -> None:
    Path(path).write_bytes(serialize(ring))
