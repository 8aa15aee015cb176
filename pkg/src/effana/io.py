"""JSON file formats for algebras and measures.

Algebra document:

    {"names": ["a", "b", ...], "zero": "a", "unit": "b",
     "sums": [["a", "a", "a"], ...]}

Each defined sum appears exactly once per unordered pair; the loader
symmetrizes.  Measure document:

    {"algebra": "path-or-inline", "dim": 2,
     "values": {"a": [0.0, 0.0], "b": [1.0, -1.0], ...}}

The algebra field may be a relative path (resolved against the measure file)
or an inline algebra document, and is optional when the caller supplies the
algebra directly.  Scalar values are accepted as one-dimensional vectors.
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional, Union

import numpy as np

from .core import DEFAULT_MAX_SIZE, EffectAlgebra, EffectAlgebraError
from .measures import DEFAULT_TOLERANCE, Measure

__all__ = [
    "InputFormatError",
    "loads_algebra",
    "load_algebra",
    "dump_algebra",
    "save_algebra",
    "loads_measure",
    "load_measure",
    "dump_measure",
    "save_measure",
]


class InputFormatError(EffectAlgebraError):
    """Unreadable or schema-violating input document."""


def _read_json(path: Union[str, os.PathLike]) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def loads_algebra(doc: Any, *, max_size: int = DEFAULT_MAX_SIZE) -> EffectAlgebra:
    """Build an algebra from a parsed document, checking the schema."""
    if not isinstance(doc, dict):
        raise InputFormatError("algebra document must be a JSON object")
    for key in ("names", "zero", "unit", "sums"):
        if key not in doc:
            raise InputFormatError(f"algebra document missing key {key!r}")
    names = doc["names"]
    if (
        not isinstance(names, list)
        or not names
        or not all(isinstance(s, str) and s for s in names)
    ):
        raise InputFormatError("names must be a non-empty list of non-empty strings")
    if len(set(names)) != len(names):
        raise InputFormatError("names contains duplicate labels")
    index = {s: i for i, s in enumerate(names)}
    for key in ("zero", "unit"):
        if doc[key] not in index:
            raise InputFormatError(f"{key} must be one of names, got {doc[key]!r}")
    sums_doc = doc["sums"]
    if not isinstance(sums_doc, list):
        raise InputFormatError("sums must be a list of [a, b, c] triples")
    sums: list[tuple[str, str, str]] = []
    seen_pairs: set[frozenset] = set()
    for i, entry in enumerate(sums_doc):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise InputFormatError(f"sums[{i}]: expected a simple [a, b, c] triple")
        a, b, c = entry
        for x in (a, b, c):
            if not isinstance(x, str) or x not in index:
                raise InputFormatError(f"sums[{i}]: unknown element name {x!r}")
        pair = frozenset((index[a], index[b]))
        if pair in seen_pairs:
            raise InputFormatError(
                f"sums[{i}]: pair ({a!r}, {b!r}) listed more than once"
            )
        seen_pairs.add(pair)
        sums.append((a, b, c))
    try:
        return EffectAlgebra.from_sums(
            names, doc["zero"], doc["unit"], sums, max_size=max_size
        )
    except EffectAlgebraError:
        raise


def load_algebra(
    path: Union[str, os.PathLike], *, max_size: int = DEFAULT_MAX_SIZE
) -> EffectAlgebra:
    return loads_algebra(_read_json(path), max_size=max_size)


def dump_algebra(algebra: EffectAlgebra) -> dict:
    """Serialize to the document format, one entry per unordered pair."""
    sums = []
    for a, b in algebra.defined_pairs():
        c = algebra.sums[a, b]
        sums.append([algebra.names[a], algebra.names[b], algebra.names[int(c)]])
    return {
        "names": list(algebra.names),
        "zero": algebra.names[algebra.zero],
        "unit": algebra.names[algebra.unit],
        "sums": sums,
    }


def save_algebra(algebra: EffectAlgebra, path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_algebra(algebra), fh, indent=2)
        fh.write("\n")


def _coerce_vector(name: str, raw: Any, dim: Optional[int]) -> list[float]:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        vec = [float(raw)]
    elif isinstance(raw, list) and raw and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw
    ):
        vec = [float(x) for x in raw]
    else:
        raise InputFormatError(
            f"values[{name!r}]: expected a number or a non-empty list of numbers"
        )
    if dim is not None and len(vec) != dim:
        raise InputFormatError(
            f"values[{name!r}]: dimension {len(vec)} does not match dim {dim}"
        )
    return vec


def loads_measure(
    doc: Any,
    algebra: Optional[EffectAlgebra] = None,
    *,
    tol: float = DEFAULT_TOLERANCE,
    base_dir: Optional[str] = None,
    max_size: int = DEFAULT_MAX_SIZE,
) -> Measure:
    """Build a measure from a parsed document.

    When `algebra` is given it wins over any embedded reference; otherwise the
    document must name or inline its algebra.
    """
    if not isinstance(doc, dict):
        raise InputFormatError("measure document must be a JSON object")
    if "values" not in doc or not isinstance(doc["values"], dict):
        raise InputFormatError("measure document needs a values object")
    if algebra is None:
        ref = doc.get("algebra")
        if ref is None:
            raise InputFormatError(
                "measure document has no algebra reference and none was supplied"
            )
        if isinstance(ref, str):
            path = ref if os.path.isabs(ref) else os.path.join(base_dir or ".", ref)
            algebra = load_algebra(path, max_size=max_size)
        elif isinstance(ref, dict):
            algebra = loads_algebra(ref, max_size=max_size)
        else:
            raise InputFormatError("algebra reference must be a path or an object")

    dim = doc.get("dim")
    if dim is not None and (not isinstance(dim, int) or dim < 1):
        raise InputFormatError("dim must be a positive integer")
    raw_values = doc["values"]
    missing = [s for s in algebra.names if s not in raw_values]
    if missing:
        raise InputFormatError(f"values missing elements: {missing}")
    extra = [s for s in raw_values if s not in set(algebra.names)]
    if extra:
        raise InputFormatError(f"values has unknown elements: {extra}")

    vectors = {}
    for name in algebra.names:
        vectors[name] = _coerce_vector(name, raw_values[name], dim)
    lengths = {len(v) for v in vectors.values()}
    if len(lengths) != 1:
        raise InputFormatError(f"values mix dimensions: {sorted(lengths)}")
    arr = np.array([vectors[name] for name in algebra.names], dtype=float)
    return Measure(algebra, arr, tol=tol)


def load_measure(
    path: Union[str, os.PathLike],
    algebra: Optional[EffectAlgebra] = None,
    *,
    tol: float = DEFAULT_TOLERANCE,
    max_size: int = DEFAULT_MAX_SIZE,
) -> Measure:
    doc = _read_json(path)
    return loads_measure(
        doc,
        algebra,
        tol=tol,
        base_dir=os.path.dirname(os.fspath(path)) or ".",
        max_size=max_size,
    )


def dump_measure(
    measure: Measure, algebra_ref: Union[str, dict, None] = None
) -> dict:
    """Serialize a measure; `algebra_ref` may embed a path or inline document."""
    doc: dict[str, Any] = {}
    if algebra_ref is not None:
        doc["algebra"] = algebra_ref
    doc["dim"] = measure.dim
    doc["values"] = {
        name: [float(x) for x in measure.values[i]]
        for i, name in enumerate(measure.algebra.names)
    }
    return doc


def save_measure(
    measure: Measure,
    path: Union[str, os.PathLike],
    algebra_ref: Union[str, dict, None] = None,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_measure(measure, algebra_ref), fh, indent=2)
        fh.write("\n")
