""" JSON and CSV output with lossless float formatting

Floats are written with 17 significant digits, complex numbers as [re, im]
pairs (JSON) or as two columns `name_re`, `name_im` (CSV). Keys are sorted so
that the output for a fixed configuration is byte-stable.
"""

import csv
import json
from math import isfinite
from typing import Any, Dict, List, Sequence, Set, TextIO

import attr
import numpy as np

from .curve import CurvePoint


def format_float(value: float) -> str:
    """ 17 significant digits, non-finite values as quoted words """
    value = float(value)
    if isfinite(value):
        return format(value, ".17g")
    if value != value:
        return '"nan"'
    return '"inf"' if value > 0 else '"-inf"'


def to_plain(value: Any) -> Any:
    """ Convert numpy, attrs and complex values into plain JSON data """

    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, CurvePoint):
        return {"kind": value.kind, "z": to_plain(value.z), "v": to_plain(value.v)}
    if hasattr(value, "to_dict"):
        return to_plain(value.to_dict())
    if attr.has(type(value)):
        return to_plain(attr.asdict(value, recurse=False))
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return [to_plain(item) for item in value.tolist()]
    if isinstance(value, dict):
        return {str(key): to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]

    raise TypeError("cannot serialize value of type {}".format(type(value).__name__))


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)

    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, list):
        if not value:
            return "[]"
        items = [_encode(item, indent, level + 1) for item in value]
        return "[\n" + ",\n".join(pad + item for item in items) + "\n" + close + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            "{}: {}".format(json.dumps(key), _encode(value[key], indent, level + 1))
            for key in sorted(value)
        ]
        return "{\n" + ",\n".join(pad + item for item in items) + "\n" + close + "}"

    assert False, "INTERNAL ERROR: value was not converted by to_plain"


def dumps_json(value: Any, indent: int = 2) -> str:
    """ Serialize to a JSON string """
    return _encode(to_plain(value), indent, 0) + "\n"


def write_json(stream: TextIO, value: Any) -> None:
    """ Write a JSON document """
    stream.write(dumps_json(value))


def _flatten_row(row: Dict[str, Any]) -> Dict[str, str]:
    flat: Dict[str, str] = {}
    for key, value in row.items():
        if isinstance(value, (complex, np.complexfloating)):
            flat[key + "_re"] = format_float(value.real).strip('"')
            flat[key + "_im"] = format_float(value.imag).strip('"')
        elif isinstance(value, (bool, np.bool_)):
            flat[key] = "1" if value else "0"
        elif isinstance(value, (float, np.floating)):
            flat[key] = format_float(value).strip('"')
        elif value is None:
            flat[key] = ""
        else:
            flat[key] = str(value)
    return flat


def write_csv(
    stream: TextIO, rows: Sequence[Dict[str, Any]], columns: Sequence[str] = ()
) -> None:
    """ Write rows as CSV; the column order is the given one, else sorted """

    flat: List[Dict[str, str]] = [_flatten_row(row) for row in rows]

    header = list(columns)
    if not header:
        names: Set[str] = set()
        for row in flat:
            names.update(row.keys())
        header = sorted(names)

    writer = csv.DictWriter(stream, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in flat:
        writer.writerow(row)
