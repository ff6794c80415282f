"""JSON file formats for operators, structure constants and reports.

Output is canonical: fixed key order, entries sorted, scalars in the
canonical string form, two-space indentation and a trailing newline, so
saving what was loaded reproduces the file byte for byte.
"""

import json

from .bialgebra import StructureConstants
from .errors import SchemaError
from .scalars import field_by_tag
from .tensor import Operator


def _scalar_string(field, value):
    return field.format(value)


def _parse_scalar(field, text, path):
    if not isinstance(text, str):
        raise SchemaError(path, "scalar values must be strings")
    try:
        return field.parse(text)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _field_from(data, path):
    tag = data.get("field")
    if not isinstance(tag, str):
        raise SchemaError(path + ".field", "missing or non-string field tag")
    try:
        return field_by_tag(tag)
    except ValueError as exc:
        raise SchemaError(path + ".field", str(exc)) from None


def _index_list(value, path, width=None):
    if (not isinstance(value, list)
            or any(not isinstance(i, int) or isinstance(i, bool)
                   for i in value)):
        raise SchemaError(path, "expected a list of integers")
    if width is not None and len(value) != width:
        raise SchemaError(path, "expected %d indices" % width)
    return tuple(value)


def operator_to_json(op):
    entries = []
    for (row, col) in sorted(op.entries):
        entries.append({"row": list(row), "col": list(col),
                        "value": _scalar_string(op.field,
                                                op.entries[(row, col)])})
    return {"field": op.field.tag,
            "row_dims": list(op.row_dims),
            "col_dims": list(op.col_dims),
            "entries": entries}


def operator_from_json(data, path="$"):
    if not isinstance(data, dict):
        raise SchemaError(path, "expected an object")
    field = _field_from(data, path)
    for key in ("row_dims", "col_dims", "entries"):
        if key not in data:
            raise SchemaError(path + "." + key, "missing")
    row_dims = _index_list(data["row_dims"], path + ".row_dims")
    col_dims = _index_list(data["col_dims"], path + ".col_dims")
    if not isinstance(data["entries"], list):
        raise SchemaError(path + ".entries", "expected a list")
    entries = {}
    for i, item in enumerate(data["entries"]):
        here = "%s.entries[%d]" % (path, i)
        if not isinstance(item, dict):
            raise SchemaError(here, "expected an object")
        for key in ("row", "col", "value"):
            if key not in item:
                raise SchemaError(here + "." + key, "missing")
        row = _index_list(item["row"], here + ".row", len(row_dims))
        col = _index_list(item["col"], here + ".col", len(col_dims))
        if (row, col) in entries:
            raise SchemaError(here, "duplicate entry at %r" % ((row, col),))
        entries[(row, col)] = _parse_scalar(field, item["value"],
                                            here + ".value")
    try:
        return Operator(row_dims, col_dims, entries, field)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _coeff_rows(table, width, field):
    rows = []
    for key in sorted(table):
        rows.append(list(key) + [_scalar_string(field, table[key])])
    return rows


def _coeff_table(rows, dim, width, field, path):
    if not isinstance(rows, list):
        raise SchemaError(path, "expected a list")
    table = {}
    for i, item in enumerate(rows):
        here = "%s[%d]" % (path, i)
        if not isinstance(item, list) or len(item) != width + 1:
            raise SchemaError(
                here, "expected [%s, value]" % ", ".join(["index"] * width))
        key = _index_list(item[:width], here)
        if any(not 0 <= k < dim for k in key):
            raise SchemaError(here, "index out of range for dim %d" % dim)
        if key in table:
            raise SchemaError(here, "duplicate key %r" % (key,))
        table[key] = _parse_scalar(field, item[width], here)
    return table


def constants_to_json(sc):
    data = {"field": sc.field.tag, "dim": sc.dim,
            "m": _coeff_rows(sc.m, 3, sc.field),
            "mu": _coeff_rows(sc.mu, 3, sc.field)}
    if sc.unit is not None:
        data["unit"] = [_scalar_string(sc.field, v) for v in sc.unit]
    if sc.counit is not None:
        data["counit"] = [_scalar_string(sc.field, v) for v in sc.counit]
    if sc.antipode is not None:
        data["antipode"] = _coeff_rows(sc.antipode, 2, sc.field)
    if sc.antipode_inv is not None:
        data["antipode_inv"] = _coeff_rows(sc.antipode_inv, 2, sc.field)
    return data


def constants_from_json(data, path="$"):
    if not isinstance(data, dict):
        raise SchemaError(path, "expected an object")
    field = _field_from(data, path)
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError(path + ".dim", "expected a positive integer")
    for key in ("m", "mu"):
        if key not in data:
            raise SchemaError(path + "." + key, "missing")
    m = _coeff_table(data["m"], dim, 3, field, path + ".m")
    mu = _coeff_table(data["mu"], dim, 3, field, path + ".mu")

    def vector(key):
        if key not in data:
            return None
        items = data[key]
        here = path + "." + key
        if not isinstance(items, list) or len(items) != dim:
            raise SchemaError(here, "expected %d values" % dim)
        return [_parse_scalar(field, v, "%s[%d]" % (here, i))
                for i, v in enumerate(items)]

    def pairs(key):
        if key not in data:
            return None
        return _coeff_table(data[key], dim, 2, field, path + "." + key)

    unit = vector("unit")
    counit = vector("counit")
    antipode = pairs("antipode")
    antipode_inv = pairs("antipode_inv")
    try:
        return StructureConstants(dim, field, m, mu, unit=unit,
                                  counit=counit, antipode=antipode,
                                  antipode_inv=antipode_inv)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def dump_json(data):
    return json.dumps(data, indent=2) + "\n"


def save_json(path, data):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_json(data))


def load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", "malformed JSON: %s" % exc) from None


def load_operator(path):
    return operator_from_json(load_json(path))


def save_operator(path, op):
    save_json(path, operator_to_json(op))


def load_constants(path):
    return constants_from_json(load_json(path))


def save_constants(path, sc):
    save_json(path, constants_to_json(sc))
