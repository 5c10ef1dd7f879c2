"""Deterministic table emission: CSV with '#' comment headers, or JSON.

Floats are printed with %.17g so 64-bit values round-trip losslessly; the
same config and seed therefore always produce byte-identical files.
"""

import json
import sys

__all__ = ["format_value", "render_csv", "render_json", "write_report"]


def format_value(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def render_csv(columns, rows, header_lines, footer=None):
    out = []
    for line in header_lines:
        out.append(f"# {line}")
    out.append(",".join(columns))
    for row in rows:
        out.append(",".join(format_value(v) for v in row))
    if footer is not None:
        out.append("# footer " + json.dumps(footer, sort_keys=True))
    return "\n".join(out) + "\n"


def _jsonable(v):
    if isinstance(v, float) and not (v == v and abs(v) != float("inf")):
        return None  # strict JSON has no NaN/Infinity
    return v


def render_json(columns, rows, header, footer=None):
    doc = {
        "header": header,
        "columns": list(columns),
        "rows": [[_jsonable(v) for v in row] for row in rows],
    }
    if footer is not None:
        doc["footer"] = footer
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def write_report(path, text):
    """Write to a file path, or to stdout when path is '-'."""
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
