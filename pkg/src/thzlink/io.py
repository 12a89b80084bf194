"""Scenario files and deterministic result serialisation."""
import csv
import io
import json
import math
import os
import tempfile
from enum import Enum

from .atmosphere import AtmosphereState
from .channel import Scenario
from .errors import InvalidArgumentError, ParseError, ThzError
from .geometry import Material, Reflector


def format_number(x):
    """Nine significant digits; scientific outside [1e-3, 1e6)."""
    if isinstance(x, bool) or isinstance(x, int) and not isinstance(x, float):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0"
    if 1e-3 <= abs(x) < 1e6:
        s = format(x, ".9g")
        if "e" not in s:
            return s
    mantissa, exp = format(x, ".8e").split("e")
    if "." in mantissa:
        mantissa = mantissa.rstrip("0").rstrip(".")
    return f"{mantissa}e{int(exp)}"


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, Enum):
        return str(v.value)
    if isinstance(v, str):
        return v
    return format_number(v)


def to_csv(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_value(v):
    if v is None:
        return "null"
    if isinstance(v, Enum):
        v = v.value
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, float) and not math.isfinite(v):
        return "null"
    return format_number(v)


def to_json(columns, rows, warnings=()):
    """JSON document ``{"columns": [...], "rows": [{...}], "warnings": [...]}``.

    Numbers are emitted as 9-significant-digit literals so output is
    byte-stable.
    """
    lines = ["{", f'  "columns": {json.dumps(list(columns))},', '  "rows": [']
    body = []
    for row in rows:
        fields = ", ".join(f"{json.dumps(c)}: {_json_value(v)}" for c, v in zip(columns, row))
        body.append("    {" + fields + "}")
    lines.append(",\n".join(body))
    lines.append("  ],")
    lines.append(f'  "warnings": {json.dumps(list(warnings))}')
    lines.append("}")
    return "\n".join(ln for ln in lines if ln) + "\n"


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temp file so no partial file survives a failure."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".thzlink-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _field(obj, key, where, required=True, default=None):
    if key not in obj:
        if required:
            raise ParseError(f"missing field {where}.{key}")
        return default
    return obj[key]


def _number(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"field {where} must be a number, got {v!r}")
    return float(v)


def _xy(v, where):
    if not isinstance(v, list) or len(v) != 2:
        raise ParseError(f"field {where} must be [x, y], got {v!r}")
    return (_number(v[0], f"{where}[0]"), _number(v[1], f"{where}[1]"))


def scenario_from_dict(doc, table=None):
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object")
    tx = _xy(_field(doc, "tx", "scenario"), "tx")
    rx = _xy(_field(doc, "rx", "scenario"), "rx")
    refl_docs = _field(doc, "reflectors", "scenario", required=False, default=[])
    if not isinstance(refl_docs, list):
        raise ParseError("field reflectors must be a list")
    reflectors = []
    for i, r in enumerate(refl_docs):
        where = f"reflectors[{i}]"
        if not isinstance(r, dict):
            raise ParseError(f"field {where} must be an object")
        try:
            material = Material(
                _number(_field(r, "refractive_index", where), f"{where}.refractive_index"),
                _number(r.get("roughness_sigma_m", 0.0), f"{where}.roughness_sigma_m"),
                str(r.get("label", "")),
            )
            reflectors.append(
                Reflector(_xy(_field(r, "a", where), f"{where}.a"), _xy(_field(r, "b", where), f"{where}.b"), material)
            )
        except InvalidArgumentError as exc:
            raise InvalidArgumentError(f"{where}: {exc}") from None
    state = AtmosphereState(
        _number(doc.get("temperature_k", 296.0), "temperature_k"),
        _number(doc.get("pressure_pa", 101325.0), "pressure_pa"),
    )
    return Scenario(tx, rx, tuple(reflectors), state, table)


def scenario_to_dict(scenario):
    return {
        "tx": list(scenario.tx),
        "rx": list(scenario.rx),
        "reflectors": [
            {
                "a": list(r.endpoint_a),
                "b": list(r.endpoint_b),
                "refractive_index": r.material.refractive_index,
                "roughness_sigma_m": r.material.roughness_sigma,
                "label": r.material.label,
            }
            for r in scenario.reflectors
        ],
        "temperature_k": scenario.atmosphere.temperature_kelvin,
        "pressure_pa": scenario.atmosphere.pressure_pascal,
    }


def load_scenario(path, table=None):
    """Read a scenario JSON file. ``table`` becomes its attenuation table."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioIOError(f"cannot read scenario {os.fspath(path)!r}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return scenario_from_dict(doc, table)


def write_scenario(scenario, path):
    # repr floats round-trip exactly; Infinity marks an ideal reflector
    atomic_write(path, json.dumps(scenario_to_dict(scenario), indent=2) + "\n")


class ScenarioIOError(ThzError, OSError):
    exit_code = 3
