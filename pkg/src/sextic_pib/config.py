"""Field-spec configuration files (JSON) and the bundled example fields."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .sextic_field import FieldSpec, FieldSpecError
from .unit_bounds import parse_C

BUNDLED = ("example1", "example2", "example3")


class ConfigError(ValueError):
    """A config file that does not parse or does not describe a valid field."""


@dataclass
class RunConfig:
    spec: FieldSpec
    C: int
    C_text: str = "1e50"
    prime_start: int = 2
    linear_precision: int = 250
    jpoly_precision: int = 500
    B0: int | None = None  # optional override of the computed box radius
    name: str = ""
    raw: dict = field(default_factory=dict)


def _pair(obj, key):
    v = obj.get(key, [0, 0])
    if isinstance(v, int):
        return (v, 0)
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(c, int) for c in v)):
        raise ConfigError(f"f.{key}: expected [a, b] with integer entries, got {v!r}")
    return tuple(v)


def parse_config(data, name=""):
    """RunConfig from an already-decoded JSON object."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    if "m" not in data or not isinstance(data["m"], int):
        raise ConfigError("m: missing or not an integer")
    f = data.get("f")
    if not isinstance(f, dict):
        raise ConfigError("f: missing or not an object with f2, f1, f0")
    units = data.get("units", [])
    if not isinstance(units, list):
        raise ConfigError("units: expected a list")
    try:
        spec = FieldSpec(data["m"], _pair(f, "f2"), _pair(f, "f1"), _pair(f, "f0"),
                         units=units, D_K=data.get("D_K"), name=data.get("name", name))
    except (FieldSpecError, ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"field spec: {exc}") from exc
    C_text = str(data.get("C", "1e50"))
    try:
        C = parse_C(C_text)
    except ValueError as exc:
        raise ConfigError(f"C: cannot parse {C_text!r}") from exc
    if C < 1:
        raise ConfigError("C: must be positive")
    prec = data.get("precision", {})
    lin, jp = int(prec.get("linear", 250)), int(prec.get("jpoly", 500))
    if lin < 50 or jp < 50:
        raise ConfigError("precision: linear and jpoly must be at least 50 digits")
    B0 = data.get("B0")
    if B0 is not None and (not isinstance(B0, int) or B0 < 0):
        raise ConfigError("B0: must be a nonnegative integer")
    return RunConfig(spec, C, C_text, int(data.get("prime_start", 2)), lin, jp, B0,
                     data.get("name", name), data)


def load_config(path):
    """Load a config from a path, or one of the bundled names ``example1``..``example3``."""
    if str(path) in BUNDLED:
        text = resources.files("sextic_pib.fields").joinpath(f"{path}.json").read_text()
        name = str(path)
    else:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {p}: {exc}") from exc
        name = p.stem
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return parse_config(data, name)
