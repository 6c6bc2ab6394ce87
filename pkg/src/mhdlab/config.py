"""Strict flat key-value configuration files.

Format: `key = value` lines, blank lines and full-line comments (# or ;)
allowed, with optional `[tool]` sections after the top-level state block.
Unknown keys, unknown sections and duplicates are hard errors carrying
the file name and line number; silent misconfiguration of a stability
verdict is worse than a noisy one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .domain import BasicState, ModelKind, require_valid
from .errors import ConfigError

STATE_KEYS = (
    "model",
    "rho_hat",
    "c_hat",
    "a_hat",
    "a0_hat",
    "a1_hat",
    "H_plasma_2",
    "H_plasma_3",
    "H_vacuum_2",
    "H_vacuum_3",
)

SECTION_KEYS = {
    "classify": ("numeric", "rel_tol"),
    "roots": ("n", "omega2", "omega3"),
    "sweep": ("grid", "jobs", "max_points", "numeric"),
    "hadamard": ("n_list", "t", "omega2", "omega3", "dump_fields"),
    "green": ("k", "points"),
}

_MODEL_NAMES = {kind.value: kind for kind in ModelKind}


@dataclass(frozen=True)
class Config:
    """Parsed and validated configuration: a state plus tool sections."""

    model: ModelKind
    state: BasicState
    sections: dict = field(default_factory=dict)

    def section(self, name: str) -> dict:
        return self.sections.get(name, {})


def _err(source: str, lineno: int, message: str) -> ConfigError:
    return ConfigError(f"{source}:{lineno}: {message}")


def parse_config_text(text: str, source: str = "<config>") -> Config:
    top: dict = {}
    sections: dict = {}
    current: dict | None = None
    current_name = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in SECTION_KEYS:
                raise _err(source, lineno, f"unknown section '{name}'")
            if name in sections:
                raise _err(source, lineno, f"duplicate section '{name}'")
            current = {}
            current_name = name
            sections[name] = current
            continue
        if "=" not in line:
            raise _err(source, lineno, f"expected 'key = value', got '{line}'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if current is None:
            if key not in STATE_KEYS:
                raise _err(source, lineno, f"unknown key '{key}'")
            if key in top:
                raise _err(source, lineno, f"duplicate key '{key}'")
            top[key] = (value, lineno)
        else:
            if key not in SECTION_KEYS[current_name]:
                raise _err(
                    source, lineno, f"unknown key '{key}' in section [{current_name}]"
                )
            if key in current:
                raise _err(source, lineno, f"duplicate key '{key}'")
            current[key] = value

    if "model" not in top:
        raise ConfigError(f"{source}: missing required key 'model'")
    model_value, model_line = top.pop("model")
    if model_value not in _MODEL_NAMES:
        raise _err(
            source,
            model_line,
            f"unknown model '{model_value}'; choose one of {sorted(_MODEL_NAMES)}",
        )
    model = _MODEL_NAMES[model_value]

    numbers = {}
    for key, (value, lineno) in top.items():
        try:
            numbers[key] = float(value)
        except ValueError:
            raise _err(source, lineno, f"key '{key}' needs a number, got '{value}'")

    state = BasicState(
        rho_hat=numbers.get("rho_hat", 1.0),
        c_hat=numbers.get("c_hat", 1.0),
        a_hat=numbers.get("a_hat", 0.0),
        a0_hat=numbers.get("a0_hat", 0.0),
        a1_hat=numbers.get("a1_hat", 0.0),
        H_plasma=(numbers.get("H_plasma_2", 0.0), numbers.get("H_plasma_3", 0.0)),
        H_vacuum=(numbers.get("H_vacuum_2", 0.0), numbers.get("H_vacuum_3", 0.0)),
    )
    require_valid(model, state)
    return Config(model=model, state=state, sections=sections)


def load_config(path) -> Config:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text(), source=str(p))


def parse_bool(value: str, context: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{context}: expected a boolean, got '{value}'")
