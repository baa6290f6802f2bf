"""
Run configuration: TOML files, inline key=value overrides and command-line flags.

Precedence is default < file < flag; inline overrides count as flags.
Every value is validated, and the case is built once, before any assembly.
"""
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import tomli_w

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..config import config_by_name
from ..errors import ConfigError
from ..harness.catalog import PARAMETER_PRESETS, SPECIAL_VARIANTS, apply_profile, get_case, special_case
from ..models.enums import AbcKind, CompatMode, CornerMode
from ..utils.validators import require_positive

DEFAULT_CASE = '1'

CASE_SECTION = 'case'
RUN_SECTION = 'run'

# Provenance labels
DEFAULT = 'default'
FILE = 'file'
FLAG = 'flag'

FLOATS = 'floats'

# Case keys and their types; 'order' maps onto CaseSpec.pade_order
CASE_KEYS = {
    'case': str,
    'preset': str,
    'obstacle_axes': str,
    'order': int,
    'keep_fraction': float,
    'h': float,
    'dt': float,
    'T': float,
    'p': int,
    'l': float,
    'l_ref': float,
    'depth': float,
    'T_e': float,
    'T_excit': float,
    'A': float,
    'n_f': int,
    'x0': float,
    'rho': float,
    'g': float,
    'sigma': float,
    'epsilon': float,
    'c_f': float,
    'a_s': float,
    'a_f': float,
    'compat_mode': str,
    'allow_incompatible': bool,
    'corner': str,
    'abc_kind': str,
    'habc_sides': bool,
    'habc_bottom': bool,
}

RUN_KEYS = {
    'profile': str,
    'out': str,
    'stride': int,
    'dump_system': str,
    'snapshot_times': FLOATS,
}

CHOICES = {
    'compat_mode': tuple(m.value for m in CompatMode),
    'corner': tuple(m.value for m in CornerMode),
    'abc_kind': tuple(k.value for k in AbcKind),
    'obstacle_axes': ('semi', 'full'),
    'preset': tuple(sorted(PARAMETER_PRESETS)),
    'profile': tuple(sorted(config_by_name)),
}

_RENAMED = {'order': 'pade_order'}
_TRUE = {'true', 'yes', 'on', '1'}
_FALSE = {'false', 'no', 'off', '0'}


def default_profile():
    return os.environ.get('HABC_PROFILE', 'desk')


@dataclass
class RunConfig:
    """
    Effective configuration of one command.

    overrides holds every case key other than 'case' that differs from the
    catalog; provenance records where each key's value came from.
    """
    case: str = DEFAULT_CASE
    profile: str = field(default_factory=default_profile)
    overrides: Dict[str, Any] = field(default_factory=dict)
    out: Optional[str] = None
    stride: int = 1
    dump_system: Optional[str] = None
    snapshot_times: Tuple[float, ...] = ()
    provenance: Dict[str, str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.out is None:
            self.out = self.app_config.OUTPUT_DIR

    @property
    def app_config(self):
        try:
            return config_by_name[self.profile]
        except KeyError:
            raise ConfigError(f"profile must be one of {CHOICES['profile']}, got '{self.profile}'",
                              key="profile")

    def source(self, key):
        return self.provenance.get(key, DEFAULT)

    @property
    def obstacle_axes(self):
        return self.overrides.get('obstacle_axes', 'semi')

    def case_changes(self):
        """CaseSpec changes of the preset and the overrides, overrides last."""
        overrides = dict(self.overrides)
        overrides.pop('obstacle_axes', None)
        preset = overrides.pop('preset', None)
        changes = dict(PARAMETER_PRESETS[preset]) if preset is not None else {}
        changes.update({_RENAMED.get(k, k): v for k, v in overrides.items()})
        return changes

    def adjust(self, case):
        """Profile adjustments, then the preset and the overrides."""
        case = apply_profile(case, self.app_config)
        changes = self.case_changes()
        if changes:
            case = case.with_overrides(**changes)
        return case

    def build_case(self):
        """Catalog case, then profile adjustments, parameter preset and overrides."""
        case_id = self.case
        if 'obstacle_axes' in self.overrides and case_id.startswith('special'):
            variant = case_id.split('-', 1)[1] if '-' in case_id else 'a'
            return self.build_variant(variant)
        return self.adjust(get_case(case_id))

    def build_variant(self, variant):
        """Obstacle-study variant with this configuration's axes, preset and overrides."""
        if variant not in SPECIAL_VARIANTS:
            raise ConfigError(f"unknown obstacle-study variant '{variant}'", key="case")
        return self.adjust(special_case(variant, self.obstacle_axes))

    def validate(self):
        self.app_config  # raises on an unknown profile
        require_positive(self.stride, 'stride')
        for t in self.snapshot_times:
            if t < 0.0:
                raise ConfigError(f"snapshot times must be >= 0, got {t}", key="snapshot_times")
        self.build_case()
        return self

    def to_dict(self):
        """Sections as written to TOML; unset optional values are left out."""
        case = {'case': self.case}
        case.update(self.overrides)
        run = {'profile': self.profile, 'out': self.out, 'stride': self.stride}
        if self.dump_system is not None:
            run['dump_system'] = self.dump_system
        if self.snapshot_times:
            run['snapshot_times'] = list(self.snapshot_times)
        return {CASE_SECTION: case, RUN_SECTION: run}


def to_toml(config):
    return tomli_w.dumps(config.to_dict())


def _coerce_text(key, kind, text):
    """Typed value of an inline 'key=value' string."""
    text = text.strip()
    try:
        if kind is bool:
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(text)
        if kind is int:
            return int(text)
        if kind is float:
            return float(text)
        if kind == FLOATS:
            return tuple(float(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise ConfigError(f"{key} expects {_type_name(kind)}, got '{text}'", key=key)
    return text


def _coerce_value(key, kind, value):
    """Typed value of a TOML or flag value; ints are accepted for floats."""
    if kind is bool:
        if isinstance(value, bool):
            return value
    elif kind is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif kind is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif kind == FLOATS:
        if isinstance(value, (list, tuple)) and all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return tuple(float(v) for v in value)
    elif isinstance(value, str):
        return value
    elif isinstance(value, int) and not isinstance(value, bool):
        # case = 211 in a hand-written file
        return str(value)
    raise ConfigError(f"{key} expects {_type_name(kind)}, got {value!r}", key=key)


def _type_name(kind):
    if kind == FLOATS:
        return "a list of numbers"
    return {bool: "a boolean", int: "an integer", float: "a number", str: "a string"}[kind]


def _key_type(key):
    if key in CASE_KEYS:
        return CASE_KEYS[key]
    if key in RUN_KEYS:
        return RUN_KEYS[key]
    raise ConfigError(f"unknown configuration key '{key}'", key=key)


def _check_choice(key, value):
    if key in CHOICES and value not in CHOICES[key]:
        raise ConfigError(f"{key} must be one of {CHOICES[key]}, got '{value}'", key=key)


def _read_file(path=None, text=None):
    if text is None and path is None:
        return {}
    try:
        if text is not None:
            data = tomllib.loads(text)
        else:
            with open(path, 'rb') as handle:
                data = tomllib.load(handle)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"malformed configuration file: {e}", key="config")
    except OSError as e:
        raise ConfigError(f"cannot read configuration file {path}: {e}", key="config")

    values = {}
    for section, body in data.items():
        if section not in (CASE_SECTION, RUN_SECTION) or not isinstance(body, dict):
            raise ConfigError(f"unknown configuration section '{section}'", key=section)
        allowed = CASE_KEYS if section == CASE_SECTION else RUN_KEYS
        for key, value in body.items():
            if key not in allowed:
                raise ConfigError(f"unknown key '{key}' in section [{section}]", key=key)
            values[key] = _coerce_value(key, allowed[key], value)
    return values


def parse_overrides(items):
    """Inline 'key=value' strings into typed values."""
    values = {}
    for item in items or ():
        key, sep, text = item.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"expected key=value, got '{item}'", key=item)
        values[key] = _coerce_text(key, _key_type(key), text)
    return values


def parse_config(path=None, overrides=(), flags=None, text=None):
    """
    Effective run configuration.

    Args:
        path: TOML file with [case] and [run] sections, optional
        overrides: inline 'key=value' strings
        flags: values from command-line options; None entries are ignored
        text: TOML text used instead of path

    Returns:
        validated RunConfig

    Raises:
        ConfigError: unknown key, type mismatch or violated constraint
    """
    layers = [
        (FILE, _read_file(path, text)),
        (FLAG, parse_overrides(overrides)),
        (FLAG, {k: _coerce_value(k, _key_type(k), v)
                for k, v in (flags or {}).items() if v is not None}),
    ]
    values, provenance = {}, {key: DEFAULT for key in list(CASE_KEYS) + list(RUN_KEYS)}
    for origin, layer in layers:
        for key, value in layer.items():
            _check_choice(key, value)
            values[key] = value
            provenance[key] = origin

    run_values = {key: values.pop(key) for key in list(values) if key in RUN_KEYS}
    if 'snapshot_times' in run_values:
        run_values['snapshot_times'] = tuple(run_values['snapshot_times'])
    config = RunConfig(
        case=str(values.pop('case', DEFAULT_CASE)),
        overrides=values,
        provenance=provenance,
        **run_values,
    )
    return config.validate()
