"""YAML job configuration with strict key checking."""

from __future__ import annotations

import math
from dataclasses import dataclass

import yaml

from .core import (
    Medium,
    PowerLawTarget,
    RelaxfitError,
    attenuation_db_per_cm_to_np_per_m,
    hz_to_angular,
)
from .discrete import MODES, POWER_LAW

ALPHA_UNITS = ("np_per_m", "db_per_cm_at_ref")

_SCHEMA = {
    "medium": {"c0": True, "rho0": True},
    "target": {
        "eta": True,
        "alpha_ref": True,
        "alpha_ref_unit": False,
        "f_ref": True,
        "f_lo": True,
        "f_hi": True,
    },
    "model": {"n_mechanisms": True, "mode": False, "tau_sigma_margin": False},
    "output": {
        "grid_points": False,
        "f_lo": False,
        "f_hi": False,
        "set_file": False,
        "csv_file": False,
        "report_file": False,
    },
}
_REQUIRED_BLOCKS = ("medium", "target", "model")


class ConfigError(RelaxfitError):
    """Invalid or inconsistent job configuration."""


@dataclass(frozen=True)
class JobConfig:
    medium: Medium
    target: PowerLawTarget
    n_mechanisms: int
    mode: str = POWER_LAW
    tau_sigma_margin: float | None = None
    grid_points: int = 400
    eval_band: tuple | None = None
    set_file: str | None = None
    csv_file: str | None = None
    report_file: str | None = None

    @property
    def band(self):
        """Comparison band [rad/s]: the output band, else the target band."""
        return self.eval_band if self.eval_band is not None else self.target.band


def _number(block, key, value, integer=False):
    # YAML 1.1 reads exponents without a sign (1.0e6) as strings
    if isinstance(value, str):
        try:
            value = float(value)
        except ValueError:
            raise ConfigError(f"{block}.{key} must be a number, got {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{block}.{key} must be a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(f"{block}.{key} must be an integer, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{block}.{key} must be finite")
    return int(value) if integer else float(value)


def _check_keys(data):
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping of blocks")
    unknown = set(data) - set(_SCHEMA)
    if unknown:
        raise ConfigError(f"unknown block(s): {', '.join(sorted(unknown))}")
    for name in _REQUIRED_BLOCKS:
        if name not in data:
            raise ConfigError(f"missing block '{name}'")
    for name, block in data.items():
        if block is None:
            block = data[name] = {}
        if not isinstance(block, dict):
            raise ConfigError(f"block '{name}' must be a mapping")
        spec = _SCHEMA[name]
        unknown = set(block) - set(spec)
        if unknown:
            raise ConfigError(f"unknown key(s) in '{name}': {', '.join(sorted(unknown))}")
        missing = [k for k, req in spec.items() if req and k not in block]
        if missing:
            raise ConfigError(f"missing key(s) in '{name}': {', '.join(missing)}")


def parse_config(data) -> JobConfig:
    """Validate a parsed YAML mapping and convert it to base units."""
    _check_keys(data)
    med, tgt, mdl = data["medium"], data["target"], data["model"]
    out = data.get("output") or {}

    try:
        medium = Medium(_number("medium", "c0", med["c0"]), _number("medium", "rho0", med["rho0"]))
    except ValueError as exc:
        raise ConfigError(f"medium: {exc}") from None

    unit = tgt.get("alpha_ref_unit", "np_per_m")
    if unit not in ALPHA_UNITS:
        raise ConfigError(f"target.alpha_ref_unit must be one of {ALPHA_UNITS}, got {unit!r}")
    alpha_ref = _number("target", "alpha_ref", tgt["alpha_ref"])
    if unit == "db_per_cm_at_ref":
        alpha_ref = attenuation_db_per_cm_to_np_per_m(alpha_ref)
    try:
        target = PowerLawTarget(
            eta=_number("target", "eta", tgt["eta"]),
            alpha_ref=alpha_ref,
            omega_ref=hz_to_angular(_number("target", "f_ref", tgt["f_ref"])),
            omega_lo=hz_to_angular(_number("target", "f_lo", tgt["f_lo"])),
            omega_hi=hz_to_angular(_number("target", "f_hi", tgt["f_hi"])),
        )
    except ValueError as exc:
        raise ConfigError(f"target: {exc}") from None

    n = _number("model", "n_mechanisms", mdl["n_mechanisms"], integer=True)
    if n < 1:
        raise ConfigError("model.n_mechanisms must be at least 1")
    mode = mdl.get("mode", POWER_LAW)
    if mode not in MODES:
        raise ConfigError(f"model.mode must be one of {MODES}, got {mode!r}")
    margin = mdl.get("tau_sigma_margin")
    if margin is not None:
        margin = _number("model", "tau_sigma_margin", margin)
        if margin <= 1:
            raise ConfigError("model.tau_sigma_margin must exceed 1")

    points = _number("output", "grid_points", out.get("grid_points", 400), integer=True)
    if points < 2:
        raise ConfigError("output.grid_points must be at least 2")
    eval_band = None
    if "f_lo" in out or "f_hi" in out:
        f_lo = _number("output", "f_lo", out.get("f_lo", tgt["f_lo"]))
        f_hi = _number("output", "f_hi", out.get("f_hi", tgt["f_hi"]))
        if not 0 < f_lo < f_hi:
            raise ConfigError("output band needs 0 < f_lo < f_hi")
        eval_band = (hz_to_angular(f_lo), hz_to_angular(f_hi))

    paths = {}
    for key in ("set_file", "csv_file", "report_file"):
        val = out.get(key)
        if val is not None and not isinstance(val, str):
            raise ConfigError(f"output.{key} must be a path string")
        paths[key] = val

    return JobConfig(medium, target, n, mode, margin, points, eval_band, **paths)


def load_config(path) -> JobConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from None
    return parse_config(data)
