"""Experiment configuration and the versioned threshold defaults.

Every pass/fail number used by the report lives in DEFAULT_THRESHOLDS so runs
are auditable; individual values can be overridden from the command line.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

SCHEMA_VERSION = 1

# Desk-scale acceptance thresholds.  The limit theorems carry no rates, so
# these are artifact policy: absolute caps at the largest n plus
# monotone-trend requirements across the configured n list.
DEFAULT_THRESHOLDS = {
    "schema_version": SCHEMA_VERSION,
    "lead_root_gap_max": 0.15,     # |gamma_e^(1/n) - 2| at the largest n
    "green_gap_max": 0.1,          # nth-root growth vs Green function, largest n
    "ks_max": 0.05,                # KS(regular zeros, arcsine) at the largest n
    "moment_max": 0.1,             # max |T_k moment|, k = 1..6, at the largest n
    "p2_growth_allowance": 1,      # late-n preimage counts may exceed early by this
    "p2_region": [1.5, 2.5, -0.5, 0.5],
    "p2_targets": 20,              # boundary/e sample targets per n
    "green_test_points": [[2.0, 0.0], [1.0, 1.0], [-3.0, 0.0], [0.5, 2.0]],
}

_GRID_DEFAULTS = {
    "center_re": 0.0,
    "center_im": 0.0,
    "half_width": 2.0,
    "resolution": 512,
    "max_iter": 100,
}


@dataclass
class ExperimentConfig:
    """One resolved experiment: family + schedule + output location."""

    family: dict
    n_list: list
    samples: int = 20000
    burn_in: int = 100
    seed: int = 0
    grid: dict = field(default_factory=lambda: dict(_GRID_DEFAULTS))
    output_dir: Path = Path("out")
    thresholds: dict = field(default_factory=lambda: dict(DEFAULT_THRESHOLDS))

    @property
    def is_raw(self) -> bool:
        return "raw_poly" in self.family


def _require_number(obj, key, lo=None, hi=None, integer=False):
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(key, "must be a number")
    if integer and int(v) != v:
        raise ConfigError(key, "must be an integer")
    if lo is not None and v < lo:
        raise ConfigError(key, f"must be >= {lo}")
    if hi is not None and v > hi:
        raise ConfigError(key, f"must be <= {hi}")
    return int(v) if integer else float(v)


def validate_config(obj: dict) -> ExperimentConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config", "top level must be a JSON object")
    known = {"schema_version", "family", "n_list", "samples", "burn_in", "seed",
             "grid", "output_dir", "thresholds"}
    for key in obj:
        if key not in known:
            raise ConfigError(key, "unknown field")
    family = obj.get("family")
    if not isinstance(family, dict):
        raise ConfigError("family", "must be an object (preset, Darboux data, or raw_poly)")
    if "raw_poly" in family:
        rp = family["raw_poly"]
        if (not isinstance(rp, list) or len(rp) < 3
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in rp)):
            raise ConfigError("raw_poly", "must be a numeric coefficient list of degree >= 2")

    n_list = obj.get("n_list", [])
    if not isinstance(n_list, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in n_list):
        raise ConfigError("n_list", "must be a list of integers")
    if any(v < 0 for v in n_list):
        raise ConfigError("n_list", "entries must be nonnegative")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError("n_list", "must be strictly ascending")

    cfg = ExperimentConfig(family=family, n_list=list(n_list))
    if "samples" in obj:
        cfg.samples = _require_number(obj, "samples", lo=1, hi=10 ** 6, integer=True)
    if "burn_in" in obj:
        cfg.burn_in = _require_number(obj, "burn_in", lo=1, hi=10 ** 5, integer=True)
    if "seed" in obj:
        cfg.seed = _require_number(obj, "seed", lo=0, hi=2 ** 64 - 1, integer=True)
    grid = dict(_GRID_DEFAULTS)
    if "grid" in obj:
        if not isinstance(obj["grid"], dict):
            raise ConfigError("grid", "must be an object")
        for key in obj["grid"]:
            if key not in _GRID_DEFAULTS:
                raise ConfigError(f"grid.{key}", "unknown field")
        grid.update(obj["grid"])
        grid["resolution"] = _require_number(grid, "resolution", lo=1, hi=8192, integer=True)
        grid["max_iter"] = _require_number(grid, "max_iter", lo=1, hi=10000, integer=True)
        grid["half_width"] = _require_number(grid, "half_width", lo=1e-9)
        grid["center_re"] = _require_number(grid, "center_re")
        grid["center_im"] = _require_number(grid, "center_im")
    cfg.grid = grid
    if "output_dir" in obj:
        if not isinstance(obj["output_dir"], str) or not obj["output_dir"]:
            raise ConfigError("output_dir", "must be a nonempty string")
        cfg.output_dir = Path(obj["output_dir"])
    thresholds = dict(DEFAULT_THRESHOLDS)
    if "thresholds" in obj:
        if not isinstance(obj["thresholds"], dict):
            raise ConfigError("thresholds", "must be an object")
        for key in obj["thresholds"]:
            if key not in DEFAULT_THRESHOLDS:
                raise ConfigError(f"thresholds.{key}", "unknown threshold")
        thresholds.update(obj["thresholds"])
    cfg.thresholds = thresholds
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"malformed JSON: {exc}") from exc
    return validate_config(obj)
