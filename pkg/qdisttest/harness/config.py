from __future__ import annotations

import copy
import dataclasses
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from qdisttest.ampest.sample import MODES
from qdisttest.baselines.sampling import BASELINES
from qdisttest.testers import TESTERS
from qdisttest.testers.quantum import ROUTES
from qdisttest.utils.errors import ConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

TWO_SAMPLE = ("l2_classical_robust", "l2_quantum", "l3_closeness", "l1_closeness")
SWEEP_PARAMS = ("n", "eps")
MIN_SWEEP_POINTS = 3


@dataclass
class ExperimentConfig:
    """One experiment: a tester, its instance(s), and the trial settings.

    `instance` and `other` are generator specs such as
    `{"kind": "dirichlet-random", "n": 16, "seed": 3}`; `other` defaults to
    `instance` for two-sample testers. `factor` gives (n_A, n_B) for the
    independence tester, `baseline` a sampling baseline
    `{"kind": "plugin_entropy", "samples": 1000}` and `sweep` a grid
    `{"param": "n", "values": [16, 32, 64]}`.
    """

    tester: str = "entropy_classical"
    instance: dict = field(default_factory=lambda: {"kind": "uniform", "n": 16})
    other: dict | None = None
    eps: float = 0.25
    nu: float = 0.5
    trials: int = 10
    seed: int = 0
    mode: str = "semantic"
    out: str | None = None
    workers: int = 1
    route: str = "auto"
    factor: list[int] | None = None
    baseline: dict | None = None
    timing: bool = False
    sweep: dict | None = None

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(d) - names)
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}.")
        return cls(**copy.deepcopy(d))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @property
    def tester_name(self) -> str:
        from qdisttest.utils.resolve import tester_resolver

        try:
            return tester_resolver(self.tester).__name__
        except ValueError:
            raise ConfigError(f"tester={self.tester} must be one of {TESTERS}.")

    def validate(self) -> None:
        name = self.tester_name
        if int(self.trials) < 1:
            raise ConfigError(f"trials={self.trials} must be positive.")
        if not 0.0 < float(self.eps) < 1.0:
            raise ConfigError(f"eps={self.eps} must lie in (0, 1).")
        if not 0.0 < float(self.nu) < 1.0:
            raise ConfigError(f"nu={self.nu} must lie in (0, 1).")
        if self.mode not in MODES:
            raise ConfigError(f"mode={self.mode} must be one of {MODES}.")
        if int(self.workers) < 1:
            raise ConfigError(f"workers={self.workers} must be positive.")
        if self.route not in ROUTES:
            raise ConfigError(f"route={self.route} must be one of {ROUTES}.")
        for key in ("instance", "other"):
            spec = getattr(self, key)
            if spec is not None and (not isinstance(spec, dict) or "kind" not in spec):
                raise ConfigError(f"{key} must be a table with a 'kind' entry, got {spec}.")
        if name == "independence" and (self.factor is None or len(self.factor) != 2):
            raise ConfigError(f"independence requires factor=[n_A, n_B], got {self.factor}.")
        if self.baseline is not None:
            kind = self.baseline.get("kind")
            if kind not in BASELINES:
                raise ConfigError(f"baseline kind={kind} must be one of {list(BASELINES)}.")
            if int(self.baseline.get("samples", 0)) < 2:
                raise ConfigError(f"baseline samples={self.baseline.get('samples')} must be at least 2.")
        if self.sweep is not None:
            if self.sweep.get("param") not in SWEEP_PARAMS:
                raise ConfigError(f"sweep param={self.sweep.get('param')} must be one of {SWEEP_PARAMS}.")
            if len(self.sweep.get("values", [])) < MIN_SWEEP_POINTS:
                raise ConfigError(f"sweep grid needs at least {MIN_SWEEP_POINTS} points, got {self.sweep.get('values', [])}.")


def load_config(path: str | os.PathLike) -> ExperimentConfig:
    """Read a `.json` or `.toml` experiment file."""
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    try:
        if ext == ".json":
            with open(path) as f:
                d = json.load(f)
        elif ext == ".toml":
            with open(path, "rb") as f:
                d = tomllib.load(f)
        else:
            raise ConfigError(f"config file must be .json or .toml, got {path}.")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}")
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"cannot parse config file {path}: {e}")
    if not isinstance(d, dict):
        raise ConfigError(f"config file {path} must hold a table.")
    return ExperimentConfig.from_dict(d)


def _parse_value(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(config: ExperimentConfig, overrides: list[str]) -> ExperimentConfig:
    """Apply `key=value` overrides; dotted keys reach into tables and
    values are parsed as JSON, falling back to plain strings."""
    d = config.to_dict()
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item} must have the form key=value.")
        key, raw = item.split("=", 1)
        parts = key.strip().split(".")
        target = d
        for p in parts[:-1]:
            if target.get(p) is None:
                target[p] = {}
            if not isinstance(target[p], dict):
                raise ConfigError(f"override {key}: {p} is not a table.")
            target = target[p]
        target[parts[-1]] = _parse_value(raw)
        logging.info(f"config override {key}={target[parts[-1]]!r}")
    return ExperimentConfig.from_dict(d)
