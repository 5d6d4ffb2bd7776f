"""Experiment configuration: YAML file, Jinja2 rendering, pydantic validation"""

import hashlib
import json
import logging
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..geometry.kernels import KernelFactory
from ..utils.template import TemplateRenderer
from .enums import ExperimentKind, IndexKind, OutputFormat
from .params import GpmParams

logger = logging.getLogger("gpm.config")


class ConfigError(ValueError):
    """Invalid experiment configuration"""


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ExperimentSection(_Section):
    name: str = "experiment"
    kind: ExperimentKind


class GridSection(_Section):
    d: List[int] = [2]
    m: List[int]
    delta: List[float]
    p: List[float]
    n: List[int]

    @field_validator("d", "m", "delta", "p", "n")
    @classmethod
    def non_empty(cls, values: List[Any]) -> List[Any]:
        if not values:
            raise ValueError("grid lists must not be empty")
        return values

    @field_validator("d", "m", "n")
    @classmethod
    def positive_integers(cls, values: List[int]) -> List[int]:
        if any(v < 1 for v in values):
            raise ValueError("values must be positive integers")
        return values

    @field_validator("delta")
    @classmethod
    def positive_delta(cls, values: List[float]) -> List[float]:
        if any(v <= 0 for v in values):
            raise ValueError("delta values must be positive")
        return values

    @field_validator("p")
    @classmethod
    def area_fractions(cls, values: List[float]) -> List[float]:
        if any(not 0 < v <= 1 for v in values):
            raise ValueError("p values must lie in (0, 1]")
        return values


class RunSection(_Section):
    replicas: int = Field(default=1, ge=1)
    master_seed: int = Field(default=0, ge=0)
    workers: Optional[int] = Field(default=None, ge=1)


class OutputSection(_Section):
    path: str
    format: OutputFormat = OutputFormat.CSV


class OptionsSection(_Section):
    epsilon: float = Field(default=0.15, gt=0)
    i_min_pn: float = Field(default=100.0, ge=0)
    events: List[Tuple[int, int, int]] = []
    fp: Optional[float] = Field(default=None, gt=0, le=1)
    fp_samples: int = Field(default=20_000, ge=1)
    diameter_exact_limit: int = Field(default=20_000, ge=1)
    bfs_budget: int = Field(default=2_000, ge=3)
    # pilot-calibrated scale-variable cutoffs for the connectivity regimes
    connectivity_low_x: float = Field(default=0.5, gt=0)
    connectivity_high_x: float = Field(default=20.0, gt=0)
    kernel: str = "indicator"
    index: IndexKind = IndexKind.AUTO


@dataclass(frozen=True)
class Cell:
    """One point of the parameter grid"""

    index: int
    d: int
    m: int
    delta: float
    p: float
    n: int

    def params(self, kernel: str = "indicator") -> GpmParams:
        spec = None if kernel == "indicator" else KernelFactory.create(kernel)
        return GpmParams(m=self.m, delta=self.delta, p=self.p, d=self.d, kernel=spec)

    def to_dict(self) -> Dict[str, Any]:
        return {"cell": self.index, "d": self.d, "m": self.m, "delta": self.delta, "p": self.p, "n": self.n}


class ExperimentConfig(_Section):
    """A validated experiment: kind, grid, replicas, output and options"""

    experiment: ExperimentSection
    grid: GridSection
    run: RunSection = RunSection()
    output: OutputSection
    options: OptionsSection = OptionsSection()

    @model_validator(mode="after")
    def kind_requirements(self) -> "ExperimentConfig":
        if self.experiment.kind == ExperimentKind.EQ31 and not self.options.events:
            raise ValueError("eq31 experiments need options.events")
        if self.experiment.kind == ExperimentKind.CONNECTIVITY and min(self.grid.m) < 2:
            raise ValueError("connectivity experiments need m >= 2")
        if self.options.kernel != "indicator" and not self.options.kernel.startswith(("table:", "constant")):
            raise ValueError(f"unknown kernel '{self.options.kernel}'")
        return self

    @property
    def kind(self) -> ExperimentKind:
        return self.experiment.kind

    def cells(self) -> List[Cell]:
        """Cartesian product of the grid in (d, m, delta, p, n) order"""
        grid = self.grid
        return [
            Cell(index, d, m, delta, p, n)
            for index, (d, m, delta, p, n) in enumerate(product(grid.d, grid.m, grid.delta, grid.p, grid.n))
        ]

    def config_hash(self) -> str:
        """Hash of everything that influences the rows (worker count excluded)"""
        content = self.model_dump(mode="json", exclude={"run": {"workers"}})
        canonical = json.dumps(content, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _describe(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "config"
        lines.append(f"  {location}: {item['msg']}")
    return "\n".join(lines)


def _restore_types(original: Any, rendered: Any) -> Any:
    """Rendered templates come back as text; re-read them as YAML scalars or lists"""
    if isinstance(original, str) and isinstance(rendered, str) and rendered != original:
        try:
            value = yaml.safe_load(rendered)
        except yaml.YAMLError:
            return rendered
        return value if isinstance(value, (bool, int, float, list)) else rendered
    if isinstance(original, dict):
        return {k: _restore_types(original[k], rendered[k]) for k in original}
    if isinstance(original, list):
        return [_restore_types(o, r) for o, r in zip(original, rendered)]
    return rendered


def build_experiment_config(raw: Dict[str, Any], variables: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Render and validate a config mapping"""
    if not isinstance(raw, dict):
        raise ConfigError("Experiment config must be a mapping")
    raw = dict(raw)
    merged = {**(raw.pop("vars", None) or {}), **(variables or {})}
    renderer = TemplateRenderer()
    try:
        rendered = _restore_types(raw, renderer.render_config(raw, merged))
    except Exception as e:
        raise ConfigError(f"Failed to render experiment config: {e}")
    try:
        return ExperimentConfig.model_validate(rendered)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config:\n{_describe(e)}")


def load_experiment_config(config_path: str, variables: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Load a YAML experiment config; a .env next to it is loaded first"""
    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"Experiment config not found: {path}")

    env_file = path.parent / ".env"
    if env_file.exists():
        load_dotenv(env_file)

    with open(path, "r", encoding="utf-8") as f:
        try:
            raw = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {path}: {e}")

    config = build_experiment_config(raw or {}, variables)
    logger.debug(f"Loaded experiment '{config.experiment.name}' ({config.kind.value}) from {path}")
    return config
