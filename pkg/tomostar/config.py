"""
Configuration loading.

Values come from a TOML file: ``$TOMOSTAR_CONF`` if set, otherwise
``./local.conf.toml`` if present, otherwise the packaged ``default.conf.toml``.
"""

import logging
import os
from pathlib import Path
from typing import Any

import toml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from tomostar.errors import ConfigError


logger = logging.getLogger(__name__)

root_folder = Path(__file__).parent
DEFAULT_CONF_PATH = root_folder / "default.conf.toml"


def load_toml(fpath: str | Path) -> dict[str, Any]:
    with open(fpath, encoding="utf-8") as f:
        return toml.load(f)


def _merge(base: dict, override: dict) -> dict:
    ans = dict(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(ans.get(k), dict):
            ans[k] = _merge(ans[k], v)
        else:
            ans[k] = v
    return ans


def find_conf_path() -> Path | None:
    env_path = os.environ.get("TOMOSTAR_CONF")
    if env_path:
        return Path(env_path)
    local = Path.cwd() / "local.conf.toml"
    if local.exists():
        return local
    return None


def load_conf() -> dict[str, Any]:
    """Packaged defaults merged with the user's override file, if any."""
    conf = load_toml(DEFAULT_CONF_PATH)
    override_path = find_conf_path()
    if override_path is not None:
        if not override_path.exists():
            raise ConfigError(f"Please ensure the config file exists: {override_path}")
        conf = _merge(conf, load_toml(override_path))
    return conf


conf = load_conf()


class QuadratureSpec(BaseModel):
    """Immutable description of how an integral is evaluated.

    ``damping`` is the ε of the e^{−εX} (or Gaussian) regularization; callers
    that need the ε → 0 limit go through ``specfun.richardson_limit``.
    """

    model_config = ConfigDict(frozen=True)

    node_count: int = Field(default=256, ge=1)
    damping: float = Field(default=0.0, ge=0.0)
    upper_cutoff: float = Field(default=40.0, gt=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    sample_count: int = Field(default=200_000, ge=0)
    radial_nodes: int = Field(default=8, ge=2)
    box: float = Field(default=16.0, gt=0.0)

    @model_validator(mode="after")
    def _check_periodic_rule(self):
        if self.node_count < 8:
            raise ValueError("node_count must be >= 8 for periodic rules")
        return self

    def replace(self, **changes) -> "QuadratureSpec":
        return make_spec(**{**self.model_dump(), **changes})


def make_spec(**overrides) -> QuadratureSpec:
    """Build a QuadratureSpec from the configured defaults plus ``overrides``.

    Raises:
        ConfigError: If the resulting spec is invalid
    """
    values = {**conf["quadrature"], **{k: v for k, v in overrides.items() if v is not None}}
    try:
        return QuadratureSpec(**values)
    except ValidationError as e:
        raise ConfigError(f"Invalid quadrature spec: {e}") from e


def tolerances(suite: str) -> dict[str, float]:
    return dict(conf["tolerances"][suite])


class RunConfig(BaseSettings):
    """Settings of one CLI invocation. ``TOMOSTAR_SEED`` is the seed fallback."""

    model_config = SettingsConfigDict(env_prefix="TOMOSTAR_", frozen=True)

    command: str = "verify"
    convention: str = Field(default=conf["run"]["convention"], pattern="^(standard|paper)$")
    hbar: float
    seed: int = Field(default=conf["run"]["seed"], ge=0, lt=2**64)
    node_count: int | None = None
    damping: float | None = None
    upper_cutoff: float | None = None
    sample_count: int | None = None
    output_path: str | None = None
    format: str = Field(default="csv", pattern="^(csv|json)$")
    experimental: bool = False

    @model_validator(mode="before")
    @classmethod
    def _default_hbar(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("hbar") is None:
            key = "kernel_hbar" if data.get("command") == "kernel" else "hbar"
            data = {**data, "hbar": conf["run"][key]}
        return data

    @model_validator(mode="after")
    def _check_hbar(self):
        if self.command == "verify" and self.hbar <= 0:
            raise ValueError(f"verification needs hbar > 0, got {self.hbar}; pass --hbar")
        return self

    def quadrature(self, **defaults) -> QuadratureSpec:
        """Quadrature spec with the command's defaults, then the user's overrides."""
        overrides = {
            "node_count": self.node_count,
            "damping": self.damping,
            "upper_cutoff": self.upper_cutoff,
            "sample_count": self.sample_count,
        }
        merged = {**defaults, **{k: v for k, v in overrides.items() if v is not None}}
        return make_spec(seed=self.seed, **merged)
