import logging
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .catalog import RING_NAMES
from .checks import CHECK_NAMES
from .models import Box

logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore", env_prefix="MRV_")
    config: Path | None = None
    log_level: str = "INFO"
    square_root_cap: int = Field(default=20, ge=0)
    jobs: int = Field(default=1, ge=1)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    MD = "md"
    TEXT = "text"


def _names(value: Any) -> Any:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return value


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p_max: int = Field(default=20, ge=0)
    q_max: int = Field(default=12, ge=0)
    m_max: int = Field(default=24, ge=0)
    rings: list[str] = Field(default_factory=lambda: list(RING_NAMES))
    checks: list[str] = Field(default_factory=lambda: list(CHECK_NAMES))
    format: OutputFormat = OutputFormat.TEXT
    out: Path | None = None
    jobs: int = Field(default=1, ge=1)

    @field_validator("rings", mode="before")
    @classmethod
    def _split_rings(cls, value: Any) -> Any:
        return _names(value)

    @field_validator("checks", mode="before")
    @classmethod
    def _split_checks(cls, value: Any) -> Any:
        return _names(value)

    @field_validator("rings")
    @classmethod
    def _known_rings(cls, value: list[str]) -> list[str]:
        unknown = [name for name in value if name not in RING_NAMES]
        if unknown:
            raise ValueError(f"Unknown rings {unknown}; known: {', '.join(RING_NAMES)}")
        return value

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, value: list[str]) -> list[str]:
        unknown = [name for name in value if name not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"Unknown checks {unknown}; known: {', '.join(CHECK_NAMES)}")
        if not value:
            raise ValueError("No checks selected")
        return value

    @property
    def box(self) -> Box:
        return Box(p_max=self.p_max, q_max=self.q_max, m_max=self.m_max)


def load_run_config(path: Path | str | None = None, **overrides: Any) -> RunConfig:
    """Read a JSON run config; overrides that are not None win over file values."""
    data: dict[str, Any] = {}
    if path is not None:
        data = RunConfig.model_validate_json(Path(path).read_text(encoding="utf-8")).model_dump(
            exclude_unset=True
        )
    data.update({key: value for key, value in overrides.items() if value is not None})
    return RunConfig.model_validate(data)
