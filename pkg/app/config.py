from pathlib import Path
from typing import Any, Optional, Tuple, Type, Union

from pydantic import ValidationError
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from .exceptions import ConfigError
from .schemas.run_config import RunConfig


class Settings(BaseSettings):
    # 🎯 Application
    APP_NAME: str = "TradeRank"
    APP_VERSION: str = "1.0.0"

    # 📐 Ranking
    ALPHA: float = 0.85
    BETA: float = 0.5
    ZETA: float = 0.99
    BLEND_C: float = 0.5
    TOLERANCE: float = 1e-8
    MAX_ITERATIONS: int = 10000
    RNG_SEED: int = 0
    WEIGHTED_DEGREES: bool = True
    WORKERS: int = 1

    # 📁 Output
    SIGNIFICANT_DIGITS: int = 6
    DELIMITER: str = "\t"

    # 📊 Logging
    LOG_LEVEL: str = "INFO"

    # key=value config files only; the process environment is never read
    model_config = SettingsConfigDict(
        env_file=None,
        case_sensitive=False,
        extra="forbid",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return init_settings, dotenv_settings

    def run_config(self, **overrides: Any) -> RunConfig:
        """Resolve the RunConfig; non-None overrides (CLI flags) win over file values"""
        values = {
            "alpha": self.ALPHA,
            "beta": self.BETA,
            "zeta": self.ZETA,
            "blend_c": self.BLEND_C,
            "tolerance": self.TOLERANCE,
            "max_iterations": self.MAX_ITERATIONS,
            "rng_seed": self.RNG_SEED,
            "weighted_degrees": self.WEIGHTED_DEGREES,
            "workers": self.WORKERS,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return RunConfig(**values)
        except ValidationError as e:
            raise ConfigError(_describe(e)) from e


def load_settings(config_file: Optional[Union[str, Path]] = None) -> Settings:
    """Build Settings from defaults plus an optional key=value file"""
    if config_file is None:
        return Settings()

    path = Path(config_file)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        return Settings(_env_file=path)
    except ValueError as e:
        raise ConfigError(f"{path}: {_describe(e)}") from e


def _describe(error: Exception) -> str:
    if isinstance(error, ValidationError):
        return "; ".join(
            f"{'.'.join(str(p) for p in item['loc'])}: {item['msg']}"
            for item in error.errors()
        )
    return str(error)


settings = Settings()
