"""
Application configuration using Pydantic Settings.

Loads configuration from environment variables (.env file).
"""

from typing import List

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # === Application ===
    app_name: str = Field(default="NC Reeb Toolkit", description="Application name")
    app_version: str = Field(default="1.0.0", description="Application version")
    environment: str = Field(default="development", description="Environment (development/production/testing)")
    debug: bool = Field(default=False, description="Debug mode")

    # === Grid oracle ===
    grid_resolution_2d: int = Field(default=400, description="Cells per axis for planar domains")
    grid_resolution_3d: int = Field(default=120, description="Cells per axis for lifted 3-D domains")
    grid_min_resolution: int = Field(default=64, description="Smallest accepted resolution per axis")
    grid_eps_factor: float = Field(default=0.5, description="Dilation tolerance in cell diagonals")
    grid_snap_slabs: float = Field(default=1.0, description="Snapping window in slab widths")

    # === Numerical tolerances ===
    on_variety_tolerance: float = Field(default=1e-9, description="Relative residual accepted on the emitted variety")
    rank_tolerance: float = Field(default=1e-7, description="Relative singular value threshold for Jacobian rank")

    # === Size caps ===
    isomorphism_cap: int = Field(default=64, description="Vertex cap for isomorphism search")
    planarity_cap: int = Field(default=512, description="Vertex cap for planarity testing")
    level_planarity_cap: int = Field(default=200, description="Vertex cap of the proper refinement")
    level_oracle_max_per_level: int = Field(default=10, description="Oracle bound on vertices per level")
    level_oracle_max_levels: int = Field(default=12, description="Oracle bound on number of levels")
    level_planarity_budget: int = Field(default=2_000_000, description="Backtracking step budget of the level planarity search")
    kuratowski_search_budget: int = Field(default=200_000, description="Node budget of the targeted subdivision search")

    # === Sampling ===
    transversality_samples_per_constraint: int = Field(default=16, description="Boundary samples per constraint in budget mode")
    certificate_interior_samples: int = Field(default=100, description="Interior samples per rank certificate")
    certificate_boundary_samples: int = Field(default=20, description="Boundary samples per rank certificate")
    certificate_outside_samples: int = Field(default=50, description="Outside samples per emptiness certificate")
    random_seed: int = Field(default=20240101, description="Seed for every sampling routine")

    # === Algebraic models ===
    default_model_policy: str = Field(default="balanced", description="Sphere dimension allocation (balanced/front-loaded)")

    # === Logging ===
    log_level: str = Field(default="WARNING", description="Logging level")
    log_format: str = Field(default="text", description="Log format (json/text)")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        return _one_of("log_level", v.upper(), ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        return _one_of("log_format", v.lower(), ["json", "text"])

    @field_validator("environment")
    @classmethod
    def validate_environment(cls, v: str) -> str:
        return _one_of("environment", v.lower(), ["development", "production", "testing"])

    @field_validator("default_model_policy")
    @classmethod
    def validate_policy(cls, v: str) -> str:
        return _one_of("default_model_policy", v.lower(), ["balanced", "front-loaded"])

    @field_validator("grid_min_resolution")
    @classmethod
    def validate_resolution_floor(cls, v: int) -> int:
        """The oracle cannot resolve band fixtures below 64 cells per axis."""
        if v < 64:
            raise ValueError("grid_min_resolution must be at least 64")
        return v

    @model_validator(mode="after")
    def validate_default_resolutions(self) -> "Settings":
        """Default resolutions must respect the configured floor."""
        for name in ("grid_resolution_2d", "grid_resolution_3d"):
            if getattr(self, name) < self.grid_min_resolution:
                raise ValueError(f"{name} is below grid_min_resolution ({self.grid_min_resolution})")
        return self


def _one_of(name: str, value: str, allowed: List[str]) -> str:
    if value not in allowed:
        raise ValueError(f"{name} must be one of {allowed}")
    return value


# Singleton instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """
    Get application settings (singleton).

    Returns:
        Settings: Application settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
