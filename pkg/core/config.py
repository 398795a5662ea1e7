"""
Configuration management for the triangle estimation system
"""

import math
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from core.models import StreamStats, Variant


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="FURL_",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(default="INFO")

    # Estimation defaults
    default_delta: float = Field(default=0.4, ge=0, lt=1)
    default_trials: int = Field(default=10, ge=1)
    default_seed: int = Field(default=0)
    default_hash_seed: int = Field(default=1)

    # Harness
    max_workers: int = Field(default=1, ge=1)
    significant_digits: int = Field(default=10, ge=1, le=17)
    progress: bool = Field(default=True)


class EstimatorConfig(BaseModel):
    """Parameters of one estimator instance"""
    variant: Variant
    memory: Optional[int] = Field(default=None, ge=1)
    bucket: Optional[int] = Field(default=None, ge=1)
    delta: float = 0.0
    seed: int = 0
    hash_seed: int = 1
    p: Optional[float] = None

    # reject an arriving edge that is already buffered (simple variants)
    strict: bool = False
    # fold the decaying average per node on access instead of a dense pass
    lazy_average: bool = False
    # assert |D| <= M after every event
    check_memory: bool = False

    @model_validator(mode="after")
    def _check_variant_parameters(self) -> "EstimatorConfig":
        if self.variant.is_mascot:
            if self.p is None or not 0 < self.p <= 1:
                raise ValueError(f"{self.variant.value} requires 0 < p <= 1, got p={self.p}")
            return self

        if self.memory is None:
            raise ValueError(f"{self.variant.value} requires a buffer size M")
        if self.memory < self.variant.min_memory:
            raise ValueError(
                f"{self.variant.value} requires M >= {self.variant.min_memory}, got M={self.memory}"
            )
        if not 0 <= self.delta < 1:
            raise ValueError(f"decaying factor must satisfy 0 <= delta < 1, got {self.delta}")
        return self

    @property
    def M(self) -> int:
        return self.memory or 0

    @property
    def J(self) -> int:
        """Bucket size; defaults to M"""
        return self.bucket or self.M

    def for_trial(self, index: int) -> "EstimatorConfig":
        """Seeds for the index-th independent trial"""
        return self.model_copy(update={"seed": self.seed + index, "hash_seed": self.hash_seed + index})


class RunConfig(BaseModel):
    """Flags of one CLI invocation"""
    input: Optional[Path] = None
    output: Optional[Path] = None
    variant: Variant = Variant.FURL_SX
    memory: Optional[int] = Field(default=None, ge=1)
    xi: Optional[float] = Field(default=None, gt=0, le=1)
    bucket: Optional[int] = Field(default=None, ge=1)
    delta: float = Field(default=0.4, ge=0, lt=1)
    p: Optional[float] = Field(default=None, gt=0, le=1)
    seed: int = 0
    hash_seed: int = 1
    trials: int = Field(default=10, ge=1)
    shuffle: bool = False

    @model_validator(mode="after")
    def _check_memory_flags(self) -> "RunConfig":
        if self.variant.is_mascot:
            if self.p is None:
                raise ValueError(f"{self.variant.value} requires --p")
            return self
        if (self.memory is None) == (self.xi is None):
            raise ValueError("exactly one of --memory and --xi must be given")
        return self

    def resolve_memory(self, stats: StreamStats, xi: Optional[float] = None) -> int:
        """M from --memory, or ceil(xi * m) for simple and ceil(xi * u) for multigraph variants"""
        xi = xi if xi is not None else self.xi
        if xi is None:
            return int(self.memory)
        total = stats.distinct if self.variant.is_multigraph else stats.edges
        # rounding guards against 0.3 * 1000 landing just above an integer
        return max(1, math.ceil(round(xi * total, 9)))

    def estimator_config(self, memory: Optional[int] = None, delta: Optional[float] = None) -> EstimatorConfig:
        return EstimatorConfig(
            variant=self.variant,
            memory=None if self.variant.is_mascot else memory,
            bucket=self.bucket,
            delta=self.delta if delta is None else delta,
            seed=self.seed,
            hash_seed=self.hash_seed,
            p=self.p,
        )
