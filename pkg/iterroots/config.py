"""Configuration management for iterroots."""

import logging
import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from .field import Backend, Tolerance

logger = logging.getLogger(__name__)


class IterRootsConfig(BaseModel):
    """Settings shared by the CLI and the MCP server."""

    mode: Backend = Field(default=Backend.EXACT)
    tolerance: float = Field(default=1e-9, gt=0)
    abs_tolerance: float = Field(default=1e-12, gt=0)
    output: Literal["text", "json"] = Field(default="text")
    seed: Optional[int] = Field(default=None)
    max_degree: int = Field(default=4096, ge=1)
    debug: bool = Field(default=False)

    # HTTP Server configuration
    http_host: str = Field(default="0.0.0.0")
    http_port: int = Field(default=8000)

    @field_validator("mode", mode="before")
    @classmethod
    def _lower_mode(cls, value):
        if isinstance(value, str):
            return value.strip().lower()
        return value

    @field_validator("output", mode="before")
    @classmethod
    def _lower_output(cls, value):
        if isinstance(value, str):
            return value.strip().lower()
        return value

    @classmethod
    def load_config(cls, env_file: str = ".env") -> "IterRootsConfig":
        """Load configuration from the environment, reading .env first if present."""
        if os.path.exists(env_file):
            load_dotenv(env_file)
        else:
            logger.debug(
                f"No configuration found at {env_file}; using environment only"
            )

        seed = os.getenv("ITERROOTS_SEED")
        return cls(
            mode=os.getenv("ITERROOTS_MODE", "exact"),
            tolerance=float(os.getenv("ITERROOTS_TOLERANCE", "1e-9")),
            abs_tolerance=float(os.getenv("ITERROOTS_ABS_TOLERANCE", "1e-12")),
            output=os.getenv("ITERROOTS_OUTPUT", "text"),
            seed=int(seed) if seed else None,
            max_degree=int(os.getenv("ITERROOTS_MAX_DEGREE", "4096")),
            debug=os.getenv("DEBUG", "false").lower() == "true",
            http_host=os.getenv("HTTP_HOST", "0.0.0.0"),
            http_port=int(os.getenv("HTTP_PORT", "8000")),
        )

    @property
    def tolerance_policy(self) -> Tolerance:
        """Comparison policy for approximate arithmetic."""
        return Tolerance(rel_tol=self.tolerance, abs_tol=self.abs_tolerance)
