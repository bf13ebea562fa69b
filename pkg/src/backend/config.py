"""Runtime configuration read from the environment (and ``.env``)."""

from __future__ import annotations

import os
from dataclasses import dataclass

from dotenv import load_dotenv


def _env(name: str, default):
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return type(default)(value.strip().strip('"').strip("'"))


@dataclass
class EstimatorConfig:
    """Monte Carlo settings."""

    trials: int = 2000
    alpha: float = 0.05
    slack: float = 0.1
    workers: int = 1

    @classmethod
    def from_env(cls) -> "EstimatorConfig":
        load_dotenv(override=True)
        return cls(
            trials=_env("ZOL_TRIALS", cls.trials),
            alpha=_env("ZOL_ALPHA", cls.alpha),
            slack=_env("ZOL_SLACK", cls.slack),
            workers=_env("ZOL_WORKERS", cls.workers),
        )


@dataclass
class ConstructorConfig:
    """Oscillation builder settings."""

    budget: int = 12  # doublings per extension step
    pilot_trials: int = 400
    zeta_min: float = 0.05
    step_bound: int = 4
    search_limit: int = 10_000_000

    @classmethod
    def from_env(cls) -> "ConstructorConfig":
        load_dotenv(override=True)
        return cls(
            budget=_env("ZOL_BUDGET", cls.budget),
            pilot_trials=_env("ZOL_PILOT_TRIALS", cls.pilot_trials),
            zeta_min=_env("ZOL_ZETA_MIN", cls.zeta_min),
            step_bound=_env("ZOL_STEP_BOUND", cls.step_bound),
            search_limit=_env("ZOL_SEARCH_LIMIT", cls.search_limit),
        )

    def zeta(self, checkpoint_index: int) -> float:
        """Confidence slack for the 1-based checkpoint index."""
        return max(1.0 / (checkpoint_index + 1), self.zeta_min)
